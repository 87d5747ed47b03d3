//! Solves for the data of the middle component in a three-component action.

use hamfix::classify::classify;
use hamfix::localization::check_euler_formula;
use hamfix::models::{fixture_three_component_quadric3, three_component_derivation};

fn main() -> hamfix::Result<()> {
    let (omega, a, b, notes) = three_component_derivation()?;
    for n in &notes {
        println!("{n}");
    }
    println!("omega_Z = {omega}, c1(V-) = {a}, c1(V+) = {b}");
    let data = fixture_three_component_quadric3();
    println!("Euler formula holds: {}", check_euler_formula(&data)?);
    println!("{}", classify(&data));
    Ok(())
}
