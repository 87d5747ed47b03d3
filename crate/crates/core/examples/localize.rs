//! Integrates powers of the moment-map class over CP^n and a quadric.

use hamfix::fixeddata::{u_tilde, EquivariantClass, FixedPointData, RationalDisplay};
use hamfix::localization::{abbv_integrate, basis_alpha, determinant, pairing_matrix};
use hamfix::models::{fixture_cpn, fixture_quadric};

fn show(label: &str, data: &FixedPointData) -> hamfix::Result<()> {
    let n = data.half_dim();
    println!("{label} (dim {})", data.dim_m());
    let one = EquivariantClass::from_int(data, 1);
    println!(
        "  integral of 1      = {}",
        RationalDisplay(&abbv_integrate(&one, data)?)
    );
    for k in [n - 1, n] {
        let v = abbv_integrate(&u_tilde(data, 0).pow(k), data)?;
        println!("  integral of u~^{k:<2} = {}", RationalDisplay(&v));
    }
    let alpha = basis_alpha(data)?;
    let det = determinant(&pairing_matrix(&alpha, data)?);
    println!("  pairing determinant = {}", RationalDisplay(&det));
    Ok(())
}

fn main() -> hamfix::Result<()> {
    show("CP^3 with fixed CP^1 and CP^1", &fixture_cpn(3, 1)?)?;
    show("quadric Q^5", &fixture_quadric(5)?)?;
    Ok(())
}
