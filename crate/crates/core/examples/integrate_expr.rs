//! Parses characteristic-class expressions and integrates them.

use std::env;

use hamfix::expr::parse_class;
use hamfix::fixeddata::RationalDisplay;
use hamfix::localization::abbv_integrate;
use hamfix::models::fixture_quadric;

fn main() -> hamfix::Result<()> {
    let data = fixture_quadric(3)?;
    let inputs: Vec<String> = env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        ["1", "ut^3", "c1^3", "c3", "c1*c2", "(ut + t)^3 - ut^3"]
            .map(String::from)
            .to_vec()
    } else {
        inputs
    };
    for input in inputs {
        match parse_class(&input, &data, 12) {
            Ok(cls) => {
                let v = abbv_integrate(&cls, &data)?;
                println!("{input:<20} {}", RationalDisplay(&v));
            }
            Err(e) => println!("{input:<20} error: {e}"),
        }
    }
    Ok(())
}
