//! Round-trips fixture data through JSON and validates a mutated copy.

use hamfix::classify::classify;
use hamfix::fixeddata::{validate, FixedPointData};
use hamfix::models::{fixture_cpn, negative_fixtures};

fn main() -> hamfix::Result<()> {
    let data = fixture_cpn(3, 0)?;
    let text = data.to_json();
    println!("{text}");
    let back = FixedPointData::from_json(&text)?;
    assert_eq!(back, data);
    print!("{}", validate(&back));

    for neg in negative_fixtures() {
        let cls = classify(&neg.data);
        println!(
            "{:<24} expected {:<24} got {}",
            neg.name,
            neg.expected_check,
            cls.rejected_by().unwrap_or("accepted")
        );
    }
    Ok(())
}
