//! Classifies the two-component fixtures and prints their rings and Chern classes.

use hamfix::classify::{classify, total_chern, total_ring};
use hamfix::models::{fixture_cpn, fixture_quadric};

fn main() -> hamfix::Result<()> {
    for data in [fixture_cpn(4, 0)?, fixture_cpn(4, 2)?, fixture_quadric(5)?] {
        let cls = classify(&data);
        println!("{cls}");
        if cls.is_accepted() {
            let (equivariant, ordinary) = total_ring(&data, &cls)?;
            println!("  ordinary:    {ordinary}");
            println!("  equivariant: {equivariant}");
            let (_, c) = total_chern(&data, &cls)?;
            println!("  c(M) = {c}");
        }
        println!();
    }
    Ok(())
}
