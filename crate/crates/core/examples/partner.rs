//! Derives the fixed component at the opposite end of a codimension-two action.

use hamfix::classify::derive_codim2_partner;
use hamfix::fixeddata::{FixedComponent, RationalDisplay, WeightSummand};
use hamfix::polyring::Coeff;

fn main() -> hamfix::Result<()> {
    // A point minimum in an 8-manifold, and a CP^1 minimum in a 6-manifold.
    let zero = Coeff::from_integer(0.into());
    let cases = [
        (
            8,
            FixedComponent::new("X", 0, zero.clone(), vec![WeightSummand::trivial(1, 4)]),
        ),
        (
            6,
            FixedComponent::new("X", 2, zero, vec![WeightSummand::new(1, 2, vec![1, 2])]),
        ),
    ];
    for (dim_m, x) in cases {
        let p = derive_codim2_partner(&x, dim_m)?;
        println!("dim M = {dim_m}");
        println!("  partner dim    {}", p.dim);
        println!("  moment         {}", RationalDisplay(&p.moment));
        println!("  Betti numbers  {:?}", p.ranks);
        println!("  c(Y)           {}", p.chern);
        match p.to_component() {
            Ok(y) => {
                let s = &y.summands[0];
                println!(
                    "  component      {} of dim {}, normal weight {} with c = {:?}",
                    y.name, y.dim, s.weight, s.chern
                );
            }
            Err(e) => println!("  component      {e}"),
        }
    }
    Ok(())
}
