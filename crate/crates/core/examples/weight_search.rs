//! Searches for closed isotropy weight multisets.

use hamfix::weights::{admissible_enumerate, lemma_i_enumerate, lemma_ii_verify};

fn main() -> hamfix::Result<()> {
    let keys = lemma_i_enumerate(12);
    println!(
        "key sets up to 12 satisfying the residue condition: {}",
        keys.len()
    );
    for k in &keys {
        println!("  {k:?}");
    }

    let found = admissible_enumerate(8, 4);
    println!(
        "closed multisets with keys <= 8, multiplicity <= 4: {}",
        found.len()
    );
    for w in found.iter().filter(|w| w.max_key() >= 5) {
        println!("  {w}");
        for check in lemma_ii_verify(w)? {
            println!("    {:<8} {} {}", check.name, check.status, check.detail);
        }
    }
    Ok(())
}
