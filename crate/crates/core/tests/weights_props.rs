use hamfix::fixeddata::CheckStatus;
use hamfix::weights::{admissible_enumerate, closure_check, lemma_ii_verify, WeightMultiset};
use proptest::prelude::*;

fn multiset() -> impl Strategy<Value = WeightMultiset> {
    prop::collection::btree_map(1u64..10, 1u64..5, 1..6)
        .prop_map(|m| WeightMultiset::new(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn closure_is_invariant_under_scaling(w in multiset(), c in 1u64..5) {
        prop_assert_eq!(closure_check(&w), closure_check(&w.scaled(c)));
    }

    #[test]
    fn display_round_trips(w in multiset()) {
        prop_assert_eq!(w.to_string().parse::<WeightMultiset>().unwrap(), w);
    }

    #[test]
    fn closed_coprime_multisets_follow_the_patterns(w in multiset()) {
        if w.gcd() == 1 && closure_check(&w) {
            let report = lemma_ii_verify(&w).unwrap();
            prop_assert!(report.iter().all(|c| c.status != CheckStatus::Fail), "{}", w);
        } else {
            prop_assert!(lemma_ii_verify(&w).is_err());
        }
    }
}

#[test]
fn no_survivor_has_seven_keys() {
    let all = admissible_enumerate(12, 6);
    assert!(all.iter().all(|w| w.len() <= 6));
    assert!(all.iter().all(|w| w.multiplicity(7) == 0));
    let n5: Vec<_> = all.iter().filter(|w| w.len() == 5).collect();
    let shown: Vec<String> = n5.iter().map(ToString::to_string).collect();
    assert_eq!(
        shown,
        vec!["{1:2, 2:3, 3:3, 4:2, 5:1}", "{1:4, 2:6, 3:6, 4:4, 5:2}"]
    );
}
