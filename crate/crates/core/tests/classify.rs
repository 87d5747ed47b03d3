use hamfix::classify::{
    classify, derive_codim2_partner, euler_characteristic, euler_characteristic_check, total_chern,
    total_ring, Case,
};
use hamfix::fixeddata::{validate, FixedComponent, FixedPointData, WeightSummand};
use hamfix::localization::tw_quotient_check;
use hamfix::models::{
    fixture_cpn, fixture_quadric, fixture_three_component_quadric3, negative_fixtures,
};
use hamfix::polyring::{Coeff, Env, GradedPoly, Truncation};
use num_bigint::BigInt;

fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

fn positive_two_component() -> Vec<FixedPointData> {
    let mut out: Vec<FixedPointData> = (1..=8)
        .flat_map(|n| (0..n).map(move |j| fixture_cpn(n, j).unwrap()))
        .collect();
    out.extend([3, 5, 7].iter().map(|n| fixture_quadric(*n).unwrap()));
    out
}

/// Long division of `num` by `1 + 2x`, an oracle independent of series_div.
fn divide_by_one_plus_2x(mut num: Vec<BigInt>, top: usize) -> Vec<BigInt> {
    num.resize(top + 1, BigInt::from(0));
    let mut q = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let c = num[k].clone();
        if k < top {
            num[k + 1] -= &c * 2;
        }
        q.push(c);
    }
    q
}

fn binomials(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row
}

#[test]
fn positive_fixtures_pass_every_check() {
    for d in positive_two_component() {
        assert!(validate(&d).all_pass());
        assert!(tw_quotient_check(&d).unwrap());
        let c = classify(&d);
        assert!(c.is_accepted(), "{c}");
        assert!(c.reports.iter().all(|r| !r.failed()));
        assert!(euler_characteristic_check(&d, &c));
        assert_eq!(
            euler_characteristic(&d).unwrap().total,
            BigInt::from(d.half_dim() + 1)
        );
    }
}

#[test]
fn classification_is_deterministic_and_survives_json() {
    for d in positive_two_component() {
        let back = FixedPointData::from_json(&d.to_json()).unwrap();
        assert_eq!(classify(&back), classify(&d));
    }
    for f in negative_fixtures() {
        let back = FixedPointData::from_json(&f.data.to_json()).unwrap();
        let c = classify(&back);
        let Case::Rejected(reasons) = &c.case else {
            panic!("{} accepted", f.name)
        };
        assert!(!reasons.is_empty());
        assert_eq!(c, classify(&f.data));
    }
}

#[test]
fn case_a_ring_and_chern() {
    for n in 1..=8u32 {
        for j in 0..n {
            let d = fixture_cpn(n, j).unwrap();
            let c = classify(&d);
            let (_, ord) = total_ring(&d, &c).unwrap();
            assert_eq!(ord.to_string(), format!("Z[x]/x^{}", n + 1));
            assert_eq!(ord.graded_ranks(n), vec![1; n as usize + 1]);
            let (built, chern) = total_chern(&d, &c).unwrap();
            let want: Vec<Coeff> = binomials(n + 1)[..=n as usize]
                .iter()
                .cloned()
                .map(Coeff::from_integer)
                .collect();
            assert_eq!(chern.univariate_coeffs("x").unwrap(), want);
            assert!(built.is_integral());
        }
    }
}

#[test]
fn case_b_ring_and_chern() {
    for n in [3u32, 5, 7] {
        let d = fixture_quadric(n).unwrap();
        let c = classify(&d);
        let (eq, ord) = total_ring(&d, &c).unwrap();
        let i = (n - 1) / 2;
        assert_eq!(ord.to_string(), format!("Z[x,y]/(x^{} - 2y, y^2)", i + 1));
        assert!(eq.relations().iter().all(GradedPoly::is_integral));
        let (_, chern) = total_chern(&d, &c).unwrap();
        let want = divide_by_one_plus_2x(binomials(n + 2), n as usize);
        let want: Vec<Coeff> = want.into_iter().map(Coeff::from_integer).collect();
        assert_eq!(chern.univariate_coeffs("x").unwrap(), want);
    }
    let d = fixture_quadric(3).unwrap();
    let (_, chern) = total_chern(&d, &classify(&d)).unwrap();
    assert_eq!(chern.to_string(), "1 + 3x + 4x^2 + 2x^3");
    // the top coefficient times deg x^3 = 2 is the Euler characteristic
    assert_eq!(chern.coeff(&[3]) * int(2), int(4));
}

#[test]
fn chern_closed_form_matches_data_coefficientwise() {
    for d in positive_two_component() {
        let c = classify(&d);
        assert!(total_chern(&d, &c).is_ok(), "{c}");
    }
}

#[test]
fn three_component_quadric_agrees_with_two_component() {
    let three = fixture_three_component_quadric3();
    assert!(validate(&three).all_pass(), "{}", validate(&three));
    let chi = euler_characteristic(&three).unwrap();
    assert_eq!(
        chi.components,
        vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)]
    );
    assert_eq!(chi.localized, int(4));
    let two = fixture_quadric(3).unwrap();
    assert_eq!(euler_characteristic(&two).unwrap().localized, int(4));
    let c = classify(&three);
    assert!(!c.is_accepted());
    assert_eq!(c.rejected_by(), Some("scope"));
}

#[test]
fn negative_fixtures_cover_six_checks() {
    let mut cited: Vec<&str> = negative_fixtures()
        .iter()
        .map(|f| classify(&f.data).rejected_by().unwrap())
        .collect();
    cited.sort();
    cited.dedup();
    assert!(cited.len() >= 6, "{cited:?}");
    for needed in [
        "semifree-moment-gap",
        "distinct-weights",
        "weight-symmetry",
        "equal-dimension",
        "rank-sum",
    ] {
        assert!(cited.contains(&needed), "{needed}");
    }
}

#[test]
fn partner_reproduces_projective_space() {
    for d in 1..=6u32 {
        let fixture = fixture_cpn(d, d - 1).unwrap();
        let partner = derive_codim2_partner(fixture.component(0), 2 * d).unwrap();
        let y = partner.to_component().unwrap();
        assert_eq!(&y, fixture.component(1));
        // c(Y) = (1+t)^d in Z[t]/t^d
        let env = Env::degree_two(&["t"]);
        let one_plus_t = GradedPoly::univariate(&env, "t", &[int(1), int(1)]).unwrap();
        let want = one_plus_t
            .pow_truncated(d, &Truncation::single("t", d - 1))
            .unwrap();
        assert_eq!(
            partner.chern.univariate_coeffs("t").unwrap(),
            want.univariate_coeffs("t").unwrap()
        );
    }
}

#[test]
fn partner_of_a_sphere_pair() {
    let x = FixedComponent::new("X", 0, int(0), vec![WeightSummand::trivial(1, 1)]);
    let y = derive_codim2_partner(&x, 2)
        .unwrap()
        .to_component()
        .unwrap();
    assert_eq!(y.dim, 0);
    assert_eq!(y.summands, vec![WeightSummand::new(-1, 1, vec![1])]);
}
