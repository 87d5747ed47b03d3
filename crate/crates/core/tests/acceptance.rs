//! Acceptance suite. Prints one line per criterion and exits nonzero if
//! any criterion fails.

use std::time::{Duration, Instant};

use hamfix::classify::{
    classify, derive_codim2_partner, euler_characteristic, total_chern, total_ring, Case,
};
use hamfix::fixeddata::{u_tilde, CheckStatus, EquivariantClass, FixedPointData, WeightSummand};
use hamfix::localization::{
    abbv_integrate, abbv_pushforward, basis_alpha, check_euler_formula, determinant, pairing_matrix,
};
use hamfix::models::{
    fixture_cpn, fixture_quadric, fixture_three_component_quadric3, negative_fixture,
    negative_fixtures,
};
use hamfix::polyring::{Coeff, Env, GradedPoly, LaurentPoly, Truncation};
use hamfix::weights::{admissible_enumerate, lemma_i_enumerate, lemma_ii_verify};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
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

/// Coefficients of `num/(1 + 2x)` up to `x^top` by long division.
fn long_division(mut num: Vec<BigInt>, top: usize) -> Vec<BigInt> {
    num.resize(top + 2, BigInt::from(0));
    (0..=top)
        .map(|k| {
            let c = num[k].clone();
            num[k + 1] -= &c * 2;
            c
        })
        .collect()
}

fn as_coeffs(v: &[BigInt]) -> Vec<Coeff> {
    v.iter().cloned().map(Coeff::from_integer).collect()
}

fn cpn_all(max_n: u32) -> Vec<FixedPointData> {
    (1..=max_n)
        .flat_map(|n| (0..n).map(move |j| fixture_cpn(n, j).unwrap()))
        .collect()
}

fn quadrics() -> Vec<FixedPointData> {
    [3, 5, 7]
        .iter()
        .map(|n| fixture_quadric(*n).unwrap())
        .collect()
}

fn case_a_reproduction() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for d in cpn_all(8) {
        let n = d.half_dim();
        let cls = classify(&d);
        ensure(cls.case == Case::A, || {
            format!("n={n}, i={}: {}", cls.i, cls.case)
        })?;
        let (_, ring) = total_ring(&d, &cls).map_err(|e| e.to_string())?;
        ensure(ring.to_string() == format!("Z[x]/x^{}", n + 1), || {
            ring.to_string()
        })?;
        let (_, chern) = total_chern(&d, &cls).map_err(|e| e.to_string())?;
        let want = as_coeffs(&binomials(n + 1)[..=n as usize]);
        ensure(chern.univariate_coeffs("x").ok() == Some(want), || {
            chern.to_string()
        })?;
        count += 1;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{count} fixtures, {:?}", start.elapsed()))
}

fn case_b_reproduction() -> Outcome {
    let start = Instant::now();
    for d in quadrics() {
        let n = d.half_dim();
        let cls = classify(&d);
        ensure(cls.case == Case::B, || format!("n={n}: {}", cls.case))?;
        let (_, ring) = total_ring(&d, &cls).map_err(|e| e.to_string())?;
        let want_ring = format!("Z[x,y]/(x^{} - 2y, y^2)", n.div_ceil(2));
        ensure(ring.to_string() == want_ring, || ring.to_string())?;
        let (_, chern) = total_chern(&d, &cls).map_err(|e| e.to_string())?;
        let want = as_coeffs(&long_division(binomials(n + 2), n as usize));
        ensure(chern.univariate_coeffs("x").ok() == Some(want), || {
            chern.to_string()
        })?;
        if n == 3 {
            ensure(chern.to_string() == "1 + 3x + 4x^2 + 2x^3", || {
                chern.to_string()
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("n = 3, 5, 7, {:?}", start.elapsed()))
}

fn var(d: &FixedPointData, k: usize, name: &str) -> GradedPoly {
    GradedPoly::var(d.env(k), name).unwrap()
}

fn restriction_values() -> Outcome {
    let mut checked = 0;
    for d in cpn_all(8) {
        let alpha = basis_alpha(&d).map_err(|e| e.to_string())?;
        let u = var(&d, 0, "u").truncate_all(&d.truncation(0)).unwrap();
        let v_t = (&var(&d, 1, "v") - &var(&d, 1, "t"))
            .truncate_all(&d.truncation(1))
            .unwrap();
        ensure(
            alpha[1].restriction(0) == &u && alpha[1].restriction(1) == &v_t,
            || format!("alpha_1 on cpn n={}", d.half_dim()),
        )?;
        checked += 1;
    }
    let half = Coeff::new(BigInt::from(1), BigInt::from(2));
    for d in quadrics() {
        let i = d.component(0).top();
        let alpha = basis_alpha(&d).map_err(|e| e.to_string())?;
        let v_2t = &var(&d, 1, "v") - &var(&d, 1, "t").scale(&int(2));
        let top = &alpha[i as usize + 1];
        let want_top = v_2t
            .pow(i + 1)
            .scale(&half)
            .truncate_all(&d.truncation(1))
            .unwrap();
        ensure(alpha[1].restriction(1) == &v_2t, || {
            format!("alpha_1|Y on quadric i={i}")
        })?;
        ensure(top.restriction(0).is_zero(), || {
            format!("alpha_(i+1)|X on quadric i={i}")
        })?;
        ensure(top.restriction(1) == &want_top, || {
            format!("alpha_(i+1)|Y on quadric i={i}")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} fixtures"))
}

fn localization_suite() -> Outcome {
    let start = Instant::now();
    let mut all = cpn_all(8);
    all.extend(quadrics());
    for d in &all {
        let n = d.half_dim();
        let case_b = d.component(1).moment == int(2);
        let zero =
            abbv_integrate(&EquivariantClass::from_int(d, 1), d).map_err(|e| e.to_string())?;
        ensure(zero == int(0), || format!("integral of 1 = {zero}"))?;
        let top = abbv_integrate(&u_tilde(d, 0).pow(n), d).map_err(|e| e.to_string())?;
        ensure(top == int(if case_b { 2 } else { 1 }), || {
            format!("integral of u^n = {top}")
        })?;
        // every t-power of the pushforward of a degree-2n class except t^0 cancels
        let push = abbv_pushforward(&u_tilde(d, 0).pow(n), d).map_err(|e| e.to_string())?;
        ensure(push.keys().all(|k| *k == 0), || format!("{push:?}"))?;
        let alpha = basis_alpha(d).map_err(|e| e.to_string())?;
        let m = pairing_matrix(&alpha, d).map_err(|e| e.to_string())?;
        let size = m.len();
        let lower_zero =
            (0..size).all(|a| (0..size).all(|b| a + b >= size - 1 || m[a][b] == int(0)));
        let det = determinant(&m);
        ensure(lower_zero && (det == int(1) || det == int(-1)), || {
            format!("pairing det {det}")
        })?;
    }
    let three = fixture_three_component_quadric3();
    let zero = abbv_integrate(&EquivariantClass::from_int(&three, 1), &three)
        .map_err(|e| e.to_string())?;
    ensure(zero == int(0), || "three-component integral of 1".into())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{} fixtures, {:?}", all.len() + 1, start.elapsed()))
}

fn euler_formula() -> Outcome {
    let mut all = cpn_all(8);
    all.extend(quadrics());
    all.push(fixture_three_component_quadric3());
    for d in &all {
        ensure(matches!(check_euler_formula(d), Ok(true)), || {
            format!("fails on dim {}", d.dim_m())
        })?;
    }
    let neg = negative_fixture("chern-normal-a").ok_or("missing chern-normal-a fixture")?;
    ensure(matches!(check_euler_formula(&neg.data), Ok(false)), || {
        "perturbed chern passes".into()
    })?;
    let report = classify(&neg.data);
    let r = report
        .report("euler-formula")
        .ok_or("no euler-formula report")?;
    ensure(r.status == CheckStatus::Fail, || {
        format!("reported as {}", r.status)
    })?;
    Ok(format!(
        "{} positive fixtures pass; perturbed chern fails and is reported",
        all.len()
    ))
}

fn euler_characteristics() -> Outcome {
    let mut all = cpn_all(8);
    all.extend(quadrics());
    for d in &all {
        let chi = euler_characteristic(d).map_err(|e| e.to_string())?;
        let n1 = d.half_dim() + 1;
        ensure(
            chi.total == BigInt::from(n1) && chi.localized == int(i64::from(n1)),
            || format!("chi = {} / {} on n = {}", chi.total, chi.localized, n1 - 1),
        )?;
    }
    let two = euler_characteristic(&fixture_quadric(3).unwrap()).map_err(|e| e.to_string())?;
    let three =
        euler_characteristic(&fixture_three_component_quadric3()).map_err(|e| e.to_string())?;
    ensure(
        two.total == BigInt::from(4) && three.total == BigInt::from(4),
        || format!("chi = {} and {}", two.total, three.total),
    )?;
    ensure(three.localized == int(4), || {
        format!("localized {}", three.localized)
    })?;
    Ok("chi(M) = n + 1 everywhere; both dim-6 quadric data give 4".into())
}

fn appendix() -> Outcome {
    let start = Instant::now();
    let keysets = lemma_i_enumerate(12);
    let want: Vec<Vec<u64>> = (1..=12).map(|n| (1..=n).collect()).collect();
    ensure(keysets == want, || format!("key sets {keysets:?}"))?;
    let survivors = admissible_enumerate(12, 6);
    for w in &survivors {
        ensure(
            w.max_key() <= 6 && w.keys() == (1..=w.len() as u64).collect::<Vec<_>>(),
            || w.to_string(),
        )?;
        let report = lemma_ii_verify(w).map_err(|e| e.to_string())?;
        ensure(report.iter().all(|c| c.status != CheckStatus::Fail), || {
            w.to_string()
        })?;
    }
    ensure(survivors.iter().any(|w| w.len() == 5), || {
        "no N = 5 survivor".into()
    })?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{} survivors, max key 6, {:?}",
        survivors.len(),
        start.elapsed()
    ))
}

fn mutation_suite() -> Outcome {
    let mut cited = Vec::new();
    for f in negative_fixtures() {
        let c = classify(&f.data);
        ensure(matches!(c.case, Case::Rejected(_)), || {
            format!("{} accepted", f.name)
        })?;
        let by = c.rejected_by();
        ensure(by == Some(f.expected_check), || {
            format!("{} rejected by {by:?}", f.name)
        })?;
        cited.push(f.expected_check);
    }
    cited.sort();
    cited.dedup();
    ensure(cited.len() >= 6, || {
        format!("only {} distinct checks", cited.len())
    })?;
    Ok(format!("{} distinct checks", cited.len()))
}

fn build(terms: &[(u32, u32, i64)]) -> GradedPoly {
    let env = Env::degree_two(&["u", "t"]);
    terms.iter().fold(GradedPoly::zero(&env), |acc, (a, b, c)| {
        &acc + &GradedPoly::monomial(&env, vec![*a, *b], int(*c))
    })
}

fn property_suites() -> Outcome {
    let poly =
        || prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6).prop_map(|t| build(&t));
    let nil = || prop::collection::vec((1u32..4, 0u32..3, -4i64..=4), 0..5).prop_map(|t| build(&t));
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(1000)
    });
    runner
        .run(&(poly(), poly(), poly()), |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let same = a.clone();
            prop_assert!((&a - &same).is_zero());
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;
    runner
        .run(&(poly(), nil(), 0u32..5), |(num, nu, top)| {
            let tr = Truncation::single("u", top);
            let den = &GradedPoly::one(num.env()) + &nu;
            let q = GradedPoly::series_div(&num, &den, &tr).unwrap();
            prop_assert_eq!(
                q.mul_truncated(&den, &tr).unwrap(),
                num.truncate_all(&tr).unwrap()
            );
            Ok(())
        })
        .map_err(|e| format!("series_div: {e}"))?;
    runner
        .run(&(nil(), 1i64..4, 0u32..4, 0u32..4), |(nu, c, d, top)| {
            let env = nu.env().clone();
            let tr = Truncation::single("u", top);
            let p =
                &GradedPoly::monomial(&env, vec![0, d], int(c)) * &(&GradedPoly::one(&env) + &nu);
            let lp = LaurentPoly::from_poly(p, "t").unwrap();
            let product = lp
                .mul(&lp.invert(&tr).unwrap())
                .unwrap()
                .truncate_all(&tr)
                .unwrap();
            prop_assert_eq!(product, LaurentPoly::t_power(&env, "t", int(1), 0).unwrap());
            Ok(())
        })
        .map_err(|e| format!("laurent_invert: {e}"))?;
    let env = Env::degree_two(&["x"]);
    let one_plus_x = GradedPoly::univariate(&env, "x", &[int(1), int(1)]).unwrap();
    for n in 0..=40 {
        let got = one_plus_x.pow(n).univariate_coeffs("x").unwrap();
        ensure(got == as_coeffs(&binomials(n)), || format!("(1+x)^{n}"))?;
    }
    Ok("3 x 1000 random cases, binomials n <= 40".into())
}

fn partner_derivation() -> Outcome {
    for d in 1..=6u32 {
        let fixture = fixture_cpn(d, d - 1).unwrap();
        let x = hamfix::fixeddata::FixedComponent::new(
            "X",
            0,
            int(0),
            vec![WeightSummand::trivial(1, d)],
        );
        ensure(&x == fixture.component(0), || {
            format!("X differs at d = {d}")
        })?;
        let partner = derive_codim2_partner(&x, 2 * d).map_err(|e| e.to_string())?;
        let y = partner.to_component().map_err(|e| e.to_string())?;
        ensure(&y == fixture.component(1), || format!("d = {d}: {y:?}"))?;
        ensure(partner.ranks == vec![1; d as usize], || {
            format!("ranks {:?}", partner.ranks)
        })?;
    }
    Ok("d = 1..6 field-for-field".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("projective-space classification", case_a_reproduction),
        ("quadric classification", case_b_reproduction),
        ("basis restriction values", restriction_values),
        ("localization suite", localization_suite),
        ("euler product formula", euler_formula),
        ("euler characteristics", euler_characteristics),
        ("weight multiset search", appendix),
        ("mutation suite", mutation_suite),
        ("property suites", property_suites),
        ("codimension-two partner", partner_derivation),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{ms} ms]", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{ms} ms]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
