use hamfix::fixeddata::{u_tilde, EquivariantClass, FixedPointData};
use hamfix::localization::{
    abbv_integrate, abbv_pushforward, basis_alpha, check_euler_formula, determinant, euler_product,
    multiple_euler_check, pairing_matrix,
};
use hamfix::models::{fixture_cpn, fixture_quadric, fixture_three_component_quadric3};
use hamfix::polyring::{Coeff, GradedPoly};
use hamfix::Error;
use num_bigint::BigInt;

fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

fn var(d: &FixedPointData, k: usize, name: &str) -> GradedPoly {
    GradedPoly::var(d.env(k), name).unwrap()
}

fn reduced(d: &FixedPointData, k: usize, p: GradedPoly) -> GradedPoly {
    p.truncate_all(&d.truncation(k)).unwrap()
}

fn cpn_all() -> Vec<FixedPointData> {
    (1..=8)
        .flat_map(|n| (0..n).map(move |j| fixture_cpn(n, j).unwrap()))
        .collect()
}

fn quadrics() -> Vec<FixedPointData> {
    [3, 5, 7]
        .iter()
        .map(|n| fixture_quadric(*n).unwrap())
        .collect()
}

#[test]
fn basis_restrictions_case_a() {
    for d in cpn_all() {
        let alpha = basis_alpha(&d).unwrap();
        assert_eq!(alpha[1].restriction(0), &reduced(&d, 0, var(&d, 0, "u")));
        let v_minus_t = &var(&d, 1, "v") - &var(&d, 1, "t");
        assert_eq!(alpha[1].restriction(1), &reduced(&d, 1, v_minus_t));
    }
}

#[test]
fn basis_restrictions_case_b() {
    for d in quadrics() {
        let i = d.component(0).top();
        let alpha = basis_alpha(&d).unwrap();
        let v_minus_2t = &var(&d, 1, "v") - &var(&d, 1, "t").scale(&int(2));
        assert_eq!(alpha[1].restriction(1), &v_minus_2t);
        let top = &alpha[i as usize + 1];
        assert!(top.restriction(0).is_zero());
        let half = Coeff::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            top.restriction(1),
            &reduced(&d, 1, v_minus_2t.pow(i + 1).scale(&half))
        );
    }
}

#[test]
fn integrals_of_one_and_powers_of_u_tilde() {
    for d in cpn_all() {
        let n = d.half_dim();
        assert_eq!(
            abbv_integrate(&EquivariantClass::from_int(&d, 1), &d).unwrap(),
            int(0)
        );
        assert_eq!(abbv_integrate(&u_tilde(&d, 0).pow(n), &d).unwrap(), int(1));
    }
    for d in quadrics() {
        let n = d.half_dim();
        assert_eq!(
            abbv_integrate(&EquivariantClass::from_int(&d, 1), &d).unwrap(),
            int(0)
        );
        assert_eq!(abbv_integrate(&u_tilde(&d, 0).pow(n), &d).unwrap(), int(2));
    }
    let three = fixture_three_component_quadric3();
    assert_eq!(
        abbv_integrate(&EquivariantClass::from_int(&three, 1), &three).unwrap(),
        int(0)
    );
}

#[test]
fn pushforward_of_low_degree_classes_has_no_polynomial_part() {
    for d in quadrics().into_iter().chain(cpn_all()) {
        let n = i64::from(d.half_dim());
        let push = abbv_pushforward(&u_tilde(&d, 0).pow(2), &d).unwrap();
        assert!(push.keys().all(|k| *k == 2 - n), "{push:?}");
    }
}

#[test]
fn pairing_is_unimodular_and_antidiagonal() {
    for d in cpn_all().into_iter().chain(quadrics()) {
        let alpha = basis_alpha(&d).unwrap();
        let m = pairing_matrix(&alpha, &d).unwrap();
        let n = m.len();
        for (a, row) in m.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if a + b < n - 1 {
                    assert_eq!(*v, int(0), "entry ({a},{b})");
                }
            }
        }
        let det = determinant(&m);
        assert!(det == int(1) || det == int(-1), "det = {det}");
    }
}

#[test]
fn euler_product_formula() {
    for d in cpn_all().into_iter().chain(quadrics()) {
        assert!(check_euler_formula(&d).unwrap());
        for k in 0..2 {
            assert_eq!(
                euler_product(&d, k).unwrap(),
                d.component(k).equivariant_euler(d.env(k))
            );
        }
    }
    let three = fixture_three_component_quadric3();
    assert!(check_euler_formula(&three).unwrap());
}

#[test]
fn top_basis_class_is_a_multiple_of_the_negative_euler_class() {
    for d in cpn_all().into_iter().chain(quadrics()) {
        let alpha = basis_alpha(&d).unwrap();
        let lam = d.component(1).index() as usize;
        assert!(multiple_euler_check(&alpha[lam], &d).unwrap());
        assert!(matches!(
            multiple_euler_check(&alpha[0], &d),
            Err(Error::NotApplicable(_))
        ));
    }
}
