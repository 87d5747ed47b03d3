//! Fixture generators: the projective-space and quadric examples, a
//! three-component action on the 6-dimensional quadric, and mutated data
//! that must be rejected.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::fixeddata::{u_tilde, EquivariantClass, FixedComponent, FixedPointData, WeightSummand};
use crate::localization::abbv_integrate;
use crate::polyring::{Coeff, Env, GradedPoly, Truncation};
use crate::{Error, Result};

fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

fn binomials(n: u32, top: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row.truncate(top as usize + 1);
    row
}

/// Coefficients of `(1+u)^{k+1}/(1+2u)` modulo `u^{k+1}`.
pub fn quadric_isotropy_chern(k: u32) -> Result<Vec<i64>> {
    let env = Env::degree_two(&["u"]);
    let num = GradedPoly::univariate(&env, "u", &[int(1), int(1)])?.pow(k + 1);
    let den = GradedPoly::univariate(&env, "u", &[int(1), int(2)])?;
    let q = GradedPoly::series_div(&num, &den, &Truncation::single("u", k))?;
    q.univariate_coeffs("u")?
        .into_iter()
        .map(|c| {
            c.to_integer()
                .to_i64()
                .filter(|_| c.is_integer())
                .ok_or_else(|| Error::InvalidParameter(format!("coefficient {c} out of range")))
        })
        .collect()
}

/// Projective space `CP^n` with the action fixing `CP^{n-j-1}` (the minimum
/// `X`, moment 0) and `CP^j` (the maximum `Y`, moment 1).
pub fn fixture_cpn(n: u32, j: u32) -> Result<FixedPointData> {
    if n < 1 || j >= n {
        return Err(Error::InvalidParameter(format!(
            "cpn needs n >= 1 and 0 <= j <= n-1, got n={n}, j={j}"
        )));
    }
    let i = n - j - 1;
    let x = FixedComponent::new(
        "X",
        2 * i,
        int(0),
        vec![WeightSummand::new(1, j + 1, binomials(j + 1, i))],
    );
    let y = FixedComponent::new(
        "Y",
        2 * j,
        int(1),
        vec![WeightSummand::new(-1, n - j, binomials(n - j, j))],
    );
    Ok(FixedPointData::new(2 * n, vec![x, y]))
}

/// The quadric of odd dimension `n` with fixed components two copies of
/// `CP^i`, `i = (n-1)/2`, at moments 0 and 2.
pub fn fixture_quadric(n: u32) -> Result<FixedPointData> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "quadric needs odd n >= 3, got {n}"
        )));
    }
    let i = (n - 1) / 2;
    let iso = quadric_isotropy_chern(i)?;
    let side = |name: &str, sign: i64, moment: i64| {
        FixedComponent::new(
            name,
            2 * i,
            int(moment),
            vec![
                WeightSummand::new(sign, 1, vec![1, 1]),
                WeightSummand::new(2 * sign, i, iso.clone()),
            ],
        )
    };
    Ok(FixedPointData::new(
        2 * n,
        vec![side("X", 1, 0), side("Y", -1, 2)],
    ))
}

fn three_component_with(omega: i64, a: i64, b: i64) -> FixedPointData {
    let p_minus = FixedComponent::new("p-", 0, int(-1), vec![WeightSummand::trivial(1, 3)]);
    let mut z = FixedComponent::new(
        "Z",
        2,
        int(0),
        vec![
            WeightSummand::new(1, 1, vec![1, a]),
            WeightSummand::new(-1, 1, vec![1, b]),
        ],
    );
    z.omega_class = omega;
    let p_plus = FixedComponent::new("p+", 0, int(1), vec![WeightSummand::trivial(-1, 3)]);
    FixedPointData::new(6, vec![p_minus, z, p_plus])
}

/// Middle-component data `(ω_Z, a, b)` of the three-component action,
/// with `c(V_{+1}) = 1 + a w` and `c(V_{-1}) = 1 + b w`, together with
/// the derivation. Only dimensions and moments are given for this action;
/// the rest is forced by localization:
///
/// 1. `∫ 1 = (a − b)/t^3` must vanish, so `a = b`.
/// 2. `∫ ũ` (based at `p-`) is affine in `ω_Z` and must vanish.
/// 3. `b_2 = 1` makes `c_1^{S¹}(M) = kũ + st`; the restriction at `p-`
///    gives `s`, the one at `p+` gives `k`, and the one at `Z` (where
///    `c(Z) = (1+w)^2`) gives `2 + a + b = k ω_Z`.
pub fn three_component_derivation() -> Result<(i64, i64, i64, Vec<String>)> {
    let mut notes = Vec::new();

    let integral_of_one = |a: i64, b: i64| -> Result<Coeff> {
        let d = three_component_with(1, a, b);
        let one = EquivariantClass::from_int(&d, 1);
        crate::localization::abbv_pushforward(&one, &d)
            .map(|m| m.get(&-3).cloned().unwrap_or_default())
    };
    let slope_a = integral_of_one(1, 0)? - integral_of_one(0, 0)?;
    let slope_b = integral_of_one(0, 1)? - integral_of_one(0, 0)?;
    if slope_a != -slope_b.clone() || integral_of_one(0, 0)? != int(0) {
        return Err(Error::Inconsistency(
            "integral of 1 is not a multiple of a - b".into(),
        ));
    }
    notes.push(format!(
        "integral of 1 = ({})(a - b) t^-3, so a = b",
        crate::fixeddata::RationalDisplay(&slope_a)
    ));

    let integral_of_u = |omega: i64| -> Result<Coeff> {
        let d = three_component_with(omega, 0, 0);
        let u = u_tilde(&d, 0);
        let push = crate::localization::abbv_pushforward(&u, &d)?;
        Ok(push.get(&-2).cloned().unwrap_or_default())
    };
    let at0 = integral_of_u(0)?;
    let slope = integral_of_u(1)? - &at0;
    let omega = -at0 / slope;
    if !omega.is_integer() || omega <= int(0) {
        return Err(Error::Inconsistency(format!(
            "omega_Z = {omega} is not a positive integer"
        )));
    }
    let omega = omega.to_integer().to_i64().expect("small");
    notes.push(format!(
        "integral of u-tilde vanishes only for omega_Z = {omega}"
    ));

    let d = three_component_with(omega, 0, 0);
    let u = u_tilde(&d, 0);
    let c1 = crate::localization::first_chern(&d);
    let c1_minus = c1.restriction(0).coeff(&[0, 1]);
    let c1_plus = c1.restriction(2).coeff(&[0, 1]);
    let s = c1_minus;
    let u_plus_t = u.restriction(2).coeff(&[0, 1]);
    let k = (c1_plus - &s) / u_plus_t;
    let u_z_w = u.restriction(1).coeff(&[1, 0]);
    let u_z_t = u.restriction(1).coeff(&[0, 1]);
    if &k * &u_z_t + &s != int(0) {
        return Err(Error::Inconsistency(
            "t-part of c_1 at Z does not cancel".into(),
        ));
    }
    let a_twice = &k * &u_z_w - int(2);
    let a = a_twice / int(2);
    if !a.is_integer() {
        return Err(Error::Inconsistency(format!(
            "chern coefficient {a} is not integral"
        )));
    }
    let a = a.to_integer().to_i64().expect("small");
    notes.push(format!(
        "c_1 = {}u~ + {}t; restriction at Z forces c(V+) = c(V-) = 1 + {a}w",
        crate::fixeddata::RationalDisplay(&k),
        crate::fixeddata::RationalDisplay(&s)
    ));

    // Sanity: the solved data integrates consistently.
    let solved = three_component_with(omega, a, a);
    for cls in [EquivariantClass::from_int(&solved, 1), u_tilde(&solved, 0)] {
        abbv_integrate(&cls, &solved)?;
    }
    Ok((omega, a, a, notes))
}

/// Three-component action on the 6-dimensional quadric: points `p-`, `p+`
/// at moments −1 and 1, and a 2-sphere `Z` at moment 0 whose data is
/// derived in [`three_component_derivation`].
pub fn fixture_three_component_quadric3() -> FixedPointData {
    let (omega, a, b, _) = three_component_derivation().expect("derivation is deterministic");
    three_component_with(omega, a, b)
}

/// Mutated data paired with the name of the check expected to reject it.
#[derive(Debug, Clone)]
pub struct NegativeFixture {
    pub name: &'static str,
    pub data: FixedPointData,
    pub expected_check: &'static str,
    pub description: &'static str,
}

fn mutate(data: &FixedPointData, k: usize, f: impl FnOnce(&mut FixedComponent)) -> FixedPointData {
    let mut c = data.component(k).clone();
    f(&mut c);
    data.with_component(k, c)
}

pub fn negative_fixtures() -> Vec<NegativeFixture> {
    let cpn31 = fixture_cpn(3, 1).expect("valid parameters");
    let cpn41 = fixture_cpn(4, 1).expect("valid parameters");
    let quadric5 = fixture_quadric(5).expect("valid parameters");

    let m2 = mutate(&cpn31, 1, |y| y.moment = int(2));

    let weights13 = mutate(&cpn31, 0, |x| {
        x.summands = vec![
            WeightSummand::new(1, 1, vec![1, 1]),
            WeightSummand::new(3, 1, vec![1, 1]),
        ];
    });

    let xi = mutate(&quadric5, 1, |y| {
        y.summands = vec![
            WeightSummand::new(-1, 2, vec![1, 2, 1]),
            WeightSummand::new(-2, 1, vec![1, 1]),
        ];
    });

    let dim_unequal = FixedPointData::new(
        6,
        vec![
            FixedComponent::new(
                "X",
                0,
                int(0),
                vec![WeightSummand::trivial(1, 1), WeightSummand::trivial(2, 2)],
            ),
            FixedComponent::new("Y", 4, int(1), vec![WeightSummand::new(-1, 1, vec![1, 1])]),
        ],
    );

    let chern1 = mutate(&quadric5, 0, |x| x.summands[0].chern = vec![1, 2]);

    let chern_a = mutate(&cpn41, 1, |y| y.summands[0].chern = vec![1, 6]);

    let rank_sum = mutate(&cpn31, 0, |x| {
        x.summands[0].rank = 3;
        x.summands[0].chern = vec![1, 3];
    });

    let k3 = FixedPointData::new(
        10,
        vec![
            FixedComponent::new(
                "X",
                4,
                int(0),
                vec![
                    WeightSummand::trivial(1, 1),
                    WeightSummand::trivial(2, 1),
                    WeightSummand::trivial(3, 1),
                ],
            ),
            FixedComponent::new(
                "Y",
                4,
                int(2),
                vec![
                    WeightSummand::trivial(-1, 1),
                    WeightSummand::trivial(-2, 1),
                    WeightSummand::trivial(-3, 1),
                ],
            ),
        ],
    );

    let quadric_m1 = mutate(&quadric5, 1, |y| y.moment = int(1));

    vec![
        NegativeFixture {
            name: "m2-semifree",
            data: m2,
            expected_check: "semifree-moment-gap",
            description: "cpn(3,1) with the maximum moved to moment 2",
        },
        NegativeFixture {
            name: "weights-1-3",
            data: weights13,
            expected_check: "distinct-weights",
            description: "cpn(3,1) with weights {1, 3} at the minimum",
        },
        NegativeFixture {
            name: "xi-asymmetric",
            data: xi,
            expected_check: "weight-symmetry",
            description: "quadric(5) with the weight -2 multiplicity at Y changed",
        },
        NegativeFixture {
            name: "dim-unequal",
            data: dim_unequal,
            expected_check: "equal-dimension",
            description: "weight 2 present with dim X = 0, dim Y = 4",
        },
        NegativeFixture {
            name: "chern-weight1",
            data: chern1,
            expected_check: "z2-normal-chern",
            description: "quadric(5) with weight-1 chern class 1 + 2u",
        },
        NegativeFixture {
            name: "chern-normal-a",
            data: chern_a,
            expected_check: "semifree-chern-normal",
            description: "cpn(4,1) with the normal chern class at Y replaced by (1+2v)^3",
        },
        NegativeFixture {
            name: "rank-sum",
            data: rank_sum,
            expected_check: "rank-sum",
            description: "cpn(3,1) with normal rank 3 at the minimum",
        },
        NegativeFixture {
            name: "stabilizer-k3",
            data: k3,
            expected_check: "stabilizer-bound",
            description: "weights {1, 2, 3} on both components",
        },
        NegativeFixture {
            name: "quadric-m1",
            data: quadric_m1,
            expected_check: "nonsemifree-moment-gap",
            description: "quadric(5) with moment gap 1",
        },
    ]
}

pub fn negative_fixture(name: &str) -> Option<NegativeFixture> {
    negative_fixtures().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_isotropy_chern_by_long_division() {
        // (1+u)^{k+1} = q · (1+2u): q_0 = 1, q_m = C(k+1, m) − 2 q_{m−1}
        for k in 1..=6u32 {
            let c = binomials(k + 1, k + 1);
            let mut q = vec![1i64];
            for m in 1..=k as usize {
                q.push(c[m] - 2 * q[m - 1]);
            }
            while q.last() == Some(&0) {
                q.pop();
            }
            assert_eq!(quadric_isotropy_chern(k).unwrap(), q, "k={k}");
        }
        assert_eq!(quadric_isotropy_chern(1).unwrap(), vec![1]);
        assert_eq!(quadric_isotropy_chern(2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn cpn_shapes() {
        let d = fixture_cpn(1, 0).unwrap();
        assert_eq!(d.dim_m(), 2);
        assert_eq!(d.component(0).dim, 0);
        assert_eq!(d.component(1).summands[0].weight, -1);

        let d = fixture_cpn(4, 1).unwrap();
        assert_eq!((d.component(0).dim, d.component(1).dim), (4, 2));
        assert_eq!(d.component(0).summands[0].rank, 2);
        assert_eq!(d.component(1).summands[0].rank, 3);
        assert_eq!(d.component(0).summands[0].chern, vec![1, 2, 1]);
        assert_eq!(d.component(1).summands[0].chern, vec![1, 3]);

        let d = fixture_cpn(2, 1).unwrap();
        assert_eq!((d.component(0).dim, d.component(1).dim), (0, 2));

        assert!(fixture_cpn(3, 3).is_err());
        assert!(fixture_cpn(0, 0).is_err());
    }

    #[test]
    fn quadric_shapes() {
        let d = fixture_quadric(3).unwrap();
        assert_eq!(d.component(0).summands[0].chern, vec![1, 1]);
        assert_eq!(d.component(0).summands[1].chern, vec![1]);
        assert_eq!(&d.component(1).moment - &d.component(0).moment, int(2));
        assert!(fixture_quadric(4).is_err());
        assert!(fixture_quadric(1).is_err());
    }

    #[test]
    fn three_component_data_is_derived() {
        let (omega, a, b, notes) = three_component_derivation().unwrap();
        assert_eq!((omega, a, b), (2, 2, 2));
        assert_eq!(notes.len(), 3);
        let d = fixture_three_component_quadric3();
        assert!(d.minimal_dimension());
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn negative_fixture_names_are_unique() {
        let all = negative_fixtures();
        let mut names: Vec<_> = all.iter().map(|f| f.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), all.len());
        assert!(negative_fixture("m2-semifree").is_some());
        assert!(negative_fixture("nope").is_none());
    }
}
