use num_bigint::BigInt;
use num_traits::Zero;

use super::{Case, CheckReport, Classification};
use crate::fixeddata::{chern_class, FixedPointData, RationalDisplay};
use crate::localization::abbv_integrate;
use crate::polyring::Coeff;
use crate::{Error, Result};

/// Euler characteristics of the fixed components and of the total space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCharacteristic {
    /// `∫_F c_top(F)` with `c(F) = (1 + g)^{top+1}`.
    pub components: Vec<BigInt>,
    pub total: BigInt,
    /// `∫_M c_n^{S¹}(M)` computed by localization.
    pub localized: Coeff,
}

pub fn euler_characteristic(data: &FixedPointData) -> Result<EulerCharacteristic> {
    let components: Vec<BigInt> = data
        .components()
        .iter()
        .map(|c| BigInt::from(c.top()) + 1)
        .collect();
    let total = components.iter().sum();
    let localized = abbv_integrate(&chern_class(data, data.half_dim()), data)?;
    Ok(EulerCharacteristic {
        components,
        total,
        localized,
    })
}

/// Each component has `χ = dim/2 + 1`, they add up to `n + 1`, and the
/// localized top Chern class agrees.
pub fn euler_characteristic_check(data: &FixedPointData, cls: &Classification) -> bool {
    if !cls.is_accepted() {
        return false;
    }
    let Ok(chi) = euler_characteristic(data) else {
        return false;
    };
    let per_component = data.components().iter().enumerate().all(|(k, comp)| {
        let env = data.env(k);
        let top = comp
            .tangent_chern(env)
            .coeff(&top_exps(env.len(), comp.top()));
        top == Coeff::from_integer(chi.components[k].clone())
    });
    let n_plus_one = BigInt::from(data.half_dim()) + 1;
    per_component && chi.total == n_plus_one && chi.localized == Coeff::from_integer(n_plus_one)
}

fn top_exps(len: usize, top: u32) -> Vec<u32> {
    let mut e = vec![0; len];
    e[0] = top;
    e
}

/// First Chern classes of weight subbundles of `N_X` at the minimum, in
/// units of `u`. With `m = φ(Y) − φ(X)` and `Γ_V` the weight sum of `V`:
///
/// * a sum `V` of rank greater than one has `c_1(V) = ν Γ_V u/m` with
///   `0 < ν < 2`;
/// * a line bundle has `0 ≤ ν ≤ 2`, with `ν = 0` and `ν = 2` each
///   occurring at most once;
/// * for `Q = M^{Z_q}`, `c_1(N_Q|_X) = 2 Γ_Q u/m` when
///   `dim Q − dim Y > 2`, and `c_1(N_X^Q) = 0` when `dim Q − dim Y = 2`.
pub fn subbundle_chern_bounds(
    data: &FixedPointData,
    cls: &Classification,
) -> Result<Vec<CheckReport>> {
    if cls.case != Case::B {
        return Err(Error::NotApplicable(
            "subbundle bounds apply to Case B data".into(),
        ));
    }
    let (x, y) = (data.component(0), data.component(1));
    if x.dim == 0 {
        return Ok(vec![CheckReport::skipped(
            "subbundle-nu",
            "the minimum is a point, so every first Chern class vanishes",
        )]);
    }
    let m = &y.moment - &x.moment;
    let parts = &x.summands;
    // weights at the minimum are positive, so Γ_V is never zero
    let nu = |mask: u32| -> (u32, Coeff) {
        let mut rank = 0;
        let mut c1 = 0i64;
        let mut gamma = 0i64;
        for (k, s) in parts.iter().enumerate() {
            if mask & (1 << k) != 0 {
                rank += s.rank;
                c1 += s.c1();
                gamma += s.weight * i64::from(s.rank);
            }
        }
        let gamma = Coeff::from_integer(BigInt::from(gamma));
        (rank, Coeff::from_integer(BigInt::from(c1)) * &m / gamma)
    };

    let two = Coeff::from_integer(BigInt::from(2));
    let mut problems = Vec::new();
    let (mut zeros, mut twos) = (0, 0);
    for mask in 1u32..(1 << parts.len()) {
        let (rank, v) = nu(mask);
        let label = subset_label(parts, mask);
        if rank > 1 {
            if !(v > Coeff::zero() && v < two) {
                problems.push((
                    format!("nu({label}) = {} not in (0,2)", RationalDisplay(&v)),
                    None,
                ));
            }
        } else {
            if v < Coeff::zero() || v > two {
                problems.push((
                    format!("nu({label}) = {} not in [0,2]", RationalDisplay(&v)),
                    None,
                ));
            }
            zeros += usize::from(v.is_zero());
            twos += usize::from(v == two);
        }
    }
    if zeros > 1 {
        problems.push((format!("{zeros} line bundles with nu = 0"), None));
    }
    if twos > 1 {
        problems.push((format!("{twos} line bundles with nu = 2"), None));
    }
    let mut reports = vec![CheckReport::from_problems(
        "subbundle-nu",
        problems,
        "every weight subbundle sum has nu in the allowed range",
    )];

    let top_weight = parts.iter().map(|s| s.weight).max().unwrap_or(1);
    for q in 2..=top_weight {
        let inside: Vec<_> = parts.iter().filter(|s| s.weight % q == 0).collect();
        if inside.is_empty() {
            continue;
        }
        let outside: Vec<_> = parts.iter().filter(|s| s.weight % q != 0).collect();
        let inside_rank: u32 = inside.iter().map(|s| s.rank).sum();
        let dim_q = x.dim + 2 * inside_rank;
        let name = format!("Z_{q}");
        if dim_q >= data.dim_m() || dim_q <= y.dim {
            continue;
        }
        let gap = dim_q - y.dim;
        if gap == 2 {
            let c1: i64 = inside.iter().map(|s| s.c1()).sum();
            let problems = if c1 == 0 {
                vec![]
            } else {
                vec![(
                    format!("c_1(N_X^Q) = {c1}u for Q = M^{name}, expected 0"),
                    None,
                )]
            };
            reports.push(CheckReport::from_problems(
                "isotropy-normal-c1",
                problems,
                format!("c_1(N_X^Q) = 0 for Q = M^{name}"),
            ));
        } else {
            let c1: i64 = outside.iter().map(|s| s.c1()).sum();
            let gamma: i64 = outside.iter().map(|s| s.weight * i64::from(s.rank)).sum();
            let expected = two.clone() * Coeff::from_integer(BigInt::from(gamma)) / &m;
            let actual = Coeff::from_integer(BigInt::from(c1));
            let problems = if actual == expected {
                vec![]
            } else {
                vec![(
                    format!(
                        "c_1(N_Q|_X) = {c1}u for Q = M^{name}, expected {}u",
                        RationalDisplay(&expected)
                    ),
                    None,
                )]
            };
            reports.push(CheckReport::from_problems(
                "isotropy-c1",
                problems,
                format!("c_1(N_Q|_X) = 2 Gamma_Q u/m for Q = M^{name}"),
            ));
        }
    }
    Ok(reports)
}

fn subset_label(parts: &[crate::fixeddata::WeightSummand], mask: u32) -> String {
    let weights: Vec<String> = parts
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, s)| format!("V_{}", s.weight))
        .collect();
    weights.join("+")
}
