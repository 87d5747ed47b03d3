//! Exact localization: integration of equivariant classes from their
//! restriction tuples, and the checks that follow from it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::fixeddata::{equivariant_total_chern, EquivariantClass, FixedPointData, T};
use crate::polyring::{Coeff, GradedPoly, LaurentPoly, Truncation};
use crate::{Error, Result};

fn int(n: impl Into<BigInt>) -> Coeff {
    Coeff::from_integer(n.into())
}

/// `Σ_F ∫_F cls|_F / e^{S¹}(N_F)` as a Laurent polynomial in `t`, keyed by
/// exponent. Zero coefficients are dropped.
pub fn abbv_pushforward(
    cls: &EquivariantClass,
    data: &FixedPointData,
) -> Result<BTreeMap<i64, Coeff>> {
    let mut total: BTreeMap<i64, Coeff> = BTreeMap::new();
    for (k, comp) in data.components().iter().enumerate() {
        let env = data.env(k);
        let trunc = data.truncation(k);
        let euler = LaurentPoly::from_poly(comp.equivariant_euler(env), T)?;
        let inverse = euler.invert(&trunc)?;
        let restricted = LaurentPoly::from_poly(cls.restriction(k).clone(), T)?;
        let integrand = restricted.mul(&inverse)?.truncate_all(&trunc)?;
        let top = integrand.coefficient_of(data.generator(k), comp.top())?;
        let pure = top
            .pure_t_terms()
            .expect("only t survives once the generator is integrated out");
        for (e, c) in pure {
            *total.entry(e).or_insert_with(Coeff::zero) += c;
        }
    }
    total.retain(|_, c| !c.is_zero());
    Ok(total)
}

/// `∫_M cls`. Negative powers of `t` must cancel across components; any
/// survivor means the tuple is not the restriction of a global class.
/// Classes of degree above `dim M` push forward to multiples of positive
/// powers of `t`; their ordinary integral is the `t^0` coefficient, zero.
pub fn abbv_integrate(cls: &EquivariantClass, data: &FixedPointData) -> Result<Coeff> {
    let push = abbv_pushforward(cls, data)?;
    let negative: Vec<String> = push
        .iter()
        .filter(|(e, _)| **e < 0)
        .map(|(e, c)| format!("({}) t^{e}", crate::fixeddata::RationalDisplay(c)))
        .collect();
    if !negative.is_empty() {
        return Err(Error::InconsistentClass(negative.join(" + ")));
    }
    Ok(push.get(&0).cloned().unwrap_or_else(Coeff::zero))
}

/// The product formula for `e^{S¹}(N_F)` at the minimum and the maximum:
/// `Λ_F Π_{F'≠F} (t + ω_F g/(φ(F') − φ(F)))^{dim F'/2 + 1}` modulo
/// `g^{dim F/2 + 1}`. Requires the minimal-dimension identity.
pub fn check_euler_formula(data: &FixedPointData) -> Result<bool> {
    if data.len() < 2 || !data.minimal_dimension() {
        return Err(Error::NotApplicable(
            "the Euler product formula needs the minimal-dimension identity".into(),
        ));
    }
    let last = data.len() - 1;
    for k in [0, last] {
        if euler_product(data, k)? != data.component(k).equivariant_euler(data.env(k)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Right-hand side of the Euler product formula at component `k`.
pub fn euler_product(data: &FixedPointData, k: usize) -> Result<GradedPoly> {
    let comp = data.component(k);
    let env = data.env(k);
    let trunc = data.truncation(k);
    let g = GradedPoly::var(env, data.generator(k))?;
    let t = GradedPoly::var(env, T)?;
    let mut out = GradedPoly::constant(env, int(comp.lambda_total()));
    for (other_k, other) in data.components().iter().enumerate() {
        if other_k == k {
            continue;
        }
        let gap = &other.moment - &comp.moment;
        if gap.is_zero() {
            return Err(Error::NotApplicable(format!(
                "{} and {} share a moment value",
                comp.name, other.name
            )));
        }
        let factor = &t + &g.scale(&(int(comp.omega_class) / gap));
        out = out.mul_truncated(&factor.pow_truncated(other.top() + 1, &trunc)?, &trunc)?;
    }
    Ok(out)
}

/// `c_1^{S¹}(M)`.
pub fn first_chern(data: &FixedPointData) -> EquivariantClass {
    equivariant_total_chern(data).homogeneous_part(2)
}

/// The basis `α_0, …, α_n` of `H^*_{S¹}(M; Z)` for two fixed components
/// `X` (minimum, `dim X = 2i`) and `Y`. With `F_k = X` for `k ≤ i` and
/// `F_k = Y` otherwise,
///
/// `α_k = Λ^-_{F_k}/m_k (c_1 − Γ_{F_k} t)^{k − λ_{F_k}} Π_{λ_{F'} < λ_{F_k}} ((c_1 − Γ_{F'} t)/(Γ_{F_k} − Γ_{F'}))^{dim F'/2 + 1}`
///
/// where `m_k` normalizes the leading coefficient of the generator. On
/// projective-space data this is `(c_1 − (j+1)t)^k/(n+1)^k` for `k ≤ i`;
/// on quadric data `α_{i+1}|_Y = ½(v − 2t)^{i+1}`.
pub fn basis_alpha(data: &FixedPointData) -> Result<Vec<EquivariantClass>> {
    if data.len() != 2 || !data.minimal_dimension() {
        return Err(Error::NotApplicable(
            "the basis is built for two fixed components of minimal dimension".into(),
        ));
    }
    let c1 = first_chern(data);
    let t = EquivariantClass::t(data);
    let i = data.component(0).top();
    let n = data.half_dim();
    let shifted = |k: usize| &c1 - &t.scale(&int(data.component(k).gamma()));
    let mut basis = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let f = if k <= i { 0 } else { 1 };
        let comp = data.component(f);
        let lambda = comp.index();
        if k < lambda {
            return Err(Error::BasisConstruction(format!(
                "degree {} lies below the index of {}",
                2 * k,
                comp.name
            )));
        }
        let env = data.env(f);
        let c1_gen = c1.restriction(f).coeff(&exps(env.len(), 0)).abs();
        if c1_gen.is_zero() && k > lambda {
            return Err(Error::BasisConstruction(format!(
                "c_1 restricted to {} has no generator term",
                comp.name
            )));
        }
        let m = pow_coeff(&c1_gen, k - lambda);
        let mut alpha = shifted(f).pow(k - lambda);
        for (o, other) in data.components().iter().enumerate() {
            if other.index() < lambda {
                let denom = int(comp.gamma() - other.gamma());
                if denom.is_zero() {
                    return Err(Error::BasisConstruction(format!(
                        "{} and {} have the same weight sum",
                        comp.name, other.name
                    )));
                }
                let factor = shifted(o).scale(&denom.recip());
                alpha = &alpha * &factor.pow(other.top() + 1);
            }
        }
        let alpha = alpha.scale(&(int(comp.lambda_minus()) / m));
        if !alpha.is_integral() {
            let bad = alpha
                .restrictions()
                .iter()
                .find(|r| !r.is_integral())
                .map(ToString::to_string)
                .unwrap_or_default();
            return Err(Error::BasisConstruction(format!(
                "alpha_{k} has a non-integral restriction {bad}"
            )));
        }
        basis.push(alpha);
    }
    Ok(basis)
}

fn exps(len: usize, hot: usize) -> Vec<u32> {
    let mut e = vec![0; len];
    e[hot] = 1;
    e
}

fn pow_coeff(c: &Coeff, k: u32) -> Coeff {
    (0..k).fold(Coeff::one(), |acc, _| acc * c)
}

/// Matrix of `∫ α_a α_b`. Entries must be integers.
pub fn pairing_matrix(
    basis: &[EquivariantClass],
    data: &FixedPointData,
) -> Result<Vec<Vec<Coeff>>> {
    let mut rows = Vec::with_capacity(basis.len());
    for a in basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in basis {
            let v = abbv_integrate(&(a * b), data)?;
            if !v.is_integer() {
                return Err(Error::Inconsistency(format!("non-integral pairing {v}")));
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Exact determinant by Gaussian elimination over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn determinant(matrix: &[Vec<Coeff>]) -> Coeff {
    let n = matrix.len();
    let mut m: Vec<Vec<Coeff>> = matrix.to_vec();
    let mut det = Coeff::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Coeff::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Whether `p` lies in the ideal `(g^{top+1}, divisor)` of `Q[g, t]`, where
/// the divisor's highest `t`-power carries a nonzero constant. The two
/// generators have coprime leading terms, so division by the divisor in
/// `t` followed by truncation decides membership.
fn in_quotient_ideal(p: &GradedPoly, divisor: &GradedPoly, trunc: &Truncation) -> Result<bool> {
    let (_, rem) = p.div_rem_leading(divisor, T, trunc)?;
    Ok(rem.is_zero())
}

/// Whether `u ↦ (ω_Y v + (φ(X) − φ(Y)) t)/ω_X` induces a well-defined map
/// `Q[u,t]/(u^{i+1}, e^{S¹}(N_X)) → Q[v,t]/(v^{j+1}, e^{S¹}(N_Y))`, and
/// the inverse substitution one in the other direction.
pub fn tw_quotient_check(data: &FixedPointData) -> Result<bool> {
    if data.len() != 2 {
        return Err(Error::NotApplicable(
            "needs exactly two fixed components".into(),
        ));
    }
    Ok(quotient_map_ok(data, 0, 1)? && quotient_map_ok(data, 1, 0)?)
}

fn quotient_map_ok(data: &FixedPointData, from: usize, to: usize) -> Result<bool> {
    let src = data.component(from);
    let dst = data.component(to);
    let target = data.env(to);
    let g = GradedPoly::var(target, data.generator(to))?;
    let t = GradedPoly::var(target, T)?;
    let image = (&g.scale(&int(dst.omega_class)) + &t.scale(&(&src.moment - &dst.moment)))
        .scale(&int(src.omega_class).recip());
    let images = [image, t];
    let trunc = data.truncation(to);
    let euler_dst = dst.equivariant_euler(target);
    let relations = [
        GradedPoly::var(data.env(from), data.generator(from))?.pow(src.top() + 1),
        src.equivariant_euler(data.env(from)),
    ];
    for rel in &relations {
        let mapped = rel.compose(target, &images)?;
        if !in_quotient_ideal(&mapped, &euler_dst, &trunc)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the restriction of `cls` to the maximum is a multiple of
/// `e^{S¹}(N^-)` there. The class must vanish on every other component.
pub fn multiple_euler_check(cls: &EquivariantClass, data: &FixedPointData) -> Result<bool> {
    let last = data
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::NotApplicable("no components".into()))?;
    if let Some(k) = (0..last).find(|&k| !cls.restriction(k).is_zero()) {
        return Err(Error::NotApplicable(format!(
            "class does not vanish on {}",
            data.component(k).name
        )));
    }
    let comp = data.component(last);
    let euler = comp.equivariant_euler_negative(data.env(last));
    in_quotient_ideal(cls.restriction(last), &euler, &data.truncation(last))
}
