//! Exact graded polynomial arithmetic.
//!
//! Every cohomology class in this crate is a [`GradedPoly`]: a finite map from
//! exponent vectors to exact rational coefficients over a fixed list of
//! [`Variable`]s, each carrying an even cohomological degree. Quotients by
//! truncation ideals are never global state; callers pass a [`Truncation`]
//! wherever a reduction is wanted, because the same polynomial is routinely
//! reduced in several different quotients.

mod display;
mod laurent;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use laurent::LaurentPoly;

/// Exact coefficient type.
pub type Coeff = BigRational;

/// Exponent vector, one entry per variable of the environment.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable environments differ: [{left}] vs [{right}]")]
    EnvironmentMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in environment")]
    DuplicateVariable(String),
    #[error("variable `{name}` has degree {degree}; degrees must be positive and even")]
    BadDegree { name: String, degree: u32 },
    #[error("substitution changes grading: `{var}` has degree {expected}, replacement has degree {found}")]
    Grading {
        var: String,
        expected: u32,
        found: String,
    },
    #[error("constant term of the divisor is {0}, not a unit")]
    NonUnitConstant(String),
    #[error("leading coefficient of the Euler class vanishes")]
    SingularEuler,
    #[error("expansion does not terminate: `{0}` is not nilpotent modulo the truncation")]
    DivergentExpansion(String),
    #[error("divisor has no invertible leading term in `{0}`")]
    NonMonicDivisor(String),
}

/// A formal generator of even cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Result<Self, PolyError> {
        let name = name.into();
        if degree == 0 || !degree.is_multiple_of(2) {
            return Err(PolyError::BadDegree { name, degree });
        }
        Ok(Self { name, degree })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// Ordered list of variables shared by a family of polynomials.
#[derive(Debug, Clone)]
pub struct Env(Arc<[Variable]>);

impl Env {
    pub fn new(vars: Vec<Variable>) -> Result<Self, PolyError> {
        for (k, v) in vars.iter().enumerate() {
            if vars[..k].iter().any(|w| w.name == v.name) {
                return Err(PolyError::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Self(vars.into()))
    }

    /// Environment of degree-2 generators with the given names.
    pub fn degree_two(names: &[&str]) -> Self {
        let vars = names
            .iter()
            .map(|n| Variable::new(*n, 2).expect("degree 2 is valid"))
            .collect();
        Self::new(vars).expect("names must be distinct")
    }

    pub fn vars(&self) -> &[Variable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.0
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    fn names(&self) -> String {
        self.0
            .iter()
            .map(|v| v.name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn weight(&self, mono: &[u32]) -> u32 {
        mono.iter()
            .zip(self.0.iter())
            .map(|(e, v)| e * v.degree)
            .sum()
    }
}

impl PartialEq for Env {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Env {}

/// Cohomological degree of a polynomial; the zero polynomial sits at −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

/// Upper bounds on exponents of named variables, i.e. the ideal
/// generated by `var^(top+1)` for each entry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Truncation(Vec<(String, u32)>);

impl Truncation {
    pub fn none() -> Self {
        Self(Vec::new())
    }

    pub fn single(var: impl Into<String>, top: u32) -> Self {
        Self(vec![(var.into(), top)])
    }

    pub fn with(mut self, var: impl Into<String>, top: u32) -> Self {
        self.0.push((var.into(), top));
        self
    }

    pub fn entries(&self) -> &[(String, u32)] {
        &self.0
    }

    fn resolve(&self, env: &Env) -> Result<Vec<(usize, u32)>, PolyError> {
        self.0
            .iter()
            .map(|(name, top)| Ok((env.index_of(name)?, *top)))
            .collect()
    }
}

/// Polynomial with exact rational coefficients in a graded environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    env: Env,
    terms: BTreeMap<Monomial, Coeff>,
}

pub(crate) fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

impl GradedPoly {
    pub fn zero(env: &Env) -> Self {
        Self {
            env: env.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(env: &Env, c: Coeff) -> Self {
        Self::monomial(env, vec![0; env.len()], c)
    }

    pub fn one(env: &Env) -> Self {
        Self::constant(env, Coeff::one())
    }

    pub fn from_int(env: &Env, n: i64) -> Self {
        Self::constant(env, int(n))
    }

    pub fn monomial(env: &Env, exps: Monomial, c: Coeff) -> Self {
        assert_eq!(exps.len(), env.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self {
            env: env.clone(),
            terms,
        }
    }

    pub fn var(env: &Env, name: &str) -> Result<Self, PolyError> {
        let k = env.index_of(name)?;
        let mut exps = vec![0; env.len()];
        exps[k] = 1;
        Ok(Self::monomial(env, exps, Coeff::one()))
    }

    /// `Σ coeffs[k] · var^k`.
    pub fn univariate(env: &Env, name: &str, coeffs: &[Coeff]) -> Result<Self, PolyError> {
        let k = env.index_of(name)?;
        let mut p = Self::zero(env);
        for (pow, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; env.len()];
            exps[k] = pow as u32;
            p.add_term(exps, c.clone());
        }
        Ok(p)
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&vec![0; self.env.len()])
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| self.env.weight(m))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Highest exponent of `name` appearing in any term, `None` for zero.
    pub fn degree_in(&self, name: &str) -> Result<Option<u32>, PolyError> {
        let k = self.env.index_of(name)?;
        Ok(self.terms.keys().map(|m| m[k]).max())
    }

    /// Homogeneous component of cohomological degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        self.filter(|m| self.env.weight(m) == deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(|m| self.env.weight(m));
        match ws.next() {
            None => true,
            Some(w) => ws.all(|x| x == w),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficients as integers, if all of them are.
    pub fn integer_terms(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer())))
            .collect()
    }

    /// Coefficient list `[c_0, c_1, …]` of a polynomial in `name` alone.
    pub fn univariate_coeffs(&self, name: &str) -> Result<Vec<Coeff>, PolyError> {
        let k = self.env.index_of(name)?;
        let mut out: Vec<Coeff> = Vec::new();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, e)| i != k && *e != 0) {
                return Err(PolyError::UnknownVariable(format!(
                    "{} (polynomial is not univariate in `{name}`)",
                    self.env.names()
                )));
            }
            let e = m[k] as usize;
            if out.len() <= e {
                out.resize(e + 1, Coeff::zero());
            }
            out[e] = c.clone();
        }
        Ok(out)
    }

    /// Collects the terms whose exponent of `name` equals `power`, with that
    /// variable removed (exponent set to zero).
    pub fn coefficient_of(&self, name: &str, power: u32) -> Result<Self, PolyError> {
        let k = self.env.index_of(name)?;
        let mut out = Self::zero(&self.env);
        for (m, c) in &self.terms {
            if m[k] == power {
                let mut m = m.clone();
                m[k] = 0;
                out.add_term(m, c.clone());
            }
        }
        Ok(out)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            env: self.env.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, exps: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_env(&self, other: &Self) -> Result<(), PolyError> {
        if self.env == other.env {
            Ok(())
        } else {
            Err(PolyError::EnvironmentMismatch {
                left: self.env.names(),
                right: other.env.names(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_env(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_env(other)?;
        let mut out = Self::zero(&self.env);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.env);
        }
        Self {
            env: self.env.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, name: &str, k: u32) -> Result<Self, PolyError> {
        let idx = self.env.index_of(name)?;
        Ok(Self {
            env: self.env.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m[idx] += k;
                    (m, c.clone())
                })
                .collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.env);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `pow` followed by truncation, reducing after every product.
    pub fn pow_truncated(&self, k: u32, trunc: &Truncation) -> Result<Self, PolyError> {
        let bounds = trunc.resolve(&self.env)?;
        let mut result = Self::one(&self.env);
        let mut base = self.truncate_resolved(&bounds);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = (&result * &base).truncate_resolved(&bounds);
            }
            k >>= 1;
            if k > 0 {
                base = (&base * &base).truncate_resolved(&bounds);
            }
        }
        Ok(result)
    }

    pub fn truncate(&self, name: &str, top: u32) -> Result<Self, PolyError> {
        let k = self.env.index_of(name)?;
        Ok(self.filter(|m| m[k] <= top))
    }

    pub fn truncate_all(&self, trunc: &Truncation) -> Result<Self, PolyError> {
        let bounds = trunc.resolve(&self.env)?;
        Ok(self.truncate_resolved(&bounds))
    }

    fn truncate_resolved(&self, bounds: &[(usize, u32)]) -> Self {
        self.filter(|m| bounds.iter().all(|(k, top)| m[*k] <= *top))
    }

    /// Product reduced modulo `trunc`.
    pub fn mul_truncated(&self, other: &Self, trunc: &Truncation) -> Result<Self, PolyError> {
        self.try_mul(other)?.truncate_all(trunc)
    }

    /// Whether every term of `self` lies in the truncation ideal.
    fn is_nilpotent_mod(&self, bounds: &[(usize, u32)]) -> bool {
        self.terms
            .keys()
            .all(|m| bounds.iter().any(|(k, _)| m[*k] > 0))
    }

    /// Returns `q` with `q · den ≡ num` modulo `trunc`. The constant term of
    /// `den` must be ±1 and every other term must be nilpotent modulo `trunc`.
    pub fn series_div(num: &Self, den: &Self, trunc: &Truncation) -> Result<Self, PolyError> {
        num.check_env(den)?;
        let bounds = trunc.resolve(&num.env)?;
        let den = den.truncate_resolved(&bounds);
        let c0 = den.constant_term();
        if !(c0.is_one() || (-&c0).is_one()) {
            return Err(PolyError::NonUnitConstant(c0.to_string()));
        }
        let inverse = den.unit_inverse(&c0, &bounds)?;
        Ok((num * &inverse).truncate_resolved(&bounds))
    }

    /// Inverse of `c0 + rest` as a terminating geometric series modulo `bounds`.
    fn unit_inverse(&self, c0: &Coeff, bounds: &[(usize, u32)]) -> Result<Self, PolyError> {
        let c0_inv = c0.recip();
        let mut rest = self.clone();
        rest.terms.remove(&vec![0; self.env.len()]);
        let rest = rest.scale(&c0_inv);
        if !rest.is_nilpotent_mod(bounds) {
            let witness = rest
                .terms
                .keys()
                .find(|m| bounds.iter().all(|(k, _)| m[*k] == 0))
                .map(|m| Self::monomial(&self.env, m.clone(), Coeff::one()).to_string())
                .unwrap_or_default();
            return Err(PolyError::DivergentExpansion(witness));
        }
        let neg_rest = -&rest;
        let mut term = Self::one(&self.env);
        let mut sum = Self::zero(&self.env);
        while !term.is_zero() {
            sum = &sum + &term;
            term = (&term * &neg_rest).truncate_resolved(bounds);
        }
        Ok(sum.scale(&c0_inv))
    }

    /// Replaces `name` by `repl`. The replacement must have the variable's
    /// degree unless `allow_degree_change` is set; zero is always accepted.
    pub fn substitute(
        &self,
        name: &str,
        repl: &Self,
        allow_degree_change: bool,
    ) -> Result<Self, PolyError> {
        self.check_env(repl)?;
        let k = self.env.index_of(name)?;
        let expected = self.env.vars()[k].degree;
        if !allow_degree_change && !repl.is_zero() {
            let homogeneous_ok = repl.is_homogeneous() && repl.degree() == Degree::Finite(expected);
            if !homogeneous_ok {
                return Err(PolyError::Grading {
                    var: name.to_string(),
                    expected,
                    found: format!("{:?}", repl.degree()),
                });
            }
        }
        let images: Vec<Self> = (0..self.env.len())
            .map(|i| {
                if i == k {
                    repl.clone()
                } else {
                    let mut e = vec![0; self.env.len()];
                    e[i] = 1;
                    Self::monomial(&self.env, e, Coeff::one())
                }
            })
            .collect();
        self.compose(&self.env, &images)
    }

    /// Ring homomorphism sending the `k`-th variable of `self.env()` to
    /// `images[k]`, all of which live in `target`.
    pub fn compose(&self, target: &Env, images: &[Self]) -> Result<Self, PolyError> {
        assert_eq!(images.len(), self.env.len(), "one image per variable");
        for img in images {
            if img.env != *target {
                return Err(PolyError::EnvironmentMismatch {
                    left: target.names(),
                    right: img.env.names(),
                });
            }
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|_| Vec::new()).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (k, e) in m.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let cache = &mut powers[k];
                while cache.len() <= *e as usize {
                    let next = match cache.last() {
                        None => Self::one(target),
                        Some(p) => p * &images[k],
                    };
                    cache.push(next);
                }
                term = &term * &cache[*e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses `self` in `target`, matching variables by name.
    pub fn embed(&self, target: &Env) -> Result<Self, PolyError> {
        let images = self
            .env
            .vars()
            .iter()
            .map(|v| Self::var(target, &v.name))
            .collect::<Result<Vec<_>, _>>()?;
        self.compose(target, &images)
    }

    /// Sets `name` to zero.
    pub fn eval_zero(&self, name: &str) -> Result<Self, PolyError> {
        let k = self.env.index_of(name)?;
        Ok(self.filter(|m| m[k] == 0))
    }

    /// Division with remainder by a divisor whose highest power of `main`
    /// carries a nonzero constant coefficient, computed modulo `trunc`
    /// (which must make all other coefficients of the divisor nilpotent).
    /// The remainder has `main`-degree below that of the divisor.
    pub fn div_rem_leading(
        &self,
        divisor: &Self,
        main: &str,
        trunc: &Truncation,
    ) -> Result<(Self, Self), PolyError> {
        self.check_env(divisor)?;
        let k = self.env.index_of(main)?;
        let bounds = trunc.resolve(&self.env)?;
        let divisor = divisor.truncate_resolved(&bounds);
        let lead_pow = divisor
            .terms
            .keys()
            .map(|m| m[k])
            .max()
            .ok_or_else(|| PolyError::NonMonicDivisor(main.to_string()))?;
        let mut lead_exps = vec![0; self.env.len()];
        lead_exps[k] = lead_pow;
        let lead = divisor.coeff(&lead_exps);
        // The top `main`-power must be a bare constant.
        let top_terms = divisor.terms.keys().filter(|m| m[k] == lead_pow).count();
        if lead.is_zero() || top_terms != 1 {
            return Err(PolyError::NonMonicDivisor(main.to_string()));
        }
        let lead_inv = lead.recip();
        let mut quotient = Self::zero(&self.env);
        let mut rem = self.truncate_resolved(&bounds);
        loop {
            let pick = rem
                .terms
                .iter()
                .filter(|(m, _)| m[k] >= lead_pow)
                .max_by_key(|(m, _)| m[k])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = pick else { break };
            let mut qm = m.clone();
            qm[k] -= lead_pow;
            let q = Self::monomial(&self.env, qm, c * &lead_inv);
            rem = (&rem - &(&q * &divisor)).truncate_resolved(&bounds);
            quotient = &quotient + &q;
        }
        Ok((quotient, rem))
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs)
            .expect("polynomial environments must agree")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_sub(rhs)
            .expect("polynomial environments must agree")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs)
            .expect("polynomial environments must agree")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            env: self.env.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        display::write_poly(f, self)
    }
}
