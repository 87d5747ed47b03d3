//! Fixed-point data of a Hamiltonian circle action and the elementary
//! equivariant classes built from it.
//!
//! Every fixed component `F` has cohomology `Z[g]/g^{k+1}` with `dim F = 2k`.
//! Restrictions of equivariant classes to `F` live in the environment
//! `[g, t]`; the generator is called `u` on the first component (the
//! minimum), `v` on the second, then `w`, `w1`, `w2`, ...

mod class;
mod validate;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::polyring::{Coeff, Env, GradedPoly, Truncation};

pub use class::{chern_class, equivariant_total_chern, u_tilde, EquivariantClass};
pub use validate::{validate, CheckStatus, ValidationCheck, ValidationReport};

/// Name of the equivariant parameter in every component environment.
pub const T: &str = "t";

/// Generator name for the `k`-th component in moment order.
pub fn generator_name(k: usize) -> String {
    match k {
        0 => "u".to_string(),
        1 => "v".to_string(),
        2 => "w".to_string(),
        _ => format!("w{}", k - 2),
    }
}

/// Subbundle `V_k` of the normal bundle on which the circle acts with
/// weight `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSummand {
    pub weight: i64,
    pub rank: u32,
    /// Coefficients `[c_0, c_1, ...]` of the total Chern class as a
    /// polynomial in the component generator.
    pub chern: Vec<i64>,
}

impl WeightSummand {
    pub fn new(weight: i64, rank: u32, chern: Vec<i64>) -> Self {
        Self {
            weight,
            rank,
            chern,
        }
    }

    /// Trivial bundle: total Chern class 1.
    pub fn trivial(weight: i64, rank: u32) -> Self {
        Self::new(weight, rank, vec![1])
    }

    /// Chern class as a polynomial in `env`'s first variable, truncated to
    /// the ring of a component of real dimension `dim`.
    pub fn chern_poly(&self, env: &Env, dim: u32) -> GradedPoly {
        let gen = env.vars()[0].name();
        let top = (dim / 2) as usize;
        let coeffs: Vec<Coeff> = self
            .chern
            .iter()
            .take(top + 1)
            .map(|c| Coeff::from_integer(BigInt::from(*c)))
            .collect();
        GradedPoly::univariate(env, gen, &coeffs).expect("generator is in env")
    }

    /// `Σ c_k g^k f^{d-k}` for `f` either `1 + λt` or `λt`. Coefficients
    /// above the rank are ignored; `validate` reports them.
    fn weighted_sum(&self, env: &Env, dim: u32, shift_one: bool) -> GradedPoly {
        let gen = env.vars()[0].name();
        let lt = GradedPoly::var(env, T)
            .expect("t is in env")
            .scale(&Coeff::from_integer(BigInt::from(self.weight)));
        let f = if shift_one {
            &GradedPoly::one(env) + &lt
        } else {
            lt
        };
        let g = GradedPoly::var(env, gen).expect("generator is in env");
        let top = dim / 2;
        let mut out = GradedPoly::zero(env);
        for (k, c) in self.chern.iter().enumerate() {
            let k = k as u32;
            if k > self.rank || k > top || *c == 0 {
                continue;
            }
            let term =
                (&g.pow(k) * &f.pow(self.rank - k)).scale(&Coeff::from_integer(BigInt::from(*c)));
            out = &out + &term;
        }
        out
    }

    /// `c^{S¹}(V) = Σ c_k (1 + λt)^{d-k}`.
    pub fn equivariant_chern(&self, env: &Env, dim: u32) -> GradedPoly {
        self.weighted_sum(env, dim, true)
    }

    /// `e^{S¹}(V) = Σ c_k (λt)^{d-k}`.
    pub fn equivariant_euler(&self, env: &Env, dim: u32) -> GradedPoly {
        self.weighted_sum(env, dim, false)
    }

    /// First Chern class coefficient.
    pub fn c1(&self) -> i64 {
        self.chern.get(1).copied().unwrap_or(0)
    }
}

/// One connected component of the fixed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedComponent {
    pub name: String,
    pub dim: u32,
    #[serde(with = "rational_string")]
    pub moment: Coeff,
    #[serde(default = "default_omega")]
    pub omega_class: i64,
    pub summands: Vec<WeightSummand>,
}

fn default_omega() -> i64 {
    1
}

impl FixedComponent {
    pub fn new(
        name: impl Into<String>,
        dim: u32,
        moment: Coeff,
        summands: Vec<WeightSummand>,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            moment,
            omega_class: 1,
            summands,
        }
    }

    /// Half the complex dimension bound of the component ring: `u^{top+1} = 0`.
    pub fn top(&self) -> u32 {
        self.dim / 2
    }

    pub fn normal_rank(&self) -> u32 {
        self.summands.iter().map(|s| s.rank).sum()
    }

    /// `λ_F`: the number of negative weights counted with multiplicity.
    pub fn index(&self) -> u32 {
        self.summands
            .iter()
            .filter(|s| s.weight < 0)
            .map(|s| s.rank)
            .sum()
    }

    /// `Γ_F`: sum of the weights with multiplicity.
    pub fn gamma(&self) -> i64 {
        self.summands
            .iter()
            .map(|s| s.weight * i64::from(s.rank))
            .sum()
    }

    /// `Λ_F^-`: product of the negative weights with multiplicity.
    pub fn lambda_minus(&self) -> BigInt {
        self.weight_product(|w| w < 0)
    }

    /// `Λ_F`: product of all weights with multiplicity.
    pub fn lambda_total(&self) -> BigInt {
        self.weight_product(|_| true)
    }

    fn weight_product(&self, keep: impl Fn(i64) -> bool) -> BigInt {
        self.summands
            .iter()
            .filter(|s| keep(s.weight))
            .fold(BigInt::one(), |acc, s| {
                acc * BigInt::from(s.weight).pow(s.rank)
            })
    }

    /// Truncation ideal `g^{top+1}` of the component ring in `env`.
    pub fn truncation(&self, env: &Env) -> Truncation {
        Truncation::single(env.vars()[0].name(), self.top())
    }

    fn product_over(
        &self,
        env: &Env,
        keep: impl Fn(&WeightSummand) -> bool,
        f: impl Fn(&WeightSummand) -> GradedPoly,
    ) -> GradedPoly {
        let trunc = self.truncation(env);
        self.summands
            .iter()
            .filter(|s| keep(s))
            .fold(GradedPoly::one(env), |acc, s| {
                acc.mul_truncated(&f(s), &trunc).expect("same environment")
            })
    }

    /// `e^{S¹}(N_F)` reduced modulo `g^{top+1}`.
    pub fn equivariant_euler(&self, env: &Env) -> GradedPoly {
        self.product_over(env, |_| true, |s| s.equivariant_euler(env, self.dim))
    }

    /// `e^{S¹}(N_F^-)`: the product over negative-weight summands only.
    pub fn equivariant_euler_negative(&self, env: &Env) -> GradedPoly {
        self.product_over(
            env,
            |s| s.weight < 0,
            |s| s.equivariant_euler(env, self.dim),
        )
    }

    /// `c^{S¹}(N_F)` reduced modulo `g^{top+1}`.
    pub fn equivariant_chern_normal(&self, env: &Env) -> GradedPoly {
        self.product_over(env, |_| true, |s| s.equivariant_chern(env, self.dim))
    }

    /// Ordinary total Chern class of the normal bundle.
    pub fn chern_normal(&self, env: &Env) -> GradedPoly {
        self.product_over(env, |_| true, |s| s.chern_poly(env, self.dim))
    }

    /// Total Chern class of the component itself, `(1 + g)^{top+1}`: the
    /// value for a component with cohomology `Z[g]/g^{top+1}`.
    pub fn tangent_chern(&self, env: &Env) -> GradedPoly {
        let g = GradedPoly::var(env, env.vars()[0].name()).expect("generator is in env");
        (&GradedPoly::one(env) + &g)
            .pow_truncated(self.top() + 1, &self.truncation(env))
            .expect("same environment")
    }
}

/// The complete input: the manifold dimension and the fixed components,
/// kept sorted by moment value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "DataFile", into = "DataFile")]
pub struct FixedPointData {
    dim_m: u32,
    components: Vec<FixedComponent>,
    envs: Vec<Env>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataFile {
    #[serde(rename = "dim_M")]
    dim_m: u32,
    components: Vec<FixedComponent>,
}

impl From<DataFile> for FixedPointData {
    fn from(f: DataFile) -> Self {
        Self::new(f.dim_m, f.components)
    }
}

impl From<FixedPointData> for DataFile {
    fn from(d: FixedPointData) -> Self {
        Self {
            dim_m: d.dim_m,
            components: d.components,
        }
    }
}

impl FixedPointData {
    /// Sorts the components by moment value (stably, so ties keep their
    /// input order and surface in `validate`).
    pub fn new(dim_m: u32, mut components: Vec<FixedComponent>) -> Self {
        components.sort_by(|a, b| a.moment.cmp(&b.moment));
        let envs = (0..components.len())
            .map(|k| Env::degree_two(&[&generator_name(k), T]))
            .collect();
        Self {
            dim_m,
            components,
            envs,
        }
    }

    pub fn dim_m(&self) -> u32 {
        self.dim_m
    }

    /// `n` with `dim M = 2n`.
    pub fn half_dim(&self) -> u32 {
        self.dim_m / 2
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &FixedComponent {
        &self.components[k]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Restriction environment `[g, t]` of the `k`-th component.
    pub fn env(&self, k: usize) -> &Env {
        &self.envs[k]
    }

    pub fn generator(&self, k: usize) -> &str {
        self.envs[k].vars()[0].name()
    }

    pub fn truncation(&self, k: usize) -> Truncation {
        self.components[k].truncation(&self.envs[k])
    }

    /// Copy with the `k`-th component replaced (and the list re-sorted).
    pub fn with_component(&self, k: usize, comp: FixedComponent) -> Self {
        let mut comps = self.components.clone();
        comps[k] = comp;
        Self::new(self.dim_m, comps)
    }

    /// Whether `Σ (dim F + 2) = dim M + 2`.
    pub fn minimal_dimension(&self) -> bool {
        let lhs: u64 = self.components.iter().map(|c| u64::from(c.dim) + 2).sum();
        lhs == u64::from(self.dim_m) + 2
    }

    /// gcd of all weights over all components.
    pub fn weight_gcd(&self) -> u64 {
        use num_integer::Integer;
        self.components
            .iter()
            .flat_map(|c| &c.summands)
            .fold(0u64, |g, s| g.gcd(&s.weight.unsigned_abs()))
    }

    pub fn from_json(text: &str) -> Result<Self, crate::Error> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            crate::Error::Parse(format!(
                "at `{path}` (line {}, column {}): {inner}",
                inner.line(),
                inner.column()
            ))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixed-point data serializes")
    }
}

/// Reduced `p/q`, integers without a denominator.
pub struct RationalDisplay<'a>(pub &'a Coeff);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Parses `"p"` or `"p/q"` (optional sign, no decimals).
pub fn parse_rational(s: &str) -> Result<Coeff, String> {
    let s = s.trim();
    let bad = || format!("invalid rational `{s}`: expected an integer or p/q");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Coeff::new(num, den))
}

mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&RationalDisplay(c).to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coeff, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
