use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::{FixedPointData, T};
use crate::polyring::{Coeff, Degree, GradedPoly, PolyError, Truncation};

/// An equivariant class on the total space, stored as its tuple of
/// restrictions to the fixed components (one polynomial in `[g, t]` per
/// component, reduced modulo `g^{top+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantClass {
    restrictions: Vec<GradedPoly>,
    truncations: Vec<Truncation>,
}

impl EquivariantClass {
    /// Reduces each restriction modulo its component ring.
    pub fn new(data: &FixedPointData, restrictions: Vec<GradedPoly>) -> Result<Self, PolyError> {
        assert_eq!(
            restrictions.len(),
            data.len(),
            "one restriction per component"
        );
        let truncations: Vec<Truncation> = (0..data.len()).map(|k| data.truncation(k)).collect();
        let restrictions = restrictions
            .into_iter()
            .zip(&truncations)
            .enumerate()
            .map(|(k, (p, tr))| {
                if p.env() != data.env(k) {
                    return Err(PolyError::EnvironmentMismatch {
                        left: format!("{:?}", data.env(k)),
                        right: format!("{:?}", p.env()),
                    });
                }
                p.truncate_all(tr)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            restrictions,
            truncations,
        })
    }

    pub fn constant(data: &FixedPointData, c: Coeff) -> Self {
        let rs = (0..data.len())
            .map(|k| GradedPoly::constant(data.env(k), c.clone()))
            .collect();
        Self::new(data, rs).expect("constants live in every environment")
    }

    pub fn from_int(data: &FixedPointData, n: i64) -> Self {
        Self::constant(data, Coeff::from_integer(BigInt::from(n)))
    }

    /// The equivariant parameter `t`, restricting to `t` everywhere.
    pub fn t(data: &FixedPointData) -> Self {
        let rs = (0..data.len())
            .map(|k| GradedPoly::var(data.env(k), T).expect("t is in env"))
            .collect();
        Self::new(data, rs).expect("t lives in every environment")
    }

    pub fn restriction(&self, k: usize) -> &GradedPoly {
        &self.restrictions[k]
    }

    pub fn restrictions(&self) -> &[GradedPoly] {
        &self.restrictions
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.iter().all(GradedPoly::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.restrictions.iter().all(GradedPoly::is_integral)
    }

    /// Common degree of all nonzero homogeneous restrictions; `None` if the
    /// class is inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        let mut deg = Degree::NegInfinity;
        for r in &self.restrictions {
            if r.is_zero() {
                continue;
            }
            if !r.is_homogeneous() {
                return None;
            }
            match deg {
                Degree::NegInfinity => deg = r.degree(),
                d if d != r.degree() => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    /// Degree-`deg` homogeneous part of every restriction.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        self.map(|p| p.homogeneous_part(deg))
    }

    fn map(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        Self {
            restrictions: self.restrictions.iter().map(f).collect(),
            truncations: self.truncations.clone(),
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&GradedPoly, &GradedPoly) -> Result<GradedPoly, PolyError>,
    ) -> Result<Self, PolyError> {
        if self.restrictions.len() != other.restrictions.len() {
            return Err(PolyError::EnvironmentMismatch {
                left: format!("{} components", self.restrictions.len()),
                right: format!("{} components", other.restrictions.len()),
            });
        }
        let restrictions = self
            .restrictions
            .iter()
            .zip(&other.restrictions)
            .zip(&self.truncations)
            .map(|((a, b), tr)| f(a, b)?.truncate_all(tr))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            restrictions,
            truncations: self.truncations.clone(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.zip(other, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.zip(other, |a, b| a.try_sub(b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.zip(other, |a, b| a.try_mul(b))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let restrictions = self
            .restrictions
            .iter()
            .zip(&self.truncations)
            .map(|(p, tr)| p.pow_truncated(k, tr).expect("truncation matches env"))
            .collect();
        Self {
            restrictions,
            truncations: self.truncations.clone(),
        }
    }

    /// Ordinary class: every restriction at `t = 0`.
    pub fn at_t_zero(&self) -> Self {
        self.map(|p| p.eval_zero(T).expect("t is in env"))
    }
}

impl Add for &EquivariantClass {
    type Output = EquivariantClass;
    fn add(self, rhs: &EquivariantClass) -> EquivariantClass {
        self.try_add(rhs).expect("classes over the same data")
    }
}

impl Sub for &EquivariantClass {
    type Output = EquivariantClass;
    fn sub(self, rhs: &EquivariantClass) -> EquivariantClass {
        self.try_sub(rhs).expect("classes over the same data")
    }
}

impl Mul for &EquivariantClass {
    type Output = EquivariantClass;
    fn mul(self, rhs: &EquivariantClass) -> EquivariantClass {
        self.try_mul(rhs).expect("classes over the same data")
    }
}

impl Neg for &EquivariantClass {
    type Output = EquivariantClass;
    fn neg(self) -> EquivariantClass {
        self.map(|p| -p)
    }
}

/// The class `ũ` based at component `base`:
/// `ũ|_{F'} = ω_{F'} g + (φ(base) − φ(F')) t`.
pub fn u_tilde(data: &FixedPointData, base: usize) -> EquivariantClass {
    let phi0 = &data.component(base).moment;
    let rs = data
        .components()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let env = data.env(k);
            let g = GradedPoly::var(env, data.generator(k)).expect("generator is in env");
            let t = GradedPoly::var(env, T).expect("t is in env");
            let omega = Coeff::from_integer(BigInt::from(c.omega_class));
            &g.scale(&omega) + &t.scale(&(phi0 - &c.moment))
        })
        .collect();
    EquivariantClass::new(data, rs).expect("built in component environments")
}

/// `c^{S¹}(M)`, restricting to `c(F) · c^{S¹}(N_F)` at each component.
pub fn equivariant_total_chern(data: &FixedPointData) -> EquivariantClass {
    let rs = data
        .components()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let env = data.env(k);
            c.tangent_chern(env)
                .mul_truncated(&c.equivariant_chern_normal(env), &data.truncation(k))
                .expect("same environment")
        })
        .collect();
    EquivariantClass::new(data, rs).expect("built in component environments")
}

/// `c_k^{S¹}(M)`, the degree-`2k` part of the total equivariant Chern class.
pub fn chern_class(data: &FixedPointData, k: u32) -> EquivariantClass {
    equivariant_total_chern(data).homogeneous_part(2 * k)
}
