use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use super::{Coeff, Env, GradedPoly, PolyError, Truncation};

/// `t^shift · poly`, where `t` is a distinguished variable of the
/// environment and `poly` is an ordinary polynomial.
///
/// Normalized so that some term of `poly` has `t`-exponent zero; only `t`
/// ever carries negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    poly: GradedPoly,
    t: usize,
    shift: i64,
}

impl LaurentPoly {
    pub fn from_poly(poly: GradedPoly, t_name: &str) -> Result<Self, PolyError> {
        let t = poly.env().index_of(t_name)?;
        Ok(Self { poly, t, shift: 0 }.normalized())
    }

    pub fn zero(env: &Env, t_name: &str) -> Result<Self, PolyError> {
        Self::from_poly(GradedPoly::zero(env), t_name)
    }

    /// `c · t^k` for any integer `k`.
    pub fn t_power(env: &Env, t_name: &str, c: Coeff, k: i64) -> Result<Self, PolyError> {
        let one = GradedPoly::constant(env, c);
        let mut out = Self::from_poly(one, t_name)?;
        if !out.poly.is_zero() {
            out.shift = k;
        }
        Ok(out)
    }

    fn normalized(mut self) -> Self {
        if self.poly.is_zero() {
            self.shift = 0;
            return self;
        }
        let t = self.t;
        let low = self.poly.terms.keys().map(|m| m[t]).min().unwrap_or(0);
        if low > 0 {
            self.poly.terms = std::mem::take(&mut self.poly.terms)
                .into_iter()
                .map(|(mut m, c)| {
                    m[t] -= low;
                    (m, c)
                })
                .collect();
            self.shift += i64::from(low);
        }
        self
    }

    pub fn env(&self) -> &Env {
        self.poly.env()
    }

    pub fn t_name(&self) -> &str {
        self.poly.env().vars()[self.t].name()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Terms with the true (possibly negative) exponent of `t`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<i64>, &Coeff)> {
        let t = self.t;
        let shift = self.shift;
        self.poly.terms().map(move |(m, c)| {
            let exps = m
                .iter()
                .enumerate()
                .map(|(k, e)| i64::from(*e) + if k == t { shift } else { 0 })
                .collect();
            (exps, c)
        })
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.t != other.t {
            return Err(PolyError::EnvironmentMismatch {
                left: self.t_name().to_string(),
                right: other.t_name().to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(Self {
            poly: self.poly.try_mul(&other.poly)?,
            t: self.t,
            shift: self.shift + other.shift,
        }
        .normalized())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.shift.min(other.shift);
        let t_name = self.t_name().to_string();
        let a = self.poly.shift(&t_name, (self.shift - low) as u32)?;
        let b = other.poly.shift(&t_name, (other.shift - low) as u32)?;
        Ok(Self {
            poly: a.try_add(&b)?,
            t: self.t,
            shift: low,
        }
        .normalized())
    }

    pub fn neg(&self) -> Self {
        Self {
            poly: -&self.poly,
            t: self.t,
            shift: self.shift,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self {
            poly: self.poly.scale(c),
            t: self.t,
            shift: self.shift,
        }
        .normalized()
    }

    /// Reduction modulo a truncation ideal in the non-`t` variables.
    pub fn truncate_all(&self, trunc: &Truncation) -> Result<Self, PolyError> {
        if trunc.entries().iter().any(|(n, _)| n == self.t_name()) {
            return Err(PolyError::UnknownVariable(format!(
                "{} cannot be truncated in a Laurent expansion",
                self.t_name()
            )));
        }
        Ok(Self {
            poly: self.poly.truncate_all(trunc)?,
            t: self.t,
            shift: self.shift,
        }
        .normalized())
    }

    /// Terms whose exponent of `name` (not `t`) equals `power`, with that
    /// variable removed.
    pub fn coefficient_of(&self, name: &str, power: u32) -> Result<Self, PolyError> {
        Ok(Self {
            poly: self.poly.coefficient_of(name, power)?,
            t: self.t,
            shift: self.shift,
        }
        .normalized())
    }

    /// Coefficients by `t`-exponent, provided no other variable appears.
    pub fn pure_t_terms(&self) -> Option<BTreeMap<i64, Coeff>> {
        let t = self.t;
        let mut out = BTreeMap::new();
        for (m, c) in self.poly.terms() {
            if m.iter().enumerate().any(|(k, e)| k != t && *e != 0) {
                return None;
            }
            out.insert(i64::from(m[t]) + self.shift, c.clone());
        }
        Some(out)
    }

    /// Inverse of `c · t^d · (1 + ν)` where every term of `ν` contains a
    /// variable bounded by `nilpotent`. The geometric series in `−ν`
    /// terminates modulo the truncation; `self · inverse ≡ 1` there.
    pub fn invert(&self, nilpotent: &Truncation) -> Result<Self, PolyError> {
        let bounds = nilpotent.resolve(self.env())?;
        if bounds.iter().any(|(k, _)| *k == self.t) {
            return Err(PolyError::DivergentExpansion(self.t_name().to_string()));
        }
        let reduced = self.truncate_all(nilpotent)?;
        let free_of_nilpotents = |m: &Vec<u32>| bounds.iter().all(|(k, _)| m[*k] == 0);
        let pure: Vec<(&Vec<u32>, &Coeff)> = reduced
            .poly
            .terms()
            .filter(|(m, _)| free_of_nilpotents(m))
            .collect();
        let (lead_m, lead_c) = match pure.as_slice() {
            [] => return Err(PolyError::SingularEuler),
            [one] => *one,
            [_, second, ..] => {
                let witness = GradedPoly::monomial(self.env(), second.0.clone(), Coeff::one());
                return Err(PolyError::DivergentExpansion(witness.to_string()));
            }
        };
        if lead_m
            .iter()
            .enumerate()
            .any(|(k, e)| k != self.t && *e != 0)
        {
            let witness = GradedPoly::monomial(self.env(), lead_m.clone(), Coeff::one());
            return Err(PolyError::DivergentExpansion(witness.to_string()));
        }
        let lead_pow = i64::from(lead_m[self.t]) + reduced.shift;
        let lead_inv = lead_c.recip();
        let t_name = self.t_name().to_string();
        let env = self.env().clone();
        let lead = Self::t_power(&env, &t_name, lead_c.clone(), lead_pow)?;
        let inv_lead = Self::t_power(&env, &t_name, lead_inv.clone(), -lead_pow)?;
        // ν = (p − lead) / lead
        let nu = reduced.sub(&lead)?.mul(&inv_lead)?;
        let neg_nu = nu.neg();
        let mut term = Self::t_power(&env, &t_name, Coeff::one(), 0)?;
        let mut sum = Self::zero(&env, &t_name)?;
        while !term.is_zero() {
            sum = sum.add(&term)?;
            term = term.mul(&neg_nu)?.truncate_all(nilpotent)?;
        }
        sum.mul(&inv_lead)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let env = self.env().clone();
        let mut terms: Vec<(Vec<i64>, Coeff)> = self.terms().map(|(m, c)| (m, c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| {
            let wa: i64 = a.iter().sum();
            let wb: i64 = b.iter().sum();
            wa.cmp(&wb).then_with(|| b.cmp(a))
        });
        for (k, (m, c)) in terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let bare = m.iter().all(|e| *e == 0);
            super::display::write_coeff_abs(f, c, bare)?;
            let mut first = true;
            for (v, e) in env.vars().iter().zip(m) {
                if *e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(v.name())?;
                if *e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
