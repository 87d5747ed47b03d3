use num_bigint::BigInt;
use num_traits::One;

use crate::fixeddata::{FixedComponent, WeightSummand, T};
use crate::polyring::{Coeff, Env, GradedPoly, Truncation};
use crate::{Error, Result};

/// The component forced opposite a fixed component `X` whose partner has
/// codimension two: its cohomology is `H^*_{S¹}(X)/e^{S¹}(N_X)`, its normal
/// bundle has Euler class the image of `t`, and `c(Y)` is the image of
/// `c(X) c^{S¹}(N_X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codim2Partner {
    /// `[u, t]` with `u` the generator of `X`.
    pub env: Env,
    /// `u^{i+1}` and `e^{S¹}(N_X)`.
    pub relations: Vec<GradedPoly>,
    /// Betti numbers `b_0, b_2, …` of the partner.
    pub ranks: Vec<usize>,
    /// Normal form of `t`.
    pub normal_euler: GradedPoly,
    /// Normal form of `c(X) c^{S¹}(N_X)`.
    pub chern: GradedPoly,
    pub moment: Coeff,
    pub dim: u32,
    source_top: u32,
    normal_rank: u32,
}

impl Codim2Partner {
    /// Reduces modulo `u^{i+1}` and the monic-in-`t` Euler class.
    pub fn normal_form(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let trunc = Truncation::single(self.env.vars()[0].name(), self.source_top);
        let (_, rem) = p.div_rem_leading(&self.relations[1], T, &trunc)?;
        Ok(rem)
    }

    /// The partner as a fixed component named `Y`, with generator `v` and
    /// its normal bundle a line bundle of weight `−1`.
    ///
    /// The quotient is a truncated polynomial ring in one generator when `X`
    /// is a point (generator `t`) or the normal bundle of `X` is a line
    /// bundle (generator `u`); other shapes are rejected.
    pub fn to_component(&self) -> Result<FixedComponent> {
        let (generator, top) = if self.source_top == 0 {
            (T.to_string(), self.normal_rank - 1)
        } else if self.normal_rank == 1 {
            (self.env.vars()[0].name().to_string(), self.source_top)
        } else {
            return Err(Error::UnsupportedPartner(format!(
                "quotient by u^{} and a degree-{} relation in t is not a truncated polynomial ring",
                self.source_top + 1,
                self.normal_rank
            )));
        };
        let coeff_of = |p: &GradedPoly, k: u32| -> Result<i64> {
            let coeffs = p.univariate_coeffs(&generator).map_err(|_| {
                Error::UnsupportedPartner(format!(
                    "normal form {p} is not a polynomial in {generator}"
                ))
            })?;
            let c = coeffs.get(k as usize).cloned().unwrap_or_default();
            if !c.is_integer() {
                return Err(Error::UnsupportedPartner(format!(
                    "coefficient {c} is not integral"
                )));
            }
            i64::try_from(c.to_integer())
                .map_err(|_| Error::UnsupportedPartner("coefficient overflow".into()))
        };

        let e1 = coeff_of(&self.normal_euler, 1)?;
        let chern_normal = if top == 0 { vec![1] } else { vec![1, e1] };
        let total: Vec<i64> = (0..=top)
            .map(|k| coeff_of(&self.chern, k))
            .collect::<Result<_>>()?;
        // the image of c(X) c^{S¹}(N_X) is c(Y), which must be (1+v)^{top+1}
        let env = Env::degree_two(&["v"]);
        let v = GradedPoly::var(&env, "v")?;
        let tangent =
            (&GradedPoly::one(&env) + &v).pow_truncated(top + 1, &Truncation::single("v", top))?;
        let image = GradedPoly::univariate(
            &env,
            "v",
            &total
                .iter()
                .map(|c| Coeff::from_integer(BigInt::from(*c)))
                .collect::<Vec<_>>(),
        )?;
        if tangent != image {
            return Err(Error::UnsupportedPartner(format!(
                "c(Y) = {image} is not (1+v)^{}",
                top + 1
            )));
        }
        Ok(FixedComponent::new(
            "Y",
            2 * top,
            self.moment.clone(),
            vec![WeightSummand::new(-1, 1, chern_normal)],
        ))
    }
}

/// Derives the partner of `x` inside a manifold of dimension `dim_m`,
/// assuming the partner has codimension two. Every weight on `N_X` must
/// be `+1`.
pub fn derive_codim2_partner(x: &FixedComponent, dim_m: u32) -> Result<Codim2Partner> {
    if x.dim >= dim_m || !dim_m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "component of dimension {} in a manifold of dimension {dim_m}",
            x.dim
        )));
    }
    if let Some(s) = x.summands.iter().find(|s| s.weight != 1) {
        return Err(Error::UnsupportedPartner(format!(
            "weight {} on N_{}: the codimension-two partner needs all weights +1",
            s.weight, x.name
        )));
    }
    let d = x.normal_rank();
    if 2 * d != dim_m - x.dim {
        return Err(Error::InvalidParameter(format!(
            "normal rank {d} does not fill dimension {dim_m}"
        )));
    }
    let env = Env::degree_two(&["u", T]);
    let i = x.top();
    let trunc = x.truncation(&env);
    let u = GradedPoly::var(&env, "u")?;
    let t = GradedPoly::var(&env, T)?;
    let euler = x.equivariant_euler(&env);
    let relations = vec![u.pow(i + 1), euler];

    let mut ranks = vec![0usize; (i + d) as usize];
    for a in 0..=i {
        for b in 0..d {
            ranks[(a + b) as usize] += 1;
        }
    }
    let mut partner = Codim2Partner {
        env: env.clone(),
        relations,
        ranks,
        normal_euler: GradedPoly::zero(&env),
        chern: GradedPoly::zero(&env),
        moment: &x.moment + &Coeff::one(),
        dim: 2 * (i + d - 1),
        source_top: i,
        normal_rank: d,
    };
    let full = x
        .tangent_chern(&env)
        .mul_truncated(&x.equivariant_chern_normal(&env), &trunc)?;
    partner.normal_euler = partner.normal_form(&t)?;
    partner.chern = partner.normal_form(&full)?;
    Ok(partner)
}
