use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Case, Classification};
use crate::fixeddata::{equivariant_total_chern, EquivariantClass, FixedPointData, T};
use crate::localization::basis_alpha;
use crate::polyring::{Coeff, Env, GradedPoly, Truncation, Variable};
use crate::{Error, Result};

fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

/// Rewrite rule `var^power -> replacement`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Rule {
    var: usize,
    power: u32,
    replacement: GradedPoly,
}

/// Generators, relations and a normal form for an integral cohomology ring.
///
/// The rewrite rules are the relations solved for their leading monomials
/// in graded reverse lexicographic order; those leading monomials are
/// pairwise coprime, so the rules reduce every polynomial to a unique
/// combination of standard monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    env: Env,
    relations: Vec<GradedPoly>,
    rules: Vec<Rule>,
}

impl RingPresentation {
    fn new(env: Env, relations: Vec<GradedPoly>, leads: &[(&str, u32)]) -> Result<Self> {
        let mut rules = Vec::new();
        for (rel, (name, power)) in relations.iter().zip(leads) {
            let var = env.index_of(name)?;
            let mut exps = vec![0; env.len()];
            exps[var] = *power;
            let lead = GradedPoly::monomial(&env, exps, Coeff::one());
            if rel.coeff(&lead_exps(&env, var, *power)) != Coeff::one() {
                return Err(Error::Inconsistency(format!(
                    "relation {rel} is not monic in {name}^{power}"
                )));
            }
            rules.push(Rule {
                var,
                power: *power,
                replacement: &lead - rel,
            });
        }
        Ok(Self {
            env,
            relations,
            rules,
        })
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn generators(&self) -> Vec<(String, u32)> {
        self.env
            .vars()
            .iter()
            .map(|v| (v.name().to_string(), v.degree()))
            .collect()
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn is_equivariant(&self) -> bool {
        self.env.index_of(T).is_ok()
    }

    /// Repeatedly rewrites leading monomials until none remains.
    pub fn normal_form(&self, p: &GradedPoly) -> GradedPoly {
        let mut current = p.clone();
        loop {
            let hit = current.terms().find_map(|(m, c)| {
                self.rules
                    .iter()
                    .find(|r| m[r.var] >= r.power)
                    .map(|r| (m.clone(), c.clone(), r))
            });
            let Some((m, c, rule)) = hit else {
                return current;
            };
            let term = GradedPoly::monomial(&self.env, m.clone(), c.clone());
            let mut rest = m;
            rest[rule.var] -= rule.power;
            let replaced = &GradedPoly::monomial(&self.env, rest, c) * &rule.replacement;
            current = &(&current - &term) + &replaced;
        }
    }

    /// Number of standard monomials in each even degree `0, 2, …, 2·max_half`.
    pub fn graded_ranks(&self, max_half: u32) -> Vec<usize> {
        let degrees: Vec<u32> = self.env.vars().iter().map(|v| v.degree() / 2).collect();
        let mut ranks = vec![0usize; max_half as usize + 1];
        let mut exps = vec![0u32; degrees.len()];
        self.count(&degrees, 0, 0, max_half, &mut exps, &mut ranks);
        ranks
    }

    fn count(
        &self,
        degrees: &[u32],
        k: usize,
        used: u32,
        max: u32,
        exps: &mut Vec<u32>,
        ranks: &mut [usize],
    ) {
        if k == degrees.len() {
            if !self.rules.iter().any(|r| exps[r.var] >= r.power) {
                ranks[used as usize] += 1;
            }
            return;
        }
        let mut e = 0;
        while used + e * degrees[k] <= max {
            exps[k] = e;
            self.count(degrees, k + 1, used + e * degrees[k], max, exps, ranks);
            e += 1;
        }
        exps[k] = 0;
    }

    /// Checks that the relations vanish on the given generator images,
    /// restricted to every component.
    fn verify_on(&self, data: &FixedPointData, images: &[EquivariantClass]) -> Result<()> {
        for (k, comp) in data.components().iter().enumerate() {
            let at_k: Vec<GradedPoly> = images.iter().map(|c| c.restriction(k).clone()).collect();
            for rel in &self.relations {
                let value = rel
                    .compose(data.env(k), &at_k)?
                    .truncate_all(&data.truncation(k))?;
                if !value.is_zero() {
                    return Err(Error::Inconsistency(format!(
                        "relation {rel} restricts to {value} at {}",
                        comp.name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn lead_exps(env: &Env, var: usize, power: u32) -> Vec<u32> {
    let mut e = vec![0; env.len()];
    e[var] = power;
    e
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.env.vars().iter().map(|v| v.name()).collect();
        write!(f, "Z[{}]/", names.join(","))?;
        match self.relations.as_slice() {
            [single] if single.len() == 1 => write!(f, "{single}"),
            rels => {
                let parts: Vec<String> = rels.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

fn ring_env(n: u32, case_b: bool, equivariant: bool) -> Env {
    let mut vars = vec![Variable::new("x", 2).expect("valid")];
    if case_b {
        vars.push(Variable::new("y", n + 1).expect("n is odd in Case B"));
    }
    if equivariant {
        vars.push(Variable::new(T, 2).expect("valid"));
    }
    Env::new(vars).expect("distinct names")
}

fn accepted_case(cls: &Classification) -> Result<bool> {
    match cls.case {
        Case::A => Ok(false),
        Case::B => Ok(true),
        Case::Rejected(_) => Err(Error::NotApplicable(
            "data was rejected by the classifier".into(),
        )),
    }
}

/// Equivariant and ordinary presentations of the cohomology of the total
/// space. The equivariant relations are checked on the restrictions of the
/// basis classes `x = α_1` (and `y = α_{i+1}` in Case B).
pub fn total_ring(
    data: &FixedPointData,
    cls: &Classification,
) -> Result<(RingPresentation, RingPresentation)> {
    let case_b = accepted_case(cls)?;
    let n = data.half_dim();
    let (i, j) = (cls.i, cls.j);
    let eq_env = ring_env(n, case_b, true);
    let ord_env = ring_env(n, case_b, false);
    let x = GradedPoly::var(&eq_env, "x")?;
    let t = GradedPoly::var(&eq_env, T)?;
    let basis = basis_alpha(data)?;
    let (equivariant, ordinary, images) = if !case_b {
        let rel = &x.pow(i + 1) * &(&x + &t).pow(j + 1);
        let eq = RingPresentation::new(eq_env.clone(), vec![rel], &[("x", n + 1)])?;
        let ox = GradedPoly::var(&ord_env, "x")?;
        let ord = RingPresentation::new(ord_env, vec![ox.pow(n + 1)], &[("x", n + 1)])?;
        (eq, ord, vec![basis[1].clone(), EquivariantClass::t(data)])
    } else {
        let y = GradedPoly::var(&eq_env, "y")?;
        let two_t = t.scale(&int(2));
        let h = (&(&x + &two_t).pow(i + 1) - &x.pow(i + 1))
            .scale(&Coeff::new(BigInt::from(1), BigInt::from(2)));
        let r1 = &x.pow(i + 1) - &y.scale(&int(2));
        let r2 = &y * &(&y + &h);
        if !r2.is_integral() {
            return Err(Error::Inconsistency(format!(
                "relation {r2} is not integral"
            )));
        }
        let eq = RingPresentation::new(eq_env.clone(), vec![r1, r2], &[("x", i + 1), ("y", 2)])?;
        let ox = GradedPoly::var(&ord_env, "x")?;
        let oy = GradedPoly::var(&ord_env, "y")?;
        let ord = RingPresentation::new(
            ord_env,
            vec![&ox.pow(i + 1) - &oy.scale(&int(2)), oy.pow(2)],
            &[("x", i + 1), ("y", 2)],
        )?;
        let images = vec![
            basis[1].clone(),
            basis[i as usize + 1].clone(),
            EquivariantClass::t(data),
        ];
        (eq, ord, images)
    };
    equivariant.verify_on(data, &images)?;
    Ok((equivariant, ordinary))
}

/// `c^{S¹}(M)` built from the data, checked against the closed form in
/// `x = α_1`, and the ordinary total Chern class as a series in `x`:
/// `(1+x)^{n+1}` in Case A, `(1+x)^{n+2}/(1+2x)` in Case B.
///
/// In Case B the closed form has the denominator `1 + 2x + 2t`; the check
/// multiplies it across instead of dividing.
pub fn total_chern(
    data: &FixedPointData,
    cls: &Classification,
) -> Result<(EquivariantClass, GradedPoly)> {
    let case_b = accepted_case(cls)?;
    let n = data.half_dim();
    let (i, j) = (cls.i, cls.j);
    let built = equivariant_total_chern(data);
    let basis = basis_alpha(data)?;
    let x = &basis[1];
    let one = EquivariantClass::from_int(data, 1);
    let t = EquivariantClass::t(data);
    let (lhs, rhs) = if !case_b {
        let closed = &(&one + x).pow(i + 1) * &(&(&one + x) + &t).pow(j + 1);
        (built.clone(), closed)
    } else {
        let two_t = t.scale(&int(2));
        let num =
            &(&(&one + x).pow(i + 1) * &(&(&one + x) + &two_t).pow(i + 1)) * &(&(&one + x) + &t);
        let den = &(&one + &x.scale(&int(2))) + &two_t;
        (&built * &den, num)
    };
    for (k, comp) in data.components().iter().enumerate() {
        if lhs.restriction(k) != rhs.restriction(k) {
            return Err(Error::ChernMismatch {
                component: comp.name.clone(),
                from_data: lhs.restriction(k).to_string(),
                closed_form: rhs.restriction(k).to_string(),
            });
        }
    }
    let env = Env::degree_two(&["x"]);
    let one_plus_x = GradedPoly::univariate(&env, "x", &[int(1), int(1)])?;
    let trunc = Truncation::single("x", n);
    let ordinary = if !case_b {
        one_plus_x.pow_truncated(n + 1, &trunc)?
    } else {
        let den = GradedPoly::univariate(&env, "x", &[int(1), int(2)])?;
        GradedPoly::series_div(&one_plus_x.pow(n + 2), &den, &trunc)?
    };
    if !ordinary.is_integral() {
        return Err(Error::Inconsistency(format!(
            "c(M) = {ordinary} is not integral"
        )));
    }
    Ok((built, ordinary))
}
