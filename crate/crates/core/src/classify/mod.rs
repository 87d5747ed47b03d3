//! Classification of two-component minimal data into projective-space type
//! (Case A, semifree) and quadric type (Case B), with every equality the
//! classification forces checked and reported.

mod bounds;
mod partner;
mod ring;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::fixeddata::{validate, CheckStatus, FixedComponent, FixedPointData, RationalDisplay};
use crate::localization::{check_euler_formula, tw_quotient_check};
use crate::models::quadric_isotropy_chern;
use crate::polyring::{Coeff, Env, GradedPoly};
use crate::Error;

pub use bounds::{
    euler_characteristic, euler_characteristic_check, subbundle_chern_bounds, EulerCharacteristic,
};
pub use partner::{derive_codim2_partner, Codim2Partner};
pub use ring::{total_chern, total_ring, RingPresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Case {
    A,
    B,
    Rejected(Vec<String>),
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::A => f.write_str("Case A"),
            Case::B => f.write_str("Case B"),
            Case::Rejected(_) => f.write_str("Rejected"),
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
    /// Offending polynomial difference, when the check compares polynomials.
    pub witness: Option<String>,
}

impl CheckReport {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Fail,
            detail: detail.into(),
            witness: None,
        }
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Skipped,
            detail: detail.into(),
            witness: None,
        }
    }

    fn from_problems(
        name: &'static str,
        problems: Vec<(String, Option<String>)>,
        ok: impl Into<String>,
    ) -> Self {
        if problems.is_empty() {
            return Self::pass(name, ok);
        }
        let witness = problems.iter().find_map(|(_, w)| w.clone());
        let detail = problems
            .into_iter()
            .map(|(d, _)| d)
            .collect::<Vec<_>>()
            .join("; ");
        Self {
            name,
            status: CheckStatus::Fail,
            detail,
            witness,
        }
    }

    fn from_result(name: &'static str, r: Result<bool, Error>, ok: &str, bad: &str) -> Self {
        match r {
            Ok(true) => Self::pass(name, ok),
            Ok(false) => Self::fail(name, bad),
            Err(Error::NotApplicable(why)) => Self::skipped(name, why),
            Err(e) => Self::fail(name, e.to_string()),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "witness": self.witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: Case,
    /// Half-dimensions of the minimum and the maximum.
    pub i: u32,
    pub j: u32,
    /// Moment gap `φ(Y) − φ(X)`.
    pub m: Option<Coeff>,
    pub reports: Vec<CheckReport>,
}

impl Classification {
    pub fn is_accepted(&self) -> bool {
        matches!(self.case, Case::A | Case::B)
    }

    /// The first failing check, which is the primary rejection reason.
    pub fn rejected_by(&self) -> Option<&'static str> {
        match self.case {
            Case::Rejected(_) => self.reports.iter().find(|r| r.failed()).map(|r| r.name),
            _ => None,
        }
    }

    pub fn report(&self, name: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Value {
        let (case, reasons) = match &self.case {
            Case::A => ("A", vec![]),
            Case::B => ("B", vec![]),
            Case::Rejected(r) => ("Rejected", r.clone()),
        };
        json!({
            "case": case,
            "reasons": reasons,
            "rejected_by": self.rejected_by(),
            "i": self.i,
            "j": self.j,
            "m": self.m.as_ref().map(|m| RationalDisplay(m).to_string()),
            "checks": self.reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.case)?;
        if let Case::Rejected(reasons) = &self.case {
            write!(f, ": {}", reasons.join("; "))?;
        }
        writeln!(f)?;
        if let Some(m) = &self.m {
            writeln!(
                f,
                "  i = {}, j = {}, m = {}",
                self.i,
                self.j,
                RationalDisplay(m)
            )?;
        }
        for r in &self.reports {
            write!(
                f,
                "  {:<24} {:<7} {}",
                r.name,
                r.status.to_string(),
                r.detail
            )?;
            if let Some(w) = &r.witness {
                write!(f, "  [difference: {w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sorts `data` into Case A, Case B, or a rejection. Never fails: every
/// problem is a failing report, and the first one is the primary reason.
pub fn classify(data: &FixedPointData) -> Classification {
    let validation = validate(data);
    let (fatal_kind, other): (Vec<_>, Vec<_>) = validation.checks.iter().partition(|c| c.fatal);
    let as_report = |c: &crate::fixeddata::ValidationCheck| CheckReport {
        name: c.name,
        status: c.status,
        detail: c.detail.clone(),
        witness: None,
    };
    let mut reports: Vec<CheckReport> = fatal_kind.iter().map(|c| as_report(c)).collect();
    let mut out = Classification {
        case: Case::Rejected(vec![]),
        i: 0,
        j: 0,
        m: None,
        reports: vec![],
    };

    if validation.has_fatal() {
        out.case = Case::Rejected(
            validation
                .fatal_failures()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect(),
        );
        out.reports = reports;
        return out;
    }

    if data.len() != 2 {
        let why = format!(
            "out of classification scope: {} fixed components",
            data.len()
        );
        reports.push(CheckReport::fail("scope", why.clone()));
        out.case = Case::Rejected(vec![why]);
        out.reports = reports;
        return out;
    }
    reports.push(CheckReport::pass("scope", "two fixed components"));
    reports.extend(other.iter().map(|c| as_report(c)));

    let (x, y) = (data.component(0), data.component(1));
    out.i = x.top();
    out.j = y.top();
    let m = &y.moment - &x.moment;
    out.m = Some(m.clone());

    let semifree = data
        .components()
        .iter()
        .flat_map(|c| &c.summands)
        .all(|s| s.weight.abs() == 1);
    if semifree {
        reports.push(semifree_chern_normal(data));
        reports.push(moment_gap("semifree-moment-gap", &m, 1));
    } else {
        reports.push(distinct_weights(data));
        reports.push(stabilizer_bound(data));
        reports.push(equal_dimension(x, y));
        reports.push(weight_symmetry(x, y));
        reports.push(moment_gap("nonsemifree-moment-gap", &m, 2));
        reports.push(z2_normal_chern(data));
        reports.push(z2_isotropy_chern(data));
    }
    reports.push(CheckReport::from_result(
        "euler-formula",
        check_euler_formula(data),
        "Euler classes match the product formula at both ends",
        "Euler class differs from the product formula",
    ));
    reports.push(CheckReport::from_result(
        "tw-quotient",
        tw_quotient_check(data),
        "u -> v + (phi(X) - phi(Y))t induces a ring isomorphism of the quotients",
        "the substitution does not respect the quotient relations",
    ));

    let failures: Vec<String> = reports
        .iter()
        .filter(|r| r.failed())
        .map(|r| format!("{}: {}", r.name, r.detail))
        .collect();
    out.case = if !failures.is_empty() {
        Case::Rejected(failures)
    } else if semifree {
        Case::A
    } else {
        Case::B
    };
    out.reports = reports;
    out
}

fn moment_gap(name: &'static str, m: &Coeff, expected: i64) -> CheckReport {
    if *m == Coeff::from_integer(BigInt::from(expected)) {
        CheckReport::pass(name, format!("m = {expected}"))
    } else {
        CheckReport::fail(
            name,
            format!("m = {}, expected {expected}", RationalDisplay(m)),
        )
    }
}

/// `(1 + g)^e` in the ring of `comp`.
fn one_plus_gen_pow(comp: &FixedComponent, env: &Env, e: u32) -> GradedPoly {
    let g = GradedPoly::var(env, env.vars()[0].name()).expect("generator is in env");
    (&GradedPoly::one(env) + &g)
        .pow_truncated(e, &comp.truncation(env))
        .expect("same environment")
}

fn compare(
    label: String,
    actual: &GradedPoly,
    expected: &GradedPoly,
) -> Option<(String, Option<String>)> {
    if actual == expected {
        None
    } else {
        Some((
            format!("{label}: data gives {actual}, expected {expected}"),
            Some((actual - expected).to_string()),
        ))
    }
}

fn semifree_chern_normal(data: &FixedPointData) -> CheckReport {
    let (x, y) = (data.component(0), data.component(1));
    let mut problems = Vec::new();
    for (k, comp, other) in [(0, x, y), (1, y, x)] {
        let env = data.env(k);
        let expected = one_plus_gen_pow(comp, env, other.top() + 1);
        problems.extend(compare(
            format!("c(N_{})", comp.name),
            &comp.chern_normal(env),
            &expected,
        ));
    }
    CheckReport::from_problems(
        "semifree-chern-normal",
        problems,
        "c(N_X) = (1+u)^(j+1), c(N_Y) = (1+v)^(i+1)",
    )
}

/// Total rank per absolute weight.
fn weight_ranks(comp: &FixedComponent) -> BTreeMap<i64, u32> {
    let mut out = BTreeMap::new();
    for s in &comp.summands {
        *out.entry(s.weight).or_insert(0) += s.rank;
    }
    out
}

fn distinct_weights(data: &FixedPointData) -> CheckReport {
    let mut problems = Vec::new();
    for comp in data.components() {
        let keys: Vec<i64> = weight_ranks(comp)
            .keys()
            .map(|w| w.abs())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = keys.len() as i64;
        if keys != (1..=n).collect::<Vec<_>>() {
            problems.push((
                format!(
                    "distinct weights at {} are {:?}, not {{1..{n}}}",
                    comp.name, keys
                ),
                None,
            ));
        }
    }
    CheckReport::from_problems("distinct-weights", problems, "distinct weights are {1..N}")
}

fn stabilizer_bound(data: &FixedPointData) -> CheckReport {
    let top = data
        .components()
        .iter()
        .flat_map(|c| &c.summands)
        .map(|s| s.weight.abs())
        .max()
        .unwrap_or(0);
    if top <= 2 {
        CheckReport::pass("stabilizer-bound", format!("largest weight {top}"))
    } else {
        CheckReport::fail(
            "stabilizer-bound",
            format!("weight {top} gives stabilizer Z_{top}; only Z_2 can occur"),
        )
    }
}

fn equal_dimension(x: &FixedComponent, y: &FixedComponent) -> CheckReport {
    if x.dim == y.dim {
        CheckReport::pass("equal-dimension", format!("dim X = dim Y = {}", x.dim))
    } else {
        CheckReport::fail(
            "equal-dimension",
            format!("dim X = {} but dim Y = {}", x.dim, y.dim),
        )
    }
}

fn weight_symmetry(x: &FixedComponent, y: &FixedComponent) -> CheckReport {
    let xi_x = weight_ranks(x);
    let neg_y: BTreeMap<i64, u32> = weight_ranks(y).into_iter().map(|(w, r)| (-w, r)).collect();
    if xi_x == neg_y {
        CheckReport::pass("weight-symmetry", "Xi_X = -Xi_Y")
    } else {
        CheckReport::fail(
            "weight-symmetry",
            format!("Xi_X = {:?} but -Xi_Y = {:?} (weight: rank)", xi_x, neg_y),
        )
    }
}

fn summands_with(comp: &FixedComponent, weight: i64) -> Vec<&crate::fixeddata::WeightSummand> {
    comp.summands
        .iter()
        .filter(|s| s.weight == weight)
        .collect()
}

fn z2_normal_chern(data: &FixedPointData) -> CheckReport {
    let mut problems = Vec::new();
    for (k, sign) in [(0usize, 1i64), (1, -1)] {
        let comp = data.component(k);
        let env = data.env(k);
        let parts = summands_with(comp, sign);
        match parts.as_slice() {
            [s] if s.rank == 1 => {
                problems.extend(compare(
                    format!("weight {sign} summand at {}", comp.name),
                    &s.chern_poly(env, comp.dim),
                    &one_plus_gen_pow(comp, env, 1),
                ));
            }
            [s] => problems.push((
                format!(
                    "weight {sign} summand at {} has rank {}, expected 1",
                    comp.name, s.rank
                ),
                None,
            )),
            _ => problems.push((
                format!("no single weight {sign} summand at {}", comp.name),
                None,
            )),
        }
    }
    CheckReport::from_problems(
        "z2-normal-chern",
        problems,
        "weight-1 summands are line bundles with c = 1 + u",
    )
}

fn z2_isotropy_chern(data: &FixedPointData) -> CheckReport {
    let mut problems = Vec::new();
    for (k, sign) in [(0usize, 2i64), (1, -2)] {
        let comp = data.component(k);
        let env = data.env(k);
        let parts = summands_with(comp, sign);
        let Some(s) = parts.first() else {
            problems.push((format!("no weight {sign} summand at {}", comp.name), None));
            continue;
        };
        if s.rank != comp.top() {
            problems.push((
                format!(
                    "weight {sign} summand at {} has rank {}, expected {}",
                    comp.name,
                    s.rank,
                    comp.top()
                ),
                None,
            ));
            continue;
        }
        match quadric_isotropy_chern(comp.top()) {
            Ok(coeffs) => {
                let expected = crate::fixeddata::WeightSummand::new(sign, s.rank, coeffs)
                    .chern_poly(env, comp.dim);
                problems.extend(compare(
                    format!("weight {sign} summand at {}", comp.name),
                    &s.chern_poly(env, comp.dim),
                    &expected,
                ));
            }
            Err(e) => problems.push((e.to_string(), None)),
        }
    }
    CheckReport::from_problems(
        "z2-isotropy-chern",
        problems,
        "weight-2 summands have c = (1+u)^(i+1)/(1+2u)",
    )
}
