use std::fmt;

use serde::Serialize;

use super::{FixedPointData, RationalDisplay};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Warn,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Warn => "warn",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    /// A fatal failure means the data cannot describe any action at all.
    pub fatal: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn get(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.get(name).map(|c| c.status)
    }

    pub fn fatal_failures(&self) -> impl Iterator<Item = &ValidationCheck> {
        self.checks
            .iter()
            .filter(|c| c.fatal && c.status == CheckStatus::Fail)
    }

    pub fn has_fatal(&self) -> bool {
        self.fatal_failures().next().is_some()
    }

    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skipped))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let fatal = if c.fatal && c.status == CheckStatus::Fail {
                " (fatal)"
            } else {
                ""
            };
            writeln!(f, "  {:<20} {}{}  {}", c.name, c.status, fatal, c.detail)?;
        }
        Ok(())
    }
}

struct Builder(Vec<ValidationCheck>);

impl Builder {
    fn push(&mut self, name: &'static str, fatal: bool, problems: Vec<String>, ok: String) {
        let (status, detail) = if problems.is_empty() {
            (CheckStatus::Pass, ok)
        } else {
            (CheckStatus::Fail, problems.join("; "))
        };
        self.0.push(ValidationCheck {
            name,
            status,
            fatal,
            detail,
        });
    }

    fn other(&mut self, name: &'static str, status: CheckStatus, detail: String) {
        self.0.push(ValidationCheck {
            name,
            status,
            fatal: false,
            detail,
        });
    }
}

/// Runs every structural and consistency check on `data`. Never fails;
/// problems are reported per check.
pub fn validate(data: &FixedPointData) -> ValidationReport {
    let mut b = Builder(Vec::new());
    let comps = data.components();

    b.push(
        "structure",
        true,
        structure_problems(data),
        "well-formed".into(),
    );

    let count_problems = if comps.len() < 2 {
        vec![format!(
            "{} component(s); a minimum and a maximum are required",
            comps.len()
        )]
    } else {
        vec![]
    };
    b.push(
        "component-count",
        true,
        count_problems,
        format!("{} components", comps.len()),
    );

    let rank_problems = comps
        .iter()
        .filter(|c| 2 * c.normal_rank() + c.dim != data.dim_m())
        .map(|c| {
            format!(
                "{}: normal rank {} but (dim M - dim F)/2 = {}",
                c.name,
                c.normal_rank(),
                (i64::from(data.dim_m()) - i64::from(c.dim)) / 2
            )
        })
        .collect();
    b.push(
        "rank-sum",
        true,
        rank_problems,
        "normal ranks match codimensions".into(),
    );

    let mut order_problems = Vec::new();
    if comps.len() >= 2 {
        let last = comps.len() - 1;
        if comps[0].moment >= comps[1].moment {
            order_problems.push(format!(
                "minimum not unique: {} and {} both at moment {}",
                comps[0].name,
                comps[1].name,
                RationalDisplay(&comps[0].moment)
            ));
        }
        if last > 1 && comps[last - 1].moment >= comps[last].moment {
            order_problems.push(format!(
                "maximum not unique: {} and {} both at moment {}",
                comps[last - 1].name,
                comps[last].name,
                RationalDisplay(&comps[last].moment)
            ));
        }
    }
    b.push(
        "moment-order",
        true,
        order_problems,
        "unique minimum and maximum".into(),
    );

    let mut sign_problems = Vec::new();
    if let (Some(first), Some(last)) = (comps.first(), comps.last()) {
        if comps.len() >= 2 {
            if first.summands.iter().any(|s| s.weight < 0) {
                sign_problems.push(format!(
                    "{} is the minimum but has a negative weight",
                    first.name
                ));
            }
            if last.summands.iter().any(|s| s.weight > 0) {
                sign_problems.push(format!(
                    "{} is the maximum but has a positive weight",
                    last.name
                ));
            }
        }
    }
    b.push(
        "weight-sign",
        true,
        sign_problems,
        "weights positive at the minimum, negative at the maximum".into(),
    );

    let g = data.weight_gcd();
    let eff = if g == 1 {
        vec![]
    } else {
        vec![format!("gcd of all weights is {g}")]
    };
    b.push("effectiveness", false, eff, "gcd of weights is 1".into());

    let lhs: u64 = comps.iter().map(|c| u64::from(c.dim) + 2).sum();
    let minimal = data.minimal_dimension();
    let min_problems = if minimal {
        vec![]
    } else {
        vec![format!(
            "sum of (dim F + 2) is {lhs}, dim M + 2 is {}",
            data.dim_m() + 2
        )]
    };
    b.push(
        "minimal-dimension",
        false,
        min_problems,
        format!("sum of (dim F + 2) = {lhs}"),
    );

    let mut index_problems = Vec::new();
    for (k, a) in comps.iter().enumerate() {
        for c in &comps[k + 1..] {
            if a.moment < c.moment && a.index() >= c.index() {
                index_problems.push(format!(
                    "{} lies below {} but has index {} >= {}",
                    a.name,
                    c.name,
                    a.index(),
                    c.index()
                ));
            }
        }
    }
    b.push(
        "index-order",
        false,
        index_problems,
        "index increases with the moment".into(),
    );

    if minimal {
        let mut cover = Vec::new();
        for i in 0..=data.half_dim() {
            let hits: Vec<&str> = comps
                .iter()
                .filter(|c| c.index() <= i && i <= c.index() + c.top())
                .map(|c| c.name.as_str())
                .collect();
            if hits.len() != 1 {
                cover.push(format!("degree {} covered by [{}]", 2 * i, hits.join(", ")));
            }
        }
        b.push(
            "index-coverage",
            false,
            cover,
            "each even degree comes from exactly one component".into(),
        );
    } else {
        b.other(
            "index-coverage",
            CheckStatus::Skipped,
            "minimal dimension fails".into(),
        );
    }

    if let Some(first) = comps.first() {
        let off: Vec<String> = comps
            .iter()
            .filter(|c| !(&c.moment - &first.moment).is_integer())
            .map(|c| format!("{} at {}", c.name, RationalDisplay(&c.moment)))
            .collect();
        if off.is_empty() {
            b.other(
                "moment-integrality",
                CheckStatus::Pass,
                "moment gaps are integers".into(),
            );
        } else {
            b.other(
                "moment-integrality",
                CheckStatus::Warn,
                format!(
                    "non-integral moment gaps ({}); the symplectic class is not primitive integral",
                    off.join(", ")
                ),
            );
        }
    }

    ValidationReport { checks: b.0 }
}

fn structure_problems(data: &FixedPointData) -> Vec<String> {
    let mut out = Vec::new();
    if data.dim_m() == 0 || !data.dim_m().is_multiple_of(2) {
        out.push(format!(
            "dim M = {} must be positive and even",
            data.dim_m()
        ));
    }
    for c in data.components() {
        if c.dim % 2 != 0 {
            out.push(format!("{}: dimension {} is odd", c.name, c.dim));
        }
        if c.dim >= data.dim_m() {
            out.push(format!(
                "{}: dimension {} is not below dim M",
                c.name, c.dim
            ));
        }
        if c.omega_class <= 0 {
            out.push(format!(
                "{}: omega_class {} must be positive",
                c.name, c.omega_class
            ));
        }
        if c.summands.is_empty() {
            out.push(format!("{}: no normal summands", c.name));
        }
        for s in &c.summands {
            if s.weight == 0 {
                out.push(format!("{}: weight 0 summand", c.name));
            }
            if s.rank == 0 {
                out.push(format!(
                    "{}: weight {} summand has rank 0",
                    c.name, s.weight
                ));
            }
            if s.chern.first() != Some(&1) {
                out.push(format!(
                    "{}: weight {} chern class must start with 1",
                    c.name, s.weight
                ));
            }
            let top = s
                .chern
                .iter()
                .enumerate()
                .take(c.top() as usize + 1)
                .filter(|(_, x)| **x != 0)
                .map(|(k, _)| k)
                .max()
                .unwrap_or(0);
            if top > s.rank as usize {
                out.push(format!(
                    "{}: weight {} chern class has degree {} above its rank {}",
                    c.name,
                    s.weight,
                    2 * top,
                    s.rank
                ));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &c.summands {
            if !seen.insert(s.weight) {
                out.push(format!("{}: weight {} listed twice", c.name, s.weight));
            }
        }
    }
    out
}
