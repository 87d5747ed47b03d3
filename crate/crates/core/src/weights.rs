//! Isotropy weight multisets: the closure condition `W = −W mod a` for
//! every weight `a`, and exhaustive searches confirming that it forces the
//! distinct weights to be `{1,…,N}` with `N ≤ 6` and fixed multiplicity
//! patterns.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::fixeddata::{CheckStatus, FixedComponent};
use crate::polyring::Coeff;
use crate::{Error, Result};

/// Distinct positive weights with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMultiset {
    entries: BTreeMap<u64, u64>,
}

impl WeightMultiset {
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (a, m) in pairs {
            if a == 0 || m == 0 {
                return Err(Error::InvalidParameter(format!(
                    "weights and multiplicities must be positive, got {a}:{m}"
                )));
            }
            if entries.insert(a, m).is_some() {
                return Err(Error::InvalidParameter(format!("weight {a} listed twice")));
            }
        }
        Ok(Self { entries })
    }

    /// Absolute weights of `N_F`, counted with rank.
    pub fn from_component(comp: &FixedComponent) -> Self {
        let mut entries = BTreeMap::new();
        for s in &comp.summands {
            *entries.entry(s.weight.unsigned_abs()).or_insert(0) += u64::from(s.rank);
        }
        Self { entries }
    }

    pub fn keys(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    pub fn multiplicity(&self, a: u64) -> u64 {
        self.entries.get(&a).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_key(&self) -> u64 {
        self.entries.keys().last().copied().unwrap_or(0)
    }

    pub fn gcd(&self) -> u64 {
        self.entries.keys().fold(0, |g, a| g.gcd(a))
    }

    pub fn scaled(&self, c: u64) -> Self {
        Self {
            entries: self.entries.iter().map(|(a, m)| (*a, m * c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|(a, m)| (a.to_string(), json!(m)))
            .collect();
        Value::Object(map)
    }
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(a, m)| format!("{a}:{m}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Parses `1:2,2:3` (braces and spaces optional).
impl FromStr for WeightMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, m) = item.split_once(':').ok_or_else(|| {
                Error::Parse(format!("expected weight:multiplicity, got `{item}`"))
            })?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight `{a}`")))?;
            let m = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity `{m}`")))?;
            pairs.push((a, m));
        }
        Self::new(pairs)
    }
}

fn residue_counts(w: &WeightMultiset, modulus: u64, negate: bool) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for (a, m) in &w.entries {
        let r = a % modulus;
        let r = if negate { (modulus - r) % modulus } else { r };
        *out.entry(r).or_insert(0) += m;
    }
    out
}

/// `W ≡ −W` modulo every key of `W`, as multisets of residues.
pub fn closure_check(w: &WeightMultiset) -> bool {
    first_closure_failure(w).is_none()
}

/// The first key modulo which `W` and `−W` differ.
pub fn first_closure_failure(w: &WeightMultiset) -> Option<u64> {
    w.entries
        .keys()
        .copied()
        .find(|&a| residue_counts(w, a, false) != residue_counts(w, a, true))
}

/// Whether a set of distinct values is closed under negation modulo each
/// of its members: for all `a_i, a_k` some `a_j` has `a_i + a_j ≡ 0`.
pub fn key_condition(keys: &[u64]) -> bool {
    keys.iter()
        .all(|&k| keys.iter().all(|&a| keys.iter().any(|&b| (a + b) % k == 0)))
}

/// All sets `{a_1 < … < a_N}` with `a_N ≤ max_value` and gcd 1 that
/// satisfy [`key_condition`].
pub fn lemma_i_enumerate(max_value: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    subsets(1, max_value, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn subsets(next: u64, max: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if !current.is_empty()
        && current.iter().fold(0, |g: u64, a| g.gcd(a)) == 1
        && key_condition(current)
    {
        out.push(current.clone());
    }
    for a in next..=max {
        current.push(a);
        subsets(a + 1, max, current, out);
        current.pop();
    }
}

/// Outcome of one multiplicity pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl PatternCheck {
    fn of(name: &'static str, applies: bool, ok: bool, detail: String) -> Self {
        let status = match (applies, ok) {
            (false, _) => CheckStatus::Skipped,
            (true, true) => CheckStatus::Pass,
            (true, false) => CheckStatus::Fail,
        };
        Self {
            name,
            status,
            detail,
        }
    }
}

/// The multiplicity patterns forced by closure: keys `{1,…,N}`, `N ≤ 6`,
/// and for `N = 3, 4, 5, 6`
///
/// * `m_2 = m_1`
/// * `m_3 = m_1`, `m_2 = m_1 + m_4`
/// * `m_4 = m_1 = 2m_5`, `m_3 = m_2 = 3m_5`
/// * `m_2 = m_3 = m_4 = 2m_1 = 2m_5 = 2m_6`
pub fn lemma_ii_verify(w: &WeightMultiset) -> Result<Vec<PatternCheck>> {
    if w.is_empty() || w.gcd() != 1 || !closure_check(w) {
        return Err(Error::NotApplicable(format!(
            "{w} must be nonempty, relatively prime and closed under negation"
        )));
    }
    let n = w.len() as u64;
    let m = |a: u64| w.multiplicity(a);
    let keys_ok = w.keys() == (1..=n).collect::<Vec<_>>();
    Ok(vec![
        PatternCheck::of("keys", true, keys_ok, format!("keys {:?}", w.keys())),
        PatternCheck::of("n3", n == 3, m(2) == m(1), "m2 = m1".into()),
        PatternCheck::of(
            "n4",
            n == 4,
            m(3) == m(1) && m(2) == m(1) + m(4),
            "m3 = m1, m2 = m1 + m4".into(),
        ),
        PatternCheck::of(
            "n5",
            n == 5,
            m(4) == m(1) && m(1) == 2 * m(5) && m(3) == m(2) && m(2) == 3 * m(5),
            "m4 = m1 = 2m5, m3 = m2 = 3m5".into(),
        ),
        PatternCheck::of(
            "n6",
            n == 6,
            [m(3), m(4), 2 * m(1), 2 * m(5), 2 * m(6)]
                .iter()
                .all(|&v| v == m(2)),
            "m2 = m3 = m4 = 2m1 = 2m5 = 2m6".into(),
        ),
        PatternCheck::of("n-bound", true, n <= 6, format!("N = {n}")),
    ])
}

/// Every closed, relatively prime multiset with keys at most `max_key` and
/// multiplicities at most `max_mult`.
///
/// Key sets are filtered by [`key_condition`] first. For each surviving
/// key set, closure is a homogeneous linear system in the multiplicities;
/// its solutions are enumerated over the free variables of the reduced
/// row echelon form.
pub fn admissible_enumerate(max_key: u64, max_mult: u64) -> Vec<WeightMultiset> {
    let mut out = Vec::new();
    for keys in lemma_i_enumerate(max_key) {
        out.extend(multiplicities(&keys, max_mult));
    }
    out.sort();
    out
}

fn multiplicities(keys: &[u64], max_mult: u64) -> Vec<WeightMultiset> {
    let rows = closure_rows(keys);
    let (rref, pivots) = rref(rows, keys.len());
    let free: Vec<usize> = (0..keys.len()).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    let mut values = vec![Coeff::zero(); keys.len()];
    fill(&free, 0, max_mult, &mut values, &mut |vals| {
        let mut full = vals.to_vec();
        for (row, &p) in rref.iter().zip(&pivots) {
            // x_p = −Σ_{free f} row[f] x_f
            let v = free
                .iter()
                .fold(Coeff::zero(), |acc, &f| acc - &row[f] * &vals[f]);
            full[p] = v;
        }
        let ok = full.iter().all(|v| {
            v.is_integer() && v.is_positive() && *v <= Coeff::from_integer(BigInt::from(max_mult))
        });
        if ok {
            let pairs = keys
                .iter()
                .zip(&full)
                .map(|(a, v)| (*a, v.to_integer().to_u64().expect("bounded by max_mult")));
            out.push(WeightMultiset::new(pairs).expect("positive"));
        }
    });
    out
}

fn fill(
    free: &[usize],
    k: usize,
    max: u64,
    values: &mut Vec<Coeff>,
    visit: &mut impl FnMut(&[Coeff]),
) {
    if k == free.len() {
        visit(values);
        return;
    }
    for v in 1..=max {
        values[free[k]] = Coeff::from_integer(BigInt::from(v));
        fill(free, k + 1, max, values, visit);
    }
}

/// One row per (modulus, residue): count of `r` minus count of `−r`.
fn closure_rows(keys: &[u64]) -> Vec<Vec<Coeff>> {
    let mut rows = Vec::new();
    for &k in keys {
        for r in 0..k {
            let neg = (k - r) % k;
            if neg <= r {
                continue;
            }
            let row: Vec<Coeff> = keys
                .iter()
                .map(|a| {
                    let res = a % k;
                    let v = i64::from(res == r) - i64::from(res == neg);
                    Coeff::from_integer(BigInt::from(v))
                })
                .collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
fn rref(mut rows: Vec<Vec<Coeff>>, cols: usize) -> (Vec<Vec<Coeff>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    debug_assert!(rows.iter().zip(&pivots).all(|(row, &p)| row[p].is_one()));
    (rows, pivots)
}
