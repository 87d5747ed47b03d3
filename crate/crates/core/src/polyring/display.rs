use std::fmt;

use num_traits::{One, Signed};

use super::{Coeff, GradedPoly, Monomial};

/// Terms ordered by ascending cohomological degree, then graded-lex with the
/// environment's variable order (the first variable ranks highest).
pub(super) fn sorted_terms(p: &GradedPoly) -> Vec<(&Monomial, &Coeff)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let wa = p.env().weight(a);
        let wb = p.env().weight(b);
        wa.cmp(&wb).then_with(|| b.cmp(a))
    });
    terms
}

fn write_monomial(f: &mut fmt::Formatter<'_>, p: &GradedPoly, m: &Monomial) -> fmt::Result {
    let compact = p.env().vars().iter().all(|v| v.name().chars().count() == 1);
    let mut first = true;
    for (v, e) in p.env().vars().iter().zip(m) {
        if *e == 0 {
            continue;
        }
        if !first && !compact {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v.name())?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(super) fn write_coeff_abs(f: &mut fmt::Formatter<'_>, c: &Coeff, bare: bool) -> fmt::Result {
    let c = c.abs();
    if c.is_integer() {
        if bare || !c.is_one() {
            write!(f, "{}", c.numer())?;
        }
    } else if bare {
        write!(f, "{}/{}", c.numer(), c.denom())?;
    } else {
        write!(f, "({}/{})", c.numer(), c.denom())?;
    }
    Ok(())
}

pub(super) fn write_poly(f: &mut fmt::Formatter<'_>, p: &GradedPoly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in sorted_terms(p).into_iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let bare = m.iter().all(|e| *e == 0);
        write_coeff_abs(f, c, bare)?;
        write_monomial(f, p, m)?;
    }
    Ok(())
}
