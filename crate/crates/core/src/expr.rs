//! Class expressions for localization integrals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' natural)?
//! atom   := integer | 'ut' | 't' | 'c' natural | '(' expr ')'
//! ```
//!
//! `ut` is ũ based at the minimum, `t` the equivariant parameter and `cK`
//! the equivariant Chern class `c_K^{S¹}(M)`. Whitespace is ignored.

use std::fmt;

use num_bigint::BigInt;

use crate::fixeddata::{chern_class, u_tilde, EquivariantClass, FixedPointData};
use crate::polyring::Coeff;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ut,
    T,
    Chern(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.input[..self.pos.min(self.input.len())].chars().count();
        writeln!(f, "{} at column {}", self.message, col + 1)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(col))
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e.to_string())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.src.to_string(),
            pos,
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> std::result::Result<(String, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if len == 0 {
            return Err(self.error(start, "expected a natural number"));
        }
        self.pos += len;
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn small_natural(&mut self) -> std::result::Result<u32, ParseError> {
        let (digits, start) = self.natural()?;
        digits
            .parse()
            .map_err(|_| self.error(start, format!("number {digits} is too large")))
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.small_natural()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.error(self.src.len(), "unexpected end of input")),
        };
        let rest = &self.src[start..];
        if rest.starts_with('(') {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                let at = self.pos;
                return Err(self.error(at, "expected `)`"));
            }
            return Ok(inner);
        }
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let (digits, _) = self.natural()?;
            return Ok(Expr::Int(digits.parse().expect("digits")));
        }
        if rest.starts_with("ut") {
            self.pos += 2;
            return Ok(Expr::Ut);
        }
        if rest.starts_with('t') {
            self.pos += 1;
            return Ok(Expr::T);
        }
        if rest.starts_with('c') {
            self.pos += 1;
            return Ok(Expr::Chern(self.small_natural()?));
        }
        let found = rest.chars().next().expect("peeked");
        Err(self.error(start, format!("unexpected `{found}`")))
    }
}

pub fn parse(input: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser { src: input, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        let at = p.pos;
        let found = input[at..].chars().next().expect("peeked");
        return Err(p.error(at, format!("unexpected `{found}`")));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    /// Upper bound on the cohomological degree, in units of 2.
    pub fn degree(&self) -> u64 {
        match self {
            Expr::Int(_) => 0,
            Expr::Ut | Expr::T => 1,
            Expr::Chern(k) => u64::from(*k),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree().max(b.degree()),
            Expr::Mul(a, b) => a.degree() + b.degree(),
            Expr::Pow(a, k) => a.degree().saturating_mul(u64::from(*k)),
        }
    }

    pub fn eval(&self, data: &FixedPointData) -> EquivariantClass {
        match self {
            Expr::Int(n) => EquivariantClass::constant(data, Coeff::from_integer(n.clone())),
            Expr::Ut => u_tilde(data, 0),
            Expr::T => EquivariantClass::t(data),
            Expr::Chern(k) => chern_class(data, *k),
            Expr::Add(a, b) => &a.eval(data) + &b.eval(data),
            Expr::Sub(a, b) => &a.eval(data) - &b.eval(data),
            Expr::Mul(a, b) => &a.eval(data) * &b.eval(data),
            Expr::Pow(a, k) => a.eval(data).pow(*k),
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ut => f.write_str("ut"),
            Expr::T => f.write_str("t"),
            Expr::Chern(k) => write!(f, "c{k}"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_child(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_child(f, 2)?;
                f.write_str(" * ")?;
                b.write_child(f, 3)
            }
            Expr::Pow(a, k) => {
                a.write_child(f, 4)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// Parses `input`, rejects classes above `max_degree`, and evaluates.
pub fn parse_class(
    input: &str,
    data: &FixedPointData,
    max_degree: u32,
) -> Result<EquivariantClass> {
    let e = parse(input)?;
    if e.degree() > u64::from(max_degree) {
        return Err(Error::InvalidParameter(format!(
            "class of degree up to {} exceeds the limit {max_degree}",
            e.degree()
        )));
    }
    Ok(e.eval(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::abbv_integrate;
    use crate::models::{fixture_cpn, fixture_quadric};

    fn integrate(src: &str, data: &FixedPointData) -> Coeff {
        abbv_integrate(&parse_class(src, data, 12).unwrap(), data).unwrap()
    }

    fn int(n: i64) -> Coeff {
        Coeff::from_integer(BigInt::from(n))
    }

    #[test]
    fn parses_and_prints() {
        let e = parse(" ut ^3*( t+c1 ) - 2").unwrap();
        assert_eq!(e.to_string(), "ut^3 * (t + c1) - 2");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        assert_eq!(parse("(ut^2)^3").unwrap().to_string(), "(ut^2)^3");
        assert_eq!(parse("1 - (2 - 3)").unwrap().to_string(), "1 - (2 - 3)");
        assert_eq!(parse("t * (t * t)").unwrap().to_string(), "t * (t * t)");
        assert_eq!(parse("(t * t) * t").unwrap().to_string(), "t * t * t");
        assert_eq!(parse("ut^2 * t").unwrap().degree(), 3);
    }

    #[test]
    fn errors_point_at_the_problem() {
        let err = parse("ut + * t").unwrap_err();
        assert_eq!(err.pos, 5);
        assert_eq!(
            err.to_string(),
            "unexpected `*` at column 6\n  ut + * t\n       ^"
        );
        assert_eq!(parse("(t").unwrap_err().message, "expected `)`");
        assert_eq!(parse("u").unwrap_err().pos, 0);
        assert_eq!(
            parse("t^").unwrap_err().message,
            "expected a natural number"
        );
        assert_eq!(parse("t t").unwrap_err().pos, 2);
        assert!(parse("").is_err());
    }

    #[test]
    fn integrals() {
        let q = fixture_quadric(3).unwrap();
        assert_eq!(integrate("ut^3", &q), int(2));
        assert_eq!(integrate("1", &q), int(0));
        assert_eq!(integrate("c3", &q), int(4));
        let d = fixture_cpn(2, 0).unwrap();
        assert_eq!(integrate("ut^2 * t", &d), int(0));
        assert_eq!(integrate("ut^2", &d), int(1));
    }

    #[test]
    fn degree_guardrail() {
        let q = fixture_quadric(3).unwrap();
        assert!(matches!(
            parse_class("t^13", &q, 12),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_class("t^4294967295", &q, 12),
            Err(Error::InvalidParameter(_))
        ));
    }
}
