//! Text form of polynomials: `3/2*x^2*y - x + 1`, with `eps` reserved for
//! the nilpotent of the dual numbers and `x^-2` for inverted variables.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::coeff::{Coeff, CoeffMagnitude};
use super::poly::Poly;
use super::ring::PolyRing;
use super::PolyError;

/// A quotient `num / den` of two ring elements, as produced by the parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: Poly,
    pub den: Poly,
}

impl Fraction {
    fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.ring());
        Fraction { num: p, den }
    }

    fn add(self, other: Fraction) -> Fraction {
        if self.den == other.den {
            return Fraction {
                num: &self.num + &other.num,
                den: self.den,
            };
        }
        Fraction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    fn neg(self) -> Fraction {
        Fraction {
            num: -&self.num,
            den: self.den,
        }
    }

    fn mul(self, other: Fraction) -> Fraction {
        Fraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .simplified()
    }

    fn invert(self) -> Option<Fraction> {
        if self.num.is_zero() {
            None
        } else {
            Some(
                Fraction {
                    num: self.den,
                    den: self.num,
                }
                .simplified(),
            )
        }
    }

    /// Cancels the denominator when it divides the numerator, and moves unit
    /// denominators into the numerator.
    pub fn simplified(self) -> Fraction {
        if self.den.is_one() {
            return self;
        }
        match self.num.exact_divide(&self.den) {
            Ok(Some(q)) => Fraction::from_poly(q),
            _ => self,
        }
    }

    /// The fraction as a ring element, if the denominator divides.
    pub fn into_poly(self) -> Option<Poly> {
        if self.den.is_one() {
            return Some(self.num);
        }
        self.num.exact_divide(&self.den).ok().flatten()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, start)),
            '-' => toks.push((Tok::Minus, start)),
            '*' => toks.push((Tok::Star, start)),
            '/' => toks.push((Tok::Slash, start)),
            '^' => toks.push((Tok::Caret, start)),
            '(' => toks.push((Tok::LParen, start)),
            ')' => toks.push((Tok::RParen, start)),
            d if d.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                toks.push((Tok::Int(n), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(parse_error(
                    src,
                    start,
                    format!("unexpected character '{other}'"),
                ))
            }
        }
        i += 1;
    }
    toks.push((Tok::End, src.len()));
    Ok(toks)
}

fn parse_error(src: &str, offset: usize, message: String) -> PolyError {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    PolyError::Parse {
        line,
        column,
        message,
    }
}

struct Parser<'a> {
    src: &'a str,
    ring: &'a Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        parse_error(self.src, self.offset(), msg.into())
    }

    fn expr(&mut self) -> Result<Fraction, PolyError> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Fraction, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.factor()?;
                    let inv = rhs
                        .invert()
                        .ok_or_else(|| parse_error(self.src, at, "division by zero".into()))?;
                    acc = acc.mul(inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Fraction, PolyError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let at = self.offset();
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => {
                return Err(parse_error(
                    self.src,
                    at,
                    "expected integer exponent".into(),
                ))
            }
        };
        let n: u32 = n
            .try_into()
            .map_err(|_| parse_error(self.src, at, "exponent too large".into()))?;
        let powered = Fraction {
            num: base.num.pow(n),
            den: base.den.pow(n),
        };
        if negative {
            powered
                .invert()
                .ok_or_else(|| parse_error(self.src, at, "zero to a negative power".into()))
        } else {
            Ok(powered)
        }
    }

    fn base(&mut self) -> Result<Fraction, PolyError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let c = Coeff::rational(BigRational::from_integer(n));
                Ok(Fraction::from_poly(Poly::constant(self.ring, c)))
            }
            Tok::Ident(name) if name == "eps" => Poly::epsilon(self.ring)
                .map(Fraction::from_poly)
                .map_err(|_| {
                    parse_error(
                        self.src,
                        at,
                        "'eps' requires dual-number coefficients".into(),
                    )
                }),
            Tok::Ident(name) => Poly::var(self.ring, &name)
                .map(Fraction::from_poly)
                .map_err(|_| parse_error(self.src, at, format!("unknown variable '{name}'"))),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(parse_error(
                        self.src,
                        self.toks[self.pos.saturating_sub(1)].1,
                        "expected ')'".into(),
                    ));
                }
                Ok(inner)
            }
            Tok::End => Err(parse_error(self.src, at, "unexpected end of input".into())),
            t => Err(parse_error(self.src, at, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a rational expression `num / den` over the ring.
pub fn parse_fraction(ring: &Arc<PolyRing>, src: &str) -> Result<Fraction, PolyError> {
    let toks = lex(src)?;
    let mut p = Parser {
        src,
        ring,
        toks,
        pos: 0,
    };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err("trailing input"));
    }
    Ok(f.simplified())
}

/// Parses a ring element; denominators must cancel.
pub fn parse_poly(ring: &Arc<PolyRing>, src: &str) -> Result<Poly, PolyError> {
    let f = parse_fraction(ring, src)?;
    f.into_poly().ok_or_else(|| PolyError::Parse {
        line: 1,
        column: 1,
        message: format!("'{}' is not an element of {}", src.trim(), ring),
    })
}

/// Writes the monomial part `x^2*y^-1` of an exponent vector. Returns
/// false (writing nothing) for the empty monomial.
pub(crate) fn write_monomial(
    f: &mut impl fmt::Write,
    vars: &[String],
    exp: &[i32],
) -> Result<bool, fmt::Error> {
    let mut first = true;
    for (v, &e) in vars.iter().zip(exp) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(!first)
}

pub fn monomial_string(vars: &[String], exp: &[i32]) -> String {
    let mut s = String::new();
    if !write_monomial(&mut s, vars, exp).expect("string write") {
        s.push('1');
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring().vars();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit_mag = c.is_rational() && c.re.abs().is_one();
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{}", CoeffMagnitude(c))?;
            } else {
                if !unit_mag {
                    write!(f, "{}*", CoeffMagnitude(c))?;
                }
                write_monomial(f, vars, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::CoeffRing;

    #[test]
    fn canonical_print() {
        let r = PolyRing::polynomial(&["x", "y"], CoeffRing::Rationals).unwrap();
        let p = parse_poly(&r, "1 - x + y*x^2*3/2").unwrap();
        assert_eq!(p.to_string(), "3/2*x^2*y - x + 1");
        assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn eps_only_in_dual_numbers() {
        let q = PolyRing::polynomial(&["t"], CoeffRing::Rationals).unwrap();
        assert!(matches!(
            parse_poly(&q, "eps*t"),
            Err(PolyError::Parse { .. })
        ));
        let d = PolyRing::polynomial(&["t"], CoeffRing::DualNumbers).unwrap();
        let p = parse_poly(&d, "(1 - 2*eps)*t + eps").unwrap();
        assert_eq!(p.to_string(), "(1 - 2*eps)*t + eps");
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::polynomial(&["x"], CoeffRing::Rationals).unwrap();
        match parse_poly(&r, "x + z") {
            Err(PolyError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        match parse_poly(&r, "x +\n  $") {
            Err(PolyError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractions_and_negative_powers() {
        let r = PolyRing::polynomial(&["x", "y"], CoeffRing::Rationals).unwrap();
        let f = parse_fraction(&r, "1/(x^2*y)").unwrap();
        assert!(f.num.is_one());
        assert_eq!(f.den.to_string(), "x^2*y");
        let g = parse_fraction(&r, "x^-2").unwrap();
        assert_eq!(g.den.to_string(), "x^2");
        assert!(parse_poly(&r, "x^-2").is_err());
        let l = PolyRing::laurent(&["x"], &["x"], CoeffRing::Rationals).unwrap();
        assert_eq!(parse_poly(&l, "x^-2 + 1").unwrap().to_string(), "1 + x^-2");
    }
}
