//! Coefficient rings: the rationals and the dual numbers `Q[eps]/(eps^2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

/// Which coefficient ring a polynomial ring is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffRing {
    Rationals,
    DualNumbers,
}

impl CoeffRing {
    pub fn is_reduced(self) -> bool {
        matches!(self, CoeffRing::Rationals)
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Rationals => f.write_str("rationals"),
            CoeffRing::DualNumbers => f.write_str("dual_numbers"),
        }
    }
}

/// An element `re + eps * eps_part` with `eps^2 = 0`.
///
/// Over [`CoeffRing::Rationals`] the `eps` part is always zero, so the same
/// type serves both rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    pub re: Rational,
    pub eps: Rational,
}

impl Coeff {
    pub fn new(re: Rational, eps: Rational) -> Self {
        Coeff { re, eps }
    }

    pub fn rational(re: Rational) -> Self {
        Coeff {
            re,
            eps: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Coeff::rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The nilpotent generator `eps`.
    pub fn epsilon() -> Self {
        Coeff {
            re: Rational::zero(),
            eps: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        Coeff::from_int(0)
    }

    pub fn one() -> Self {
        Coeff::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.eps.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.eps.is_zero()
    }

    /// Units are exactly the elements with nonzero rational part.
    pub fn is_unit(&self) -> bool {
        !self.re.is_zero()
    }

    /// `(a + b eps)^-1 = a^-1 - b a^-2 eps`.
    pub fn inverse(&self) -> Option<Coeff> {
        if !self.is_unit() {
            return None;
        }
        let inv = self.re.recip();
        if self.eps.is_zero() {
            return Some(Coeff::rational(inv));
        }
        let eps = -(&self.eps * &inv * &inv);
        Some(Coeff { re: inv, eps })
    }

    pub fn pow(&self, n: u32) -> Coeff {
        (0..n).fold(Coeff::one(), |acc, _| &acc * self)
    }

    /// Drops the `eps` part (reduction modulo the nilradical).
    pub fn reduced(&self) -> Coeff {
        Coeff::rational(self.re.clone())
    }

    /// Sign used when printing: the sign of the first nonzero component.
    pub(crate) fn is_negative(&self) -> bool {
        if self.re.is_zero() {
            self.eps.is_negative()
        } else {
            self.re.is_negative() && self.eps.is_zero()
        }
    }

    pub(crate) fn belongs_to(&self, ring: CoeffRing) -> bool {
        ring == CoeffRing::DualNumbers || self.eps.is_zero()
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff {
            re: &self.re + &rhs.re,
            eps: &self.eps + &rhs.eps,
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff {
            re: &self.re - &rhs.re,
            eps: &self.eps - &rhs.eps,
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let eps = match (self.eps.is_zero(), rhs.eps.is_zero()) {
            (true, true) => Rational::zero(),
            (true, false) => &self.re * &rhs.eps,
            (false, true) => &self.eps * &rhs.re,
            (false, false) => &self.re * &rhs.eps + &self.eps * &rhs.re,
        };
        Coeff {
            re: &self.re * &rhs.re,
            eps,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -&self.re,
            eps: -&self.eps,
        }
    }
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Prints the absolute value form used inside polynomial terms; the caller
/// handles the leading sign.
pub(crate) struct CoeffMagnitude<'a>(pub &'a Coeff);

impl fmt::Display for CoeffMagnitude<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        if c.eps.is_zero() {
            fmt_rational(&c.re.abs(), f)
        } else if c.re.is_zero() {
            let e = c.eps.abs();
            if e.is_one() {
                f.write_str("eps")
            } else {
                fmt_rational(&e, f)?;
                f.write_str("*eps")
            }
        } else {
            f.write_str("(")?;
            fmt_rational(&c.re, f)?;
            if c.eps.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let e = c.eps.abs();
            if !e.is_one() {
                fmt_rational(&e, f)?;
                f.write_str("*")?;
            }
            f.write_str("eps)")
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("-")?;
        }
        CoeffMagnitude(self).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_squares_to_zero() {
        let e = Coeff::epsilon();
        assert!((&e * &e).is_zero());
        assert!(!e.is_unit());
    }

    #[test]
    fn dual_multiplication_rule() {
        // (a,b)(c,d) = (ac, ad + bc)
        let x = Coeff::new(
            Rational::from_integer(2.into()),
            Rational::from_integer(3.into()),
        );
        let y = Coeff::new(
            Rational::from_integer(5.into()),
            Rational::from_integer(7.into()),
        );
        let p = &x * &y;
        assert_eq!(p.re, Rational::from_integer(10.into()));
        assert_eq!(p.eps, Rational::from_integer(29.into()));
    }

    #[test]
    fn inverse_of_unit() {
        let x = Coeff::new(
            Rational::from_integer(2.into()),
            Rational::from_integer(3.into()),
        );
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert!(Coeff::epsilon().inverse().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Coeff::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(Coeff::epsilon().to_string(), "eps");
        let mixed = Coeff::new(
            Rational::from_integer(1.into()),
            Rational::from_integer((-2).into()),
        );
        assert_eq!(mixed.to_string(), "(1 - 2*eps)");
    }
}
