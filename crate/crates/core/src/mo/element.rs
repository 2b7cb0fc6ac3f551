use std::fmt;

use crate::poly::{monomial_string, Poly};

use super::{AffineModulusPair, MoError};

/// An element `numerator / f^fpower` of `A[1/f]`.
///
/// Always kept canonical: `fpower` is minimal, so when it is positive the
/// numerator is not divisible by `f`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    numerator: Poly,
    fpower: u32,
    f: Poly,
}

impl LocalizedElement {
    pub fn new(pair: &AffineModulusPair, numerator: Poly, fpower: u32) -> Result<Self, MoError> {
        Self::over(pair.f(), numerator, fpower)
    }

    pub(crate) fn over(f: &Poly, numerator: Poly, fpower: u32) -> Result<Self, MoError> {
        if numerator.ring() != f.ring() {
            return Err(MoError::Poly(crate::poly::PolyError::RingMismatch {
                left: numerator.ring().to_string(),
                right: f.ring().to_string(),
            }));
        }
        let mut numerator = numerator;
        let mut fpower = fpower;
        if numerator.is_zero() {
            fpower = 0;
        }
        while fpower > 0 {
            match numerator.exact_divide(f)? {
                Some(q) => {
                    numerator = q;
                    fpower -= 1;
                }
                None => break,
            }
        }
        Ok(LocalizedElement {
            numerator,
            fpower,
            f: f.clone(),
        })
    }

    pub fn from_poly(pair: &AffineModulusPair, p: Poly) -> Result<Self, MoError> {
        Self::new(pair, p, 0)
    }

    /// `num / den` as an element of `A[1/f]`, or `None` if `den` does not
    /// become invertible after inverting `f`.
    pub fn from_fraction(
        pair: &AffineModulusPair,
        num: &Poly,
        den: &Poly,
    ) -> Result<Option<Self>, MoError> {
        if den.is_zero() {
            return Err(MoError::Poly(crate::poly::PolyError::DivisionByZero));
        }
        let ring = pair.ring();
        // every prime of den divides f, each with multiplicity at most deg(den)
        let maxe = den.max_exponents();
        let mine = den.min_exponents();
        let span: i32 = (0..ring.nvars())
            .map(|i| {
                if ring.is_invertible(i) {
                    maxe[i] - mine[i]
                } else {
                    maxe[i]
                }
            })
            .sum();
        let bound = span.max(0) as u32 + 1;
        let mut fk = Poly::one(ring);
        for k in 0..=bound {
            let prod = num.checked_mul(&fk)?;
            if let Some(q) = prod.exact_divide(den)? {
                return Ok(Some(Self::new(pair, q, k)?));
            }
            fk = &fk * pair.f();
        }
        Ok(None)
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn fpower(&self) -> u32 {
        self.fpower
    }

    /// The localizing element `f`.
    pub fn base(&self) -> &Poly {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The element as a ring element, if it lies in `A`.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.fpower == 0).then_some(&self.numerator)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MoError> {
        self.same_base(other)?;
        let k = self.fpower.max(other.fpower);
        let a = &self.numerator * &self.f.pow(k - self.fpower);
        let b = &other.numerator * &self.f.pow(k - other.fpower);
        Self::over(&self.f, a.checked_add(&b)?, k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MoError> {
        self.same_base(other)?;
        Self::over(
            &self.f,
            self.numerator.checked_mul(&other.numerator)?,
            self.fpower + other.fpower,
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<Self, MoError> {
        Self::over(&self.f, self.numerator.checked_mul(p)?, self.fpower)
    }

    /// `f^n * self`, with `n` possibly negative.
    pub fn shift_f(&self, n: i64) -> Result<Self, MoError> {
        let k = self.fpower as i64 - n;
        if k >= 0 {
            Self::over(&self.f, self.numerator.clone(), k as u32)
        } else {
            Self::over(&self.f, &self.numerator * &self.f.pow((-k) as u32), 0)
        }
    }

    fn same_base(&self, other: &Self) -> Result<(), MoError> {
        if self.f != other.f {
            return Err(MoError::Poly(crate::poly::PolyError::RingMismatch {
                left: format!("{}[1/({})]", self.f.ring(), self.f),
                right: format!("{}[1/({})]", other.f.ring(), other.f),
            }));
        }
        Ok(())
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        // canonical forms over the same base coincide exactly
        self.f == other.f && self.fpower == other.fpower && self.numerator == other.numerator
    }
}

impl Eq for LocalizedElement {}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fpower == 0 {
            return write!(f, "{}", self.numerator);
        }
        let ring = self.f.ring();
        if let (Some(fe), Some((_, fc))) = (self.f.monomial_exponent(), self.f.leading_term()) {
            // cancel the monomial content shared with f^k and print num/den
            let k = self.fpower as i32;
            let nmin = self.numerator.min_exponents();
            let mut shift = vec![0; ring.nvars()];
            let mut den = vec![0; ring.nvars()];
            for i in 0..ring.nvars() {
                let d = fe[i] * k;
                if ring.is_invertible(i) {
                    shift[i] = -d;
                } else {
                    let c = nmin[i].min(d);
                    shift[i] = -c;
                    den[i] = d - c;
                }
            }
            let inv = fc.inverse().expect("unit").pow(self.fpower);
            let num = self
                .numerator
                .shift(&shift)
                .map_err(|_| fmt::Error)?
                .scale(&inv);
            if den.iter().all(|&d| d == 0) {
                return write!(f, "{num}");
            }
            let dens = monomial_string(ring.vars(), &den);
            let dens = if den.iter().filter(|&&d| d != 0).count() > 1 {
                format!("({dens})")
            } else {
                dens
            };
            if num.num_terms() > 1 {
                write!(f, "({num})/{dens}")
            } else {
                write!(f, "{num}/{dens}")
            }
        } else {
            let num = if self.numerator.num_terms() > 1 {
                format!("({})", self.numerator)
            } else {
                self.numerator.to_string()
            };
            if self.fpower == 1 {
                write!(f, "{num}/({})", self.f)
            } else {
                write!(f, "{num}/({})^{}", self.f, self.fpower)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_fraction, parse_poly};

    fn elt(pair: &AffineModulusPair, s: &str) -> LocalizedElement {
        let fr = parse_fraction(pair.ring(), s).unwrap();
        LocalizedElement::from_fraction(pair, &fr.num, &fr.den)
            .unwrap()
            .unwrap()
    }

    #[test]
    fn canonical_form_is_minimal() {
        let pair = AffineModulusPair::monomial(&["x"], &[2]).unwrap();
        let x2 = parse_poly(pair.ring(), "x^3").unwrap();
        let e = LocalizedElement::new(&pair, x2, 2).unwrap();
        assert_eq!(e.fpower(), 1);
        assert_eq!(e.to_string(), "1/x");
    }

    #[test]
    fn fractions_in_the_localization() {
        let pair = AffineModulusPair::monomial(&["x", "y"], &[3, 2]).unwrap();
        assert_eq!(elt(&pair, "1/(x^2*y)").to_string(), "1/(x^2*y)");
        assert_eq!(elt(&pair, "3*x/y^2").to_string(), "3*x/y^2");
        let one = parse_poly(pair.ring(), "1").unwrap();
        let xp1 = parse_poly(pair.ring(), "x + 1").unwrap();
        assert!(LocalizedElement::from_fraction(&pair, &one, &xp1)
            .unwrap()
            .is_none());
    }

    #[test]
    fn arithmetic_agrees_with_fractions() {
        let pair = AffineModulusPair::monomial(&["t"], &[4]).unwrap();
        let a = elt(&pair, "1/t^3");
        let b = elt(&pair, "t^5");
        assert_eq!(a.mul(&b).unwrap(), elt(&pair, "t^2"));
        assert_eq!(a.add(&a).unwrap(), elt(&pair, "2/t^3"));
        assert_eq!(b.shift_f(-1).unwrap(), elt(&pair, "t"));
    }
}
