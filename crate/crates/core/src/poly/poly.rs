use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::coeff::{Coeff, CoeffRing};
use super::ring::PolyRing;
use super::PolyError;

/// Exponent vector, one entry per ring variable.
pub type Exponent = Vec<i32>;

/// Sparse (Laurent) polynomial with exact coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
/// in ascending lexicographic order and equality is structural. Zero
/// coefficients are never stored. The leading term is the lexicographically
/// largest exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Exponent, Coeff>,
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::term(ring, vec![0; ring.nvars()], c)
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, Coeff::from_int(n))
    }

    /// The `eps` element of a dual-number ring.
    pub fn epsilon(ring: &Arc<PolyRing>) -> Result<Self, PolyError> {
        if ring.coeffs() != CoeffRing::DualNumbers {
            return Err(PolyError::EpsilonOutsideDualNumbers);
        }
        Ok(Self::constant(ring, Coeff::epsilon()))
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Ok(Self::term(ring, e, Coeff::one()))
    }

    /// A single term; panics only on a wrong-length exponent. Sign
    /// restrictions are checked by [`Poly::monomial`].
    fn term(ring: &Arc<PolyRing>, exp: Exponent, c: Coeff) -> Self {
        assert_eq!(exp.len(), ring.nvars(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, exp: Exponent, c: Coeff) -> Result<Self, PolyError> {
        Self::from_terms(ring, [(exp, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// enforcing the ring's sign and coefficient restrictions.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponent, Coeff)>,
    {
        let mut map: BTreeMap<Exponent, Coeff> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(PolyError::ExponentLength {
                    expected: ring.nvars(),
                    got: e.len(),
                });
            }
            if !c.belongs_to(ring.coeffs()) {
                return Err(PolyError::EpsilonOutsideDualNumbers);
            }
            if c.is_zero() {
                continue;
            }
            if !ring.admits(&e) {
                return Err(PolyError::NegativeExponent {
                    ring: ring.to_string(),
                });
            }
            accumulate(&mut map, e, &c);
        }
        Ok(Poly {
            ring: ring.clone(),
            terms: map,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Exponent, &Coeff)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_coeff(&self) -> Coeff {
        let z = vec![0; self.ring.nvars()];
        self.terms.get(&z).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The single exponent of a monomial.
    pub fn monomial_exponent(&self) -> Option<&Exponent> {
        if self.is_monomial() {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Units of a Laurent ring: a unit scalar times a monomial in the
    /// inverted variables only.
    pub fn is_unit(&self) -> bool {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 => {
                c.is_unit()
                    && e.iter()
                        .enumerate()
                        .all(|(i, &x)| x == 0 || self.ring.is_invertible(i))
            }
            _ => false,
        }
    }

    /// True when all coefficients have zero `eps` part.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Coeff::is_rational)
    }

    /// Image in `(R/nilradical)[x]`: the `eps` parts are dropped.
    pub fn reduced(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.reduced()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Minimum exponent of each variable over all terms (zero for the zero
    /// polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut out = vec![i32::MAX; self.ring.nvars()];
        for e in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(e) {
                *o = (*o).min(x);
            }
        }
        out.iter_mut().for_each(|o| {
            if *o == i32::MAX {
                *o = 0
            }
        });
        out
    }

    pub fn max_exponents(&self) -> Exponent {
        let mut out = vec![i32::MIN; self.ring.nvars()];
        for e in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(e) {
                *o = (*o).max(x);
            }
        }
        out.iter_mut().for_each(|o| {
            if *o == i32::MIN {
                *o = 0
            }
        });
        out
    }

    /// Sum of exponent spans, an upper bound on how many factors of a
    /// non-unit can divide this polynomial.
    pub fn degree_span(&self) -> u32 {
        let lo = self.min_exponents();
        let hi = self.max_exponents();
        hi.iter().zip(&lo).map(|(h, l)| (h - l) as u32).sum()
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), c);
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), &-c);
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                accumulate(&mut terms, e, &(c1 * c2));
            }
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Multiplies by the Laurent monomial `x^shift`; fails if the result
    /// leaves the ring.
    pub fn shift(&self, shift: &[i32]) -> Result<Poly, PolyError> {
        let terms: BTreeMap<Exponent, Coeff> = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        if terms.keys().all(|e: &Exponent| self.ring.admits(e)) {
            Ok(Poly {
                ring: self.ring.clone(),
                terms,
            })
        } else {
            Err(PolyError::NegativeExponent {
                ring: self.ring.to_string(),
            })
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: `Ok(Some(r))` with `q * r == self`, `Ok(None)` if `q`
    /// does not divide `self` in the ring.
    ///
    /// Requires a unit leading coefficient in `q`. Inverted variables are
    /// handled by clearing denominators and stripping the monomial content
    /// of `q` in those variables before ordinary lex division.
    pub fn exact_divide(&self, q: &Poly) -> Result<Option<Poly>, PolyError> {
        self.check_ring(q)?;
        let Some((_, lc)) = q.leading_term() else {
            return Err(PolyError::DivisionByZero);
        };
        let lc_inv = lc.inverse().ok_or(PolyError::NonUnitLeadingCoefficient)?;
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let ring = &self.ring;
        if q.terms.len() == 1 {
            let (qe, _) = q.leading_term().expect("nonzero");
            let mut terms = BTreeMap::new();
            for (e, c) in &self.terms {
                let d: Exponent = e.iter().zip(qe).map(|(a, b)| a - b).collect();
                if !ring.admits(&d) {
                    return Ok(None);
                }
                terms.insert(d, c * &lc_inv);
            }
            return Ok(Some(Poly {
                ring: ring.clone(),
                terms,
            }));
        }
        let n = ring.nvars();
        let pmin = self.min_exponents();
        let qmin = q.min_exponents();
        let mut pshift = vec![0; n];
        let mut qshift = vec![0; n];
        for i in 0..n {
            if ring.is_invertible(i) {
                pshift[i] = -pmin[i];
                qshift[i] = -qmin[i];
            }
        }
        let p_poly = self.shift_unchecked(&pshift);
        let q_poly = q.shift_unchecked(&qshift);
        let (q_lead, _) = q_poly.leading_term().expect("nonzero");
        let q_lead = q_lead.clone();

        let mut rem = p_poly.terms;
        let mut quot: BTreeMap<Exponent, Coeff> = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back() {
            let diff: Exponent = e.iter().zip(&q_lead).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&d| d < 0) {
                return Ok(None);
            }
            let qc = c * &lc_inv;
            for (qe, qcoef) in &q_poly.terms {
                let te: Exponent = qe.iter().zip(&diff).map(|(a, b)| a + b).collect();
                accumulate(&mut rem, te, &-&(&qc * qcoef));
            }
            quot.insert(diff, qc);
        }
        let back: Vec<i32> = (0..n).map(|i| qshift[i] - pshift[i]).collect();
        let result = Poly {
            ring: ring.clone(),
            terms: quot,
        }
        .shift_unchecked(&back);
        if result.terms.keys().all(|e| ring.admits(e)) {
            Ok(Some(result))
        } else {
            Ok(None)
        }
    }

    pub fn divides(&self, other: &Poly) -> Result<bool, PolyError> {
        Ok(other.exact_divide(self)?.is_some())
    }

    fn shift_unchecked(&self, shift: &[i32]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Re-expresses this polynomial in a ring whose variables include all of
    /// ours (matched by name), e.g. `A -> A[t]`.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly, PolyError> {
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            idx.push(
                target
                    .var_index(v)
                    .ok_or_else(|| PolyError::UnknownVariable(v.clone()))?,
            );
        }
        if self.ring.coeffs() == CoeffRing::DualNumbers
            && target.coeffs() == CoeffRing::Rationals
            && !self.is_rational()
        {
            return Err(PolyError::EpsilonOutsideDualNumbers);
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut te = vec![0; target.nvars()];
            for (k, &x) in e.iter().enumerate() {
                te[idx[k]] = x;
            }
            (te, c.clone())
        });
        Poly::from_terms(target, terms)
    }

    /// The `eps` coefficient polynomial, i.e. `p = p0 + eps * p1` returns `p1`.
    pub fn eps_part(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| !c.eps.is_zero())
            .map(|(e, c)| (e.clone(), Coeff::rational(c.eps.clone())))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

fn accumulate(map: &mut BTreeMap<Exponent, Coeff>, e: Exponent, c: &Coeff) {
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c.clone());
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("polynomials over different rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("polynomials over different rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomials over different rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Coeff::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::polynomial(vars, CoeffRing::Rationals).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        super::super::parse_poly(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&["x", "y"]);
        let lhs = &(&p(&r, "x") + &p(&r, "y")) * &(&p(&r, "x") - &p(&r, "y"));
        assert_eq!(lhs, p(&r, "x^2 - y^2"));
    }

    #[test]
    fn additive_identity() {
        let r = ring(&["x", "y"]);
        let a = p(&r, "3/2*x^2*y - x + 1");
        assert_eq!(&a + &Poly::zero(&r), a);
    }

    #[test]
    fn epsilon_squared_vanishes() {
        let r = PolyRing::polynomial(&["x"], CoeffRing::DualNumbers).unwrap();
        let e = Poly::epsilon(&r).unwrap();
        assert!((&e * &e).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p(&ring(&["x"]), "x");
        let b = p(&ring(&["y"]), "y");
        assert!(matches!(
            a.checked_add(&b),
            Err(PolyError::RingMismatch { .. })
        ));
    }

    #[test]
    fn exact_division_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            p(&r, "x^2*y").exact_divide(&p(&r, "x")).unwrap(),
            Some(p(&r, "x*y"))
        );
        assert_eq!(p(&r, "x + 1").exact_divide(&p(&r, "x")).unwrap(), None);
        let q = p(&r, "x^2*y");
        let got = p(&r, "x^3*y^2").exact_divide(&q).unwrap().unwrap();
        assert_eq!(&got * &q, p(&r, "x^3*y^2"));
        assert_eq!(got, p(&r, "x*y"));
        assert!(matches!(
            p(&r, "x").exact_divide(&Poly::zero(&r)),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn division_by_non_monomials() {
        let r = ring(&["x", "y"]);
        let f = p(&r, "x^2 + x*y + 1");
        let g = p(&r, "y^3 - 2*x");
        assert_eq!((&f * &g).exact_divide(&f).unwrap(), Some(g.clone()));
        assert_eq!(
            (&(&f * &g) + &Poly::one(&r)).exact_divide(&f).unwrap(),
            None
        );
    }

    #[test]
    fn laurent_division() {
        let r = PolyRing::laurent(&["x", "y"], &["y"], CoeffRing::Rationals).unwrap();
        assert_eq!(
            Poly::one(&r).exact_divide(&p(&r, "y^2")).unwrap(),
            Some(p(&r, "y^-2"))
        );
        // x is not inverted
        assert_eq!(Poly::one(&r).exact_divide(&p(&r, "x")).unwrap(), None);
        // 1 - y is not a unit, and the naive lex division would never stop
        assert_eq!(Poly::one(&r).exact_divide(&p(&r, "1 - y")).unwrap(), None);
        let f = p(&r, "x*y^-1 + y^2");
        let g = p(&r, "x - y^-3");
        assert_eq!((&f * &g).exact_divide(&g).unwrap(), Some(f));
    }

    #[test]
    fn dual_number_division() {
        let r = PolyRing::polynomial(&["t"], CoeffRing::DualNumbers).unwrap();
        let num = p(&r, "eps*t^2 + t");
        assert_eq!(
            num.exact_divide(&p(&r, "t")).unwrap(),
            Some(p(&r, "eps*t + 1"))
        );
        assert!(matches!(
            num.exact_divide(&p(&r, "eps*t")),
            Err(PolyError::NonUnitLeadingCoefficient)
        ));
    }

    #[test]
    fn units() {
        let r = PolyRing::laurent(&["x", "y"], &["y"], CoeffRing::Rationals).unwrap();
        assert!(p(&r, "3*y^-2").is_unit());
        assert!(!p(&r, "x").is_unit());
        assert!(!p(&r, "1 + y").is_unit());
    }

    #[test]
    fn powers() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            p(&r, "x + y").pow(3),
            p(&r, "x^3 + 3*x^2*y + 3*x*y^2 + y^3")
        );
        assert!(p(&r, "x").pow(0).is_one());
    }
}
