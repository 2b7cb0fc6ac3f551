use std::fmt;
use std::sync::Arc;

use crate::poly::{Poly, PolyRing};

use super::MoError;

/// A modulus `f = u * p_1^r_1 * .. * p_m^r_m` with declared, pairwise
/// non-associate irreducible factors `p_i` and a unit `u`.
///
/// Irreducibility is taken on trust; only non-associateness, non-units and
/// positive multiplicities are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredDivisor {
    ring: Arc<PolyRing>,
    unit: Poly,
    factors: Vec<(Poly, u32)>,
}

impl FactoredDivisor {
    pub fn new(unit: Poly, factors: Vec<(Poly, u32)>) -> Result<Self, MoError> {
        let ring = unit.ring().clone();
        if !unit.is_unit() {
            return Err(MoError::InvalidDivisor(format!("'{unit}' is not a unit")));
        }
        let mut unit = unit;
        let mut kept: Vec<(Poly, u32)> = Vec::new();
        for (p, r) in factors {
            if **p.ring() != *ring {
                return Err(MoError::InvalidDivisor(format!(
                    "factor '{p}' is over {}",
                    p.ring()
                )));
            }
            if r == 0 {
                return Err(MoError::InvalidDivisor(format!(
                    "factor '{p}' has multiplicity 0"
                )));
            }
            if !p.is_rational() {
                return Err(MoError::InvalidDivisor(format!(
                    "factor '{p}' has eps coefficients"
                )));
            }
            if p.is_zero() {
                return Err(MoError::InvalidDivisor("zero factor".into()));
            }
            if p.is_unit() {
                // inverted variables (and scalars) fold into the unit
                unit = &unit * &p.pow(r);
                continue;
            }
            for (q, _) in &kept {
                if associates(q, &p)? {
                    return Err(MoError::InvalidDivisor(format!(
                        "factors '{q}' and '{p}' are associate"
                    )));
                }
            }
            kept.push((p, r));
        }
        Ok(FactoredDivisor {
            ring,
            unit,
            factors: kept,
        })
    }

    /// The trivial modulus `f = 1`.
    pub fn one(ring: &Arc<PolyRing>) -> Self {
        FactoredDivisor {
            ring: ring.clone(),
            unit: Poly::one(ring),
            factors: Vec::new(),
        }
    }

    /// `prod x_i^{e_i}`, each variable with positive exponent becoming a factor.
    pub fn monomial(ring: &Arc<PolyRing>, exps: &[u32]) -> Result<Self, MoError> {
        let mut factors = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                factors.push((Poly::var(ring, &ring.vars()[i])?, e));
            }
        }
        Self::new(Poly::one(ring), factors)
    }

    /// Factors a monomial polynomial variable by variable.
    pub fn from_monomial_poly(f: &Poly) -> Result<Self, MoError> {
        let ring = f.ring().clone();
        let Some(exp) = f.monomial_exponent() else {
            return Err(MoError::InvalidDivisor(format!(
                "'{f}' is not a monomial; give its factorization explicitly"
            )));
        };
        let (_, c) = f.leading_term().expect("monomial");
        if !c.is_unit() {
            return Err(MoError::InvalidDivisor(format!("'{f}' is a zero divisor")));
        }
        let mut unit_exp = vec![0; ring.nvars()];
        let mut factors = Vec::new();
        for (i, &e) in exp.iter().enumerate() {
            if ring.is_invertible(i) {
                unit_exp[i] = e;
            } else if e > 0 {
                factors.push((Poly::var(&ring, &ring.vars()[i])?, e as u32));
            }
        }
        let unit = Poly::monomial(&ring, unit_exp, c.clone())?;
        Self::new(unit, factors)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, r)| *r).max().unwrap_or(0)
    }

    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, r)| &acc * &p.pow(*r))
    }

    /// `sqrt(f) = prod p_i`, read off the declared factorization.
    pub fn radical(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(&self.ring), |acc, (p, _)| &acc * p)
    }

    /// `prod p_i^(r_i - 1)`, the denominator of the generator of `MO(A, f)`.
    pub fn generator_denominator(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(&self.ring), |acc, (p, r)| &acc * &p.pow(r - 1))
    }

    /// `f^n`, multiplicities scaled by `n`.
    pub fn power(&self, n: u32) -> Self {
        FactoredDivisor {
            ring: self.ring.clone(),
            unit: self.unit.pow(n),
            factors: self
                .factors
                .iter()
                .map(|(p, r)| (p.clone(), r * n))
                .collect(),
        }
    }

    /// `f * p^r` for a new factor `p`.
    pub fn with_factor(&self, p: Poly, r: u32) -> Result<Self, MoError> {
        let mut factors = self.factors.clone();
        factors.push((p, r));
        Self::new(self.unit.clone(), factors)
    }

    /// The same factorization read in a ring containing all our variables.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Self, MoError> {
        let unit = self.unit.embed(target)?;
        let factors = self
            .factors
            .iter()
            .map(|(p, r)| Ok((p.embed(target)?, *r)))
            .collect::<Result<Vec<_>, MoError>>()?;
        Self::new(unit, factors)
    }

    /// True when every factor is a single variable.
    pub fn is_monomial(&self) -> bool {
        self.factors.iter().all(|(p, _)| {
            p.monomial_exponent().is_some_and(|e| {
                e.iter().filter(|&&x| x != 0).count() == 1 && e.iter().all(|&x| x == 0 || x == 1)
            })
        })
    }

    /// Exponent vector of the non-unit part when every factor is a variable.
    pub fn monomial_exponents(&self) -> Option<Vec<u32>> {
        if !self.is_monomial() {
            return None;
        }
        let mut out = vec![0; self.ring.nvars()];
        for (p, r) in &self.factors {
            let e = p.monomial_exponent().expect("monomial");
            let i = e.iter().position(|&x| x == 1).expect("variable");
            out[i] += r;
        }
        Some(out)
    }
}

fn associates(p: &Poly, q: &Poly) -> Result<bool, MoError> {
    Ok(match p.exact_divide(q)? {
        Some(u) => u.is_unit(),
        None => false,
    })
}

impl fmt::Display for FactoredDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(wrap(&self.unit));
        }
        for (p, r) in &self.factors {
            if *r == 1 {
                parts.push(wrap(p));
            } else {
                parts.push(format!("{}^{r}", wrap(p)));
            }
        }
        f.write_str(&parts.join("*"))
    }
}

fn wrap(p: &Poly) -> String {
    if p.num_terms() > 1 || (p.leading_term().is_some_and(|(_, c)| !c.is_one()) && !p.is_constant())
    {
        format!("({p})")
    } else {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, CoeffRing};

    fn ring() -> Arc<PolyRing> {
        PolyRing::polynomial(&["x", "y"], CoeffRing::Rationals).unwrap()
    }

    #[test]
    fn monomial_radical_and_generator() {
        let r = ring();
        let f = FactoredDivisor::monomial(&r, &[3, 2]).unwrap();
        assert_eq!(f.expand(), parse_poly(&r, "x^3*y^2").unwrap());
        assert_eq!(f.radical(), parse_poly(&r, "x*y").unwrap());
        assert_eq!(f.generator_denominator(), parse_poly(&r, "x^2*y").unwrap());
        assert_eq!(f.to_string(), "x^3*y^2");
    }

    #[test]
    fn associate_factors_rejected() {
        let r = ring();
        let p = parse_poly(&r, "x + y").unwrap();
        let q = parse_poly(&r, "2*x + 2*y").unwrap();
        assert!(FactoredDivisor::new(Poly::one(&r), vec![(p, 1), (q, 2)]).is_err());
    }

    #[test]
    fn units_fold_into_unit_part() {
        let r = PolyRing::laurent(&["x", "y"], &["y"], CoeffRing::Rationals).unwrap();
        let f = FactoredDivisor::from_monomial_poly(&parse_poly(&r, "x^2*y^3").unwrap()).unwrap();
        assert_eq!(f.factors().len(), 1);
        assert_eq!(f.expand(), parse_poly(&r, "x^2*y^3").unwrap());
        assert_eq!(f.radical(), parse_poly(&r, "x").unwrap());
    }

    #[test]
    fn non_monomials_need_factors() {
        let r = ring();
        assert!(FactoredDivisor::from_monomial_poly(&parse_poly(&r, "x + 1").unwrap()).is_err());
    }
}
