use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::poly::{parse_poly, CoeffRing, Poly, PolyRing};

use super::{FactoredDivisor, MoError};

/// An affine modulus pair `(A, f)`: a (Laurent) polynomial ring and a
/// factored nonzero divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineModulusPair {
    ring: Arc<PolyRing>,
    modulus: FactoredDivisor,
    f: Poly,
}

impl AffineModulusPair {
    pub fn new(modulus: FactoredDivisor) -> Result<Self, MoError> {
        let ring = modulus.ring().clone();
        let f = modulus.expand();
        match f.leading_term() {
            Some((_, c)) if c.is_unit() => {}
            _ => return Err(MoError::InvalidDivisor(format!("'{f}' is a zero divisor"))),
        }
        Ok(AffineModulusPair { ring, modulus, f })
    }

    /// Convenience for monomial moduli: `f = prod x_i^{e_i}` over `Q[vars]`.
    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[u32]) -> Result<Self, MoError> {
        let ring = PolyRing::polynomial(vars, CoeffRing::Rationals)?;
        Self::new(FactoredDivisor::monomial(&ring, exps)?)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn modulus(&self) -> &FactoredDivisor {
        &self.modulus
    }

    /// The expanded modulus `f`.
    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn coeffs(&self) -> CoeffRing {
        self.ring.coeffs()
    }

    /// `(A[t], f)` or `(A[t, 1/t], f)`.
    pub fn adjoin(&self, var: &str, invertible: bool) -> Result<Self, MoError> {
        let ring = self.ring.with_var(var, invertible)?;
        Self::new(self.modulus.embed(&ring)?)
    }

    /// `(A, f * p^r)`.
    pub fn with_factor(&self, p: Poly, r: u32) -> Result<Self, MoError> {
        Self::new(self.modulus.with_factor(p, r)?)
    }

    /// `(A, f^n)`.
    pub fn power(&self, n: u32) -> Result<Self, MoError> {
        Self::new(self.modulus.power(n))
    }

    pub fn from_spec(spec: &PairSpec) -> Result<Self, MoError> {
        let ring = PolyRing::laurent(&spec.variables, &spec.invertible, spec.coefficients)?;
        let unit = parse_poly(&ring, spec.unit.as_deref().unwrap_or("1"))?;
        let factors = spec
            .factors
            .iter()
            .map(|(s, r)| Ok((parse_poly(&ring, s)?, *r)))
            .collect::<Result<Vec<_>, MoError>>()?;
        Self::new(FactoredDivisor::new(unit, factors)?)
    }

    pub fn to_spec(&self) -> PairSpec {
        PairSpec {
            variables: self.ring.vars().to_vec(),
            invertible: self.ring.invertible_vars(),
            coefficients: self.ring.coeffs(),
            unit: Some(self.modulus.unit().to_string()),
            factors: self
                .modulus
                .factors()
                .iter()
                .map(|(p, r)| (p.to_string(), *r))
                .collect(),
        }
    }
}

impl fmt::Display for AffineModulusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ring, self.modulus)
    }
}

/// On-disk description of a modulus pair.
///
/// ```json
/// {"variables": ["x", "y"], "invertible": [], "coefficients": "rationals",
///  "unit": "1", "factors": [["x", 3], ["y", 2]]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub variables: Vec<String>,
    #[serde(default)]
    pub invertible: Vec<String>,
    #[serde(default = "default_coeffs")]
    pub coefficients: CoeffRing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default)]
    pub factors: Vec<(String, u32)>,
}

fn default_coeffs() -> CoeffRing {
    CoeffRing::Rationals
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let json = r#"{"variables": ["x", "y"], "factors": [["x", 3], ["y + 1", 2]]}"#;
        let spec: PairSpec = serde_json::from_str(json).unwrap();
        let pair = AffineModulusPair::from_spec(&spec).unwrap();
        assert_eq!(pair.f().to_string(), "x^3*y^2 + 2*x^3*y + x^3");
        let again = AffineModulusPair::from_spec(&pair.to_spec()).unwrap();
        assert_eq!(again, pair);
    }

    #[test]
    fn dual_number_pairs() {
        let spec = PairSpec {
            variables: vec!["t".into()],
            invertible: vec![],
            coefficients: CoeffRing::DualNumbers,
            unit: None,
            factors: vec![("t".into(), 1)],
        };
        let pair = AffineModulusPair::from_spec(&spec).unwrap();
        assert_eq!(pair.coeffs(), CoeffRing::DualNumbers);
    }

    #[test]
    fn unknown_fields_rejected() {
        let json = r#"{"variables": ["x"], "factor": [["x", 1]]}"#;
        assert!(serde_json::from_str::<PairSpec>(json).is_err());
    }
}
