use std::fmt;
use std::sync::Arc;

use super::coeff::CoeffRing;
use super::PolyError;

/// A (Laurent) polynomial ring `R[x_1, .., x_n][x_j^-1 : j invertible]`
/// over `R` in {Q, Q[eps]/(eps^2)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    invertible: Vec<bool>,
    coeffs: CoeffRing,
}

impl PolyRing {
    /// Plain polynomial ring, no inverted variables.
    pub fn polynomial<S: AsRef<str>>(
        vars: &[S],
        coeffs: CoeffRing,
    ) -> Result<Arc<Self>, PolyError> {
        Self::laurent(vars, &[] as &[&str], coeffs)
    }

    pub fn laurent<S: AsRef<str>, T: AsRef<str>>(
        vars: &[S],
        invertible: &[T],
        coeffs: CoeffRing,
    ) -> Result<Arc<Self>, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || v == "eps" {
                return Err(PolyError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        let mut inv = vec![false; vars.len()];
        for name in invertible {
            let name = name.as_ref().trim();
            match vars.iter().position(|v| v == name) {
                Some(i) => inv[i] = true,
                None => return Err(PolyError::UnknownVariable(name.to_string())),
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            invertible: inv,
            coeffs,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn coeffs(&self) -> CoeffRing {
        self.coeffs
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn invertible_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .zip(&self.invertible)
            .filter(|(_, &b)| b)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// True when every variable with a negative exponent is invertible.
    pub fn admits(&self, exp: &[i32]) -> bool {
        exp.iter()
            .zip(&self.invertible)
            .all(|(&e, &inv)| e >= 0 || inv)
    }

    /// Same variables and coefficients, with `extra` appended as a new
    /// variable (invertible or not).
    pub fn with_var(&self, extra: &str, invertible: bool) -> Result<Arc<Self>, PolyError> {
        let mut vars = self.vars.clone();
        vars.push(extra.to_string());
        let mut inv: Vec<String> = self.invertible_vars();
        if invertible {
            inv.push(extra.to_string());
        }
        Self::laurent(&vars, &inv, self.coeffs)
    }

    /// Same variables with a different set of inverted ones.
    pub fn with_invertible<T: AsRef<str>>(&self, invertible: &[T]) -> Result<Arc<Self>, PolyError> {
        Self::laurent(&self.vars, invertible, self.coeffs)
    }

    pub fn with_coeffs(&self, coeffs: CoeffRing) -> Arc<Self> {
        Arc::new(PolyRing {
            coeffs,
            ..self.clone()
        })
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.coeffs {
            CoeffRing::Rationals => "Q",
            CoeffRing::DualNumbers => "Q[eps]/(eps^2)",
        };
        write!(f, "{base}[")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if self.invertible[i] {
                write!(f, "{v}^+-1")?;
            } else {
                f.write_str(v)?;
            }
        }
        f.write_str("]")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
