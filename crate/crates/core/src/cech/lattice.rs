use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CechError;

/// The half-space `sum coeffs[j] * r_j >= bound` with `coeffs` in {-1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<i8>,
    pub bound: i32,
}

impl Constraint {
    pub fn new(coeffs: Vec<i8>, bound: i32) -> Result<Self, CechError> {
        if let Some(&c) = coeffs.iter().find(|&&c| !(-1..=1).contains(&c)) {
            return Err(CechError::BadCoefficient(c as i32));
        }
        Ok(Constraint { coeffs, bound })
    }

    /// `r_j >= bound`.
    pub fn var_at_least(n: usize, j: usize, bound: i32) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[j] = 1;
        Constraint { coeffs, bound }
    }

    /// `sum_{j in idx} r_j >= bound`.
    pub fn sum_at_least(n: usize, idx: &[usize], bound: i32) -> Self {
        let mut coeffs = vec![0; n];
        for &j in idx {
            coeffs[j] = 1;
        }
        Constraint { coeffs, bound }
    }

    pub fn value(&self, r: &[i32]) -> i64 {
        self.coeffs
            .iter()
            .zip(r)
            .map(|(&c, &x)| c as i64 * x as i64)
            .sum()
    }

    pub fn holds(&self, r: &[i32]) -> bool {
        self.value(r) >= self.bound as i64
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        let mut s = String::new();
        for (v, &c) in vars.iter().zip(&self.coeffs) {
            match (c, s.is_empty()) {
                (0, _) => continue,
                (1, true) => s.push_str(v),
                (-1, true) => s.push_str(&format!("-{v}")),
                (1, false) => s.push_str(&format!(" + {v}")),
                (_, _) => s.push_str(&format!(" - {v}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        format!("{s} >= {}", self.bound)
    }
}

/// A set of monomials `t^r` cut out by finitely many constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionLattice {
    nvars: usize,
    constraints: BTreeSet<Constraint>,
}

impl SectionLattice {
    /// All Laurent monomials.
    pub fn full(nvars: usize) -> Self {
        SectionLattice {
            nvars,
            constraints: BTreeSet::new(),
        }
    }

    pub fn new(
        nvars: usize,
        constraints: impl IntoIterator<Item = Constraint>,
    ) -> Result<Self, CechError> {
        let mut set = BTreeSet::new();
        for c in constraints {
            if c.coeffs.len() != nvars {
                return Err(CechError::LengthMismatch {
                    expected: nvars,
                    got: c.coeffs.len(),
                });
            }
            Constraint::new(c.coeffs.clone(), c.bound)?;
            if c.coeffs.iter().all(|&x| x == 0) && c.bound <= 0 {
                continue;
            }
            set.insert(c);
        }
        Ok(SectionLattice {
            nvars,
            constraints: set,
        })
    }

    /// Polynomial monomials: every exponent nonnegative.
    pub fn nonnegative(nvars: usize) -> Self {
        SectionLattice {
            nvars,
            constraints: (0..nvars)
                .map(|j| Constraint::var_at_least(nvars, j, 0))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constraints(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter()
    }

    pub fn contains(&self, r: &[i32]) -> bool {
        self.constraints.iter().all(|c| c.holds(r))
    }

    /// The lattice of a chart intersection: the constraints shared by both.
    pub fn common(&self, other: &Self) -> Self {
        SectionLattice {
            nvars: self.nvars,
            constraints: self
                .constraints
                .intersection(&other.constraints)
                .cloned()
                .collect(),
        }
    }

    /// The constraint with the given coefficient vector, if present.
    pub fn bound_of(&self, coeffs: &[i8]) -> Option<i32> {
        self.constraints
            .iter()
            .find(|c| c.coeffs == coeffs)
            .map(|c| c.bound)
    }

    /// Adds `delta` to the bound of the constraint with these coefficients.
    pub fn shifted(&self, coeffs: &[i8], delta: i32) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                if c.coeffs == coeffs {
                    Constraint {
                        coeffs: c.coeffs.clone(),
                        bound: c.bound + delta,
                    }
                } else {
                    c.clone()
                }
            })
            .collect();
        SectionLattice {
            nvars: self.nvars,
            constraints,
        }
    }

    /// Appends variables on which no constraint is imposed.
    pub fn extended(&self, extra: usize) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = c.coeffs.clone();
                coeffs.extend(std::iter::repeat_n(0, extra));
                Constraint {
                    coeffs,
                    bound: c.bound,
                }
            })
            .collect();
        SectionLattice {
            nvars: self.nvars + extra,
            constraints,
        }
    }

    pub fn with(mut self, c: Constraint) -> Result<Self, CechError> {
        if c.coeffs.len() != self.nvars {
            return Err(CechError::LengthMismatch {
                expected: self.nvars,
                got: c.coeffs.len(),
            });
        }
        self.constraints.insert(c);
        Ok(self)
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        if self.constraints.is_empty() {
            return "{}".into();
        }
        let parts: Vec<String> = self
            .constraints
            .iter()
            .map(|c| c.display_with(vars))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for SectionLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("r{i}")).collect();
        f.write_str(&self.display_with(&vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_common_constraints() {
        let a = SectionLattice::new(
            2,
            [
                Constraint::var_at_least(2, 1, 0),
                Constraint::sum_at_least(2, &[0, 1], 1),
            ],
        )
        .unwrap();
        let b = SectionLattice::new(
            2,
            [
                Constraint::var_at_least(2, 0, 0),
                Constraint::sum_at_least(2, &[0, 1], 1),
            ],
        )
        .unwrap();
        assert!(a.contains(&[-1, 2]));
        assert!(!a.contains(&[1, -1]));
        let ab = a.common(&b);
        assert_eq!(ab.constraints().count(), 1);
        assert!(ab.contains(&[3, -2]));
        assert!(!ab.contains(&[0, 0]));
    }

    #[test]
    fn coefficients_are_restricted() {
        assert!(Constraint::new(vec![2, 0], 0).is_err());
        let vars = vec!["x".to_string(), "y".to_string()];
        assert_eq!(
            Constraint::new(vec![1, -1], -2)
                .unwrap()
                .display_with(&vars),
            "x - y >= -2"
        );
    }
}
