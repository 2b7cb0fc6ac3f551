//! Finite exponent boxes: the window inside which infinite graded objects
//! are compared.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An inclusive exponent interval for one variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Axis {
    pub var: String,
    pub lo: i32,
    pub hi: i32,
}

/// A product of per-variable exponent intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruncationBox {
    axes: Vec<Axis>,
}

impl TruncationBox {
    pub fn new(axes: Vec<Axis>) -> Self {
        TruncationBox { axes }
    }

    /// The same interval `[lo, hi]` on every variable.
    pub fn cube<S: AsRef<str>>(vars: &[S], lo: i32, hi: i32) -> Self {
        let axes = vars
            .iter()
            .map(|v| Axis {
                var: v.as_ref().to_string(),
                lo,
                hi,
            })
            .collect();
        TruncationBox { axes }
    }

    /// `[-b, b]` on every variable.
    pub fn symmetric<S: AsRef<str>>(vars: &[S], b: i32) -> Self {
        Self::cube(vars, -b, b)
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.iter().any(|a| a.lo > a.hi)
    }

    /// Number of lattice points.
    pub fn len(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.axes
            .iter()
            .map(|a| (a.hi - a.lo + 1) as usize)
            .product()
    }

    pub fn contains(&self, exp: &[i32]) -> bool {
        exp.len() == self.axes.len()
            && self
                .axes
                .iter()
                .zip(exp)
                .all(|(a, &e)| a.lo <= e && e <= a.hi)
    }

    /// Lattice points in lexicographic order.
    pub fn points(&self) -> BoxPoints {
        let cur = if self.is_empty() {
            None
        } else {
            Some(self.axes.iter().map(|a| a.lo).collect())
        };
        BoxPoints {
            lo: self.axes.iter().map(|a| a.lo).collect(),
            hi: self.axes.iter().map(|a| a.hi).collect(),
            cur,
        }
    }

    pub fn with_axis(mut self, axis: Axis) -> Self {
        self.axes.push(axis);
        self
    }
}

impl fmt::Display for TruncationBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .axes
            .iter()
            .map(|a| format!("{}:{}..{}", a.var, a.lo, a.hi))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Odometer over the lattice points of a box.
pub struct BoxPoints {
    lo: Vec<i32>,
    hi: Vec<i32>,
    cur: Option<Vec<i32>>,
}

impl Iterator for BoxPoints {
    type Item = Vec<i32>;

    fn next(&mut self) -> Option<Vec<i32>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("checked");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = self.lo[i];
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_visits_every_point_once() {
        let b = TruncationBox::new(vec![
            Axis {
                var: "x".into(),
                lo: -1,
                hi: 1,
            },
            Axis {
                var: "y".into(),
                lo: 0,
                hi: 1,
            },
        ]);
        let pts: Vec<_> = b.points().collect();
        assert_eq!(pts.len(), b.len());
        assert_eq!(pts.first().unwrap(), &vec![-1, 0]);
        assert_eq!(pts.last().unwrap(), &vec![1, 1]);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_and_zero_dimensional() {
        let e = TruncationBox::cube(&["x"], 1, 0);
        assert_eq!(e.points().count(), 0);
        let z = TruncationBox::new(vec![]);
        assert_eq!(z.points().collect::<Vec<_>>(), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn json_form() {
        let b = TruncationBox::symmetric(&["t"], 2);
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"[{"var":"t","lo":-2,"hi":2}]"#
        );
        assert_eq!(b.to_string(), "[t:-2..2]");
    }
}
