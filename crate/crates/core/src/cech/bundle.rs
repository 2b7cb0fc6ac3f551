use serde::{Deserialize, Serialize};

use super::{CechError, CoveredSpace, SectionLattice, TwistSlot};

/// A line bundle on a covered space: one section lattice per chart and a
/// value for every grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBundleDatum {
    pub label: String,
    space: CoveredSpace,
    lattices: Vec<SectionLattice>,
    grading_values: Vec<i32>,
}

impl LineBundleDatum {
    /// Explicit per-chart lattices. Every constraint direction must carry
    /// the same bound on all charts that use it, so that sections on an
    /// intersection are well defined.
    pub fn new(
        label: impl Into<String>,
        space: &CoveredSpace,
        lattices: Vec<SectionLattice>,
        grading_values: Vec<i32>,
    ) -> Result<Self, CechError> {
        if lattices.len() != space.charts().len() {
            return Err(CechError::LengthMismatch {
                expected: space.charts().len(),
                got: lattices.len(),
            });
        }
        if grading_values.len() != space.gradings().len() {
            return Err(CechError::LengthMismatch {
                expected: space.gradings().len(),
                got: grading_values.len(),
            });
        }
        let n = space.vars().len();
        for (i, l) in lattices.iter().enumerate() {
            if l.nvars() != n {
                return Err(CechError::LengthMismatch {
                    expected: n,
                    got: l.nvars(),
                });
            }
            for c in l.constraints() {
                for other in &lattices[..i] {
                    if let Some(b) = other.bound_of(&c.coeffs) {
                        if b != c.bound {
                            return Err(CechError::Incompatible(c.display_with(space.vars())));
                        }
                    }
                }
            }
        }
        Ok(LineBundleDatum {
            label: label.into(),
            space: space.clone(),
            lattices,
            grading_values,
        })
    }

    /// The structure sheaf: chart coordinate rings, all gradings zero.
    pub fn structure_sheaf(space: &CoveredSpace) -> Self {
        Self::twisted(space, &vec![0; space.twist_slots().len()]).expect("zero twist")
    }

    /// `O(twists)`, one integer per twist slot of the space.
    pub fn twisted(space: &CoveredSpace, twists: &[i32]) -> Result<Self, CechError> {
        let slots = space.twist_slots();
        if twists.len() != slots.len() {
            return Err(CechError::LengthMismatch {
                expected: slots.len(),
                got: twists.len(),
            });
        }
        let mut lattices: Vec<SectionLattice> =
            space.charts().iter().map(|c| c.lattice.clone()).collect();
        let mut values = vec![0; space.gradings().len()];
        for (slot, &d) in slots.iter().zip(twists) {
            match slot {
                TwistSlot::Grading(g) => values[*g] = d,
                TwistSlot::Divisor(coeffs) => {
                    for l in &mut lattices {
                        *l = l.shifted(coeffs, d);
                    }
                }
            }
        }
        let label = if twists.is_empty() {
            format!("O on {}", space.label)
        } else {
            let t: Vec<String> = twists.iter().map(i32::to_string).collect();
            format!("O({}) on {}", t.join(","), space.label)
        };
        Self::new(label, space, lattices, values)
    }

    pub fn space(&self) -> &CoveredSpace {
        &self.space
    }

    pub fn lattices(&self) -> &[SectionLattice] {
        &self.lattices
    }

    pub fn grading_values(&self) -> &[i32] {
        &self.grading_values
    }

    /// True when `r` has the prescribed value under every grading.
    pub fn in_grading(&self, r: &[i32]) -> bool {
        self.space
            .gradings()
            .iter()
            .zip(&self.grading_values)
            .all(|(g, &v)| g.value(r) == v as i64)
    }

    /// Lattice of sections over the intersection of the charts in `subset`.
    pub fn intersection(&self, subset: &[usize]) -> SectionLattice {
        let mut it = subset.iter();
        let first = it.next().expect("nonempty subset");
        it.fold(self.lattices[*first].clone(), |acc, &i| {
            acc.common(&self.lattices[i])
        })
    }

    /// The same bundle with charts in the order `perm`.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self, CechError> {
        let space = self.space.reordered(perm)?;
        let lattices = perm.iter().map(|&i| self.lattices[i].clone()).collect();
        Self::new(
            self.label.clone(),
            &space,
            lattices,
            self.grading_values.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::Constraint;

    #[test]
    fn blowup_twist_raises_exceptional_bound() {
        let b = CoveredSpace::blowup(1).unwrap();
        let o1 = LineBundleDatum::twisted(&b, &[1]).unwrap();
        let global = o1.intersection(&[0, 1]);
        assert!(global.contains(&[1, 0]));
        assert!(!global.contains(&[0, 0]));
    }

    #[test]
    fn incompatible_bounds_rejected() {
        let p = CoveredSpace::projective(1).unwrap();
        let l0 = SectionLattice::new(2, [Constraint::var_at_least(2, 1, 0)]).unwrap();
        let l1 = SectionLattice::new(2, [Constraint::var_at_least(2, 1, -1)]).unwrap();
        assert!(matches!(
            LineBundleDatum::new("x", &p, vec![l0, l1], vec![0]),
            Err(CechError::Incompatible(_))
        ));
    }
}
