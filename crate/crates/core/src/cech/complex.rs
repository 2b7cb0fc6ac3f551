use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::linalg::{extend_basis, Matrix};
use crate::poly::Rational;

use super::{CechError, Constraint, LineBundleDatum};

/// A Cech cochain concentrated in one multidegree: a rational value on each
/// chart subset (bitmask over chart indices) of size `q + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub q: usize,
    pub multidegree: Vec<i32>,
    pub values: BTreeMap<u32, Rational>,
}

impl Cochain {
    /// Multiplication by the monomial `t^m`: same values, shifted degree.
    pub fn shifted(&self, m: &[i32]) -> Cochain {
        Cochain {
            q: self.q,
            multidegree: self.multidegree.iter().zip(m).map(|(a, b)| a + b).collect(),
            values: self.values.clone(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Cochain {
        let values = self
            .values
            .iter()
            .map(|(&s, v)| (s, v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Cochain {
            q: self.q,
            multidegree: self.multidegree.clone(),
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }
}

/// Cohomology of the complex at one multidegree. It depends only on which
/// chart subsets contain the monomial, so it is shared between all
/// multidegrees with the same pattern.
#[derive(Clone, Debug)]
pub struct SliceCohomology {
    /// Basis of `C^q`: chart subsets of size `q + 1`, by increasing mask.
    pub basis: Vec<Vec<u32>>,
    /// `d_q : C^q -> C^(q+1)`.
    pub differentials: Vec<Matrix>,
    /// `h^q`.
    pub dims: Vec<usize>,
    /// Cocycles whose classes form a basis of `H^q`.
    pub representatives: Vec<Vec<Vec<Rational>>>,
    pub d_squared_zero: bool,
}

impl SliceCohomology {
    fn compute(m: usize, family: &[bool]) -> SliceCohomology {
        let mut basis: Vec<Vec<u32>> = vec![Vec::new(); m];
        for s in 1u32..(1 << m) {
            if family[s as usize] {
                basis[s.count_ones() as usize - 1].push(s);
            }
        }
        let index: Vec<HashMap<u32, usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let mut differentials = Vec::with_capacity(m.saturating_sub(1));
        for q in 0..m.saturating_sub(1) {
            let mut d = Matrix::zeros(basis[q + 1].len(), basis[q].len());
            for (row, &t) in basis[q + 1].iter().enumerate() {
                let elems: Vec<u32> = (0..m as u32).filter(|&i| t & (1 << i) != 0).collect();
                for (pos, &e) in elems.iter().enumerate() {
                    if let Some(&col) = index[q].get(&(t & !(1 << e))) {
                        d[(row, col)] = if pos % 2 == 0 {
                            Rational::from_integer(1.into())
                        } else {
                            Rational::from_integer((-1).into())
                        };
                    }
                }
            }
            differentials.push(d);
        }
        let d_squared_zero = differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero());
        let ranks: Vec<usize> = differentials.iter().map(Matrix::rank).collect();
        let mut dims = Vec::with_capacity(m);
        let mut representatives = Vec::with_capacity(m);
        for q in 0..m {
            let c = basis[q].len();
            let out_rank = ranks.get(q).copied().unwrap_or(0);
            let in_rank = if q == 0 { 0 } else { ranks[q - 1] };
            let h = c - out_rank - in_rank;
            dims.push(h);
            if h == 0 {
                representatives.push(Vec::new());
                continue;
            }
            let kernel = match differentials.get(q) {
                Some(d) => d.kernel(),
                None => {
                    let id = Matrix::identity(c);
                    (0..c).map(|j| id.column(j)).collect()
                }
            };
            let image: Vec<Vec<Rational>> = if q == 0 {
                Vec::new()
            } else {
                (0..differentials[q - 1].cols())
                    .map(|j| differentials[q - 1].column(j))
                    .collect()
            };
            let chosen = extend_basis(c, &image, &kernel);
            debug_assert_eq!(chosen.len(), h);
            representatives.push(chosen.into_iter().map(|i| kernel[i].clone()).collect());
        }
        SliceCohomology {
            basis,
            differentials,
            dims,
            representatives,
            d_squared_zero,
        }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The Cech complex of a line bundle, evaluated lazily per multidegree.
pub struct CechComplex {
    bundle: LineBundleDatum,
    constraints: Vec<Constraint>,
    /// For each chart subset, the constraints common to all its charts.
    common: Vec<u128>,
    by_violation: Mutex<HashMap<u128, Arc<SliceCohomology>>>,
    by_family: Mutex<HashMap<Vec<bool>, Arc<SliceCohomology>>>,
}

impl CechComplex {
    pub fn new(bundle: &LineBundleDatum) -> Result<Self, CechError> {
        let m = bundle.lattices().len();
        if m > 16 {
            return Err(CechError::TooManyCharts(m));
        }
        let mut constraints: Vec<Constraint> = Vec::new();
        for l in bundle.lattices() {
            for c in l.constraints() {
                if !constraints.contains(c) {
                    constraints.push(c.clone());
                }
            }
        }
        constraints.sort();
        if constraints.len() > 128 {
            return Err(CechError::TooManyConstraints(constraints.len()));
        }
        let chart_masks: Vec<u128> = bundle
            .lattices()
            .iter()
            .map(|l| {
                l.constraints()
                    .map(|c| 1u128 << constraints.iter().position(|d| d == c).expect("collected"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        let common: Vec<u128> = (0usize..(1 << m))
            .map(|s| {
                if s == 0 {
                    return 0;
                }
                (0..m)
                    .filter(|&i| s & (1 << i) != 0)
                    .fold(u128::MAX, |acc, i| acc & chart_masks[i])
            })
            .collect();
        Ok(CechComplex {
            bundle: bundle.clone(),
            constraints,
            common,
            by_violation: Mutex::new(HashMap::new()),
            by_family: Mutex::new(HashMap::new()),
        })
    }

    pub fn bundle(&self) -> &LineBundleDatum {
        &self.bundle
    }

    pub fn num_charts(&self) -> usize {
        self.bundle.lattices().len()
    }

    /// Bitmask of the constraints that `t^r` violates.
    pub fn violations(&self, r: &[i32]) -> u128 {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.holds(r))
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Which chart subsets (indexed by mask) have `t^r` as a section.
    pub fn family_of_violations(&self, v: u128) -> Vec<bool> {
        self.common
            .iter()
            .enumerate()
            .map(|(s, &c)| s != 0 && c & v == 0)
            .collect()
    }

    /// Cohomology of the slice with the given violation pattern.
    pub fn slice_for(&self, v: u128) -> Arc<SliceCohomology> {
        if let Some(s) = self.by_violation.lock().expect("memo").get(&v) {
            return s.clone();
        }
        let family = self.family_of_violations(v);
        let cached = self.by_family.lock().expect("memo").get(&family).cloned();
        let slice = match cached {
            Some(s) => s,
            None => {
                let s = Arc::new(SliceCohomology::compute(self.num_charts(), &family));
                self.by_family
                    .lock()
                    .expect("memo")
                    .entry(family)
                    .or_insert(s)
                    .clone()
            }
        };
        self.by_violation
            .lock()
            .expect("memo")
            .insert(v, slice.clone());
        slice
    }

    /// The slice at `r`, or `None` when `r` is off the grading.
    pub fn slice(&self, r: &[i32]) -> Option<Arc<SliceCohomology>> {
        self.bundle
            .in_grading(r)
            .then(|| self.slice_for(self.violations(r)))
    }

    /// Number of distinct subset patterns computed so far.
    pub fn patterns_computed(&self) -> usize {
        self.by_family.lock().expect("memo").len()
    }

    /// Representative cocycles of a basis of `H^q` at `r`.
    pub fn representatives(&self, r: &[i32], q: usize) -> Vec<Cochain> {
        let Some(slice) = self.slice(r) else {
            return Vec::new();
        };
        let Some(reps) = slice.representatives.get(q) else {
            return Vec::new();
        };
        reps.iter()
            .map(|v| Cochain {
                q,
                multidegree: r.to_vec(),
                values: slice.basis[q]
                    .iter()
                    .zip(v)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(&s, x)| (s, x.clone()))
                    .collect(),
            })
            .collect()
    }

    /// Coordinates of the class of `c` in the basis given by
    /// [`CechComplex::representatives`]; `Ok(None)` if `c` is not a cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<Option<Vec<Rational>>, CechError> {
        let Some(slice) = self.slice(&c.multidegree) else {
            return if c.is_zero() {
                Ok(Some(Vec::new()))
            } else {
                Err(CechError::Invalid(format!(
                    "degree {:?} is off the grading",
                    c.multidegree
                )))
            };
        };
        let m = self.num_charts();
        if c.q >= m {
            return Err(CechError::Invalid(format!("no cochains in degree {}", c.q)));
        }
        let basis = &slice.basis[c.q];
        let mut vec = vec![Rational::zero(); basis.len()];
        for (s, x) in &c.values {
            if x.is_zero() {
                continue;
            }
            match basis.iter().position(|b| b == s) {
                Some(i) => vec[i] = x.clone(),
                None => {
                    return Err(CechError::Invalid(format!(
                        "chart subset {s:#b} has no section of degree {:?}",
                        c.multidegree
                    )))
                }
            }
        }
        if let Some(d) = slice.differentials.get(c.q) {
            if !d.mul_vec(&vec).iter().all(Zero::is_zero) {
                return Ok(None);
            }
        }
        let reps = &slice.representatives[c.q];
        let mut cols: Vec<Vec<Rational>> = reps.clone();
        if c.q > 0 {
            let d = &slice.differentials[c.q - 1];
            cols.extend((0..d.cols()).map(|j| d.column(j)));
        }
        let a = Matrix::from_columns(basis.len(), &cols);
        let x = a.solve(&vec).ok_or_else(|| {
            CechError::Invalid("cocycle outside span of representatives and coboundaries".into())
        })?;
        Ok(Some(x[..reps.len()].to_vec()))
    }

    /// Names of the charts in a subset mask, in chart order.
    pub fn subset_names(&self, s: u32) -> Vec<String> {
        self.bundle
            .space()
            .charts()
            .iter()
            .enumerate()
            .filter(|(i, _)| s & (1 << i) != 0)
            .map(|(_, c)| c.name.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::CoveredSpace;

    #[test]
    fn projective_line_slices() {
        let p1 = CoveredSpace::projective(1).unwrap();
        let b = LineBundleDatum::twisted(&p1, &[-2]).unwrap();
        let cx = CechComplex::new(&b).unwrap();
        assert_eq!(cx.slice(&[-1, -1]).unwrap().dims, vec![0, 1]);
        assert_eq!(cx.slice(&[0, -2]).unwrap().dims, vec![0, 0]);
        assert!(cx.slice(&[0, 0]).is_none());
        let rep = &cx.representatives(&[-1, -1], 1)[0];
        assert_eq!(cx.class_of(rep).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn coboundaries_have_zero_class() {
        let p2 = CoveredSpace::projective(2).unwrap();
        let b = LineBundleDatum::twisted(&p2, &[0]).unwrap();
        let cx = CechComplex::new(&b).unwrap();
        // degree (1, -1, 0): sections on subsets containing chart 1
        let slice = cx.slice(&[1, -1, 0]).unwrap();
        assert!(slice.d_squared_zero);
        assert_eq!(slice.total(), 0);
        let d0 = &slice.differentials[0];
        let x: Vec<Rational> = (0..d0.cols())
            .map(|i| Rational::from_integer((i as i64 + 1).into()))
            .collect();
        let y = d0.mul_vec(&x);
        let c = Cochain {
            q: 1,
            multidegree: vec![1, -1, 0],
            values: slice.basis[1].iter().cloned().zip(y).collect(),
        };
        assert_eq!(cx.class_of(&c).unwrap(), Some(vec![]));
    }
}
