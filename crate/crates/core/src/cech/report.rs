use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::monomial_string;
use crate::truncation::TruncationBox;

use super::{CechComplex, CechError, LineBundleDatum};

/// One term `coeff * [charts]` of a representative cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainTerm {
    pub charts: Vec<String>,
    pub coeff: String,
}

/// The part of `H^q` living in one multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceEntry {
    pub multidegree: Vec<i32>,
    pub monomial: String,
    pub dim: usize,
    pub representatives: Vec<Vec<CochainTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTable {
    pub q: usize,
    pub total: usize,
    /// Nonzero multidegrees in lexicographic order.
    pub entries: Vec<SliceEntry>,
}

/// Per-degree, per-multidegree cohomology of a line bundle inside a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub space: String,
    pub bundle: String,
    pub variables: Vec<String>,
    pub charts: Vec<String>,
    #[serde(rename = "box")]
    pub truncation_box: TruncationBox,
    pub degrees: Vec<DegreeTable>,
    pub multidegrees_scanned: usize,
    pub patterns: usize,
    pub d_squared_zero: bool,
}

impl CohomologyReport {
    /// Total dimension of `H^q` in the box, for each `q`.
    pub fn totals(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.total).collect()
    }

    pub fn total(&self, q: usize) -> usize {
        self.degrees.get(q).map_or(0, |d| d.total)
    }

    pub fn dim_at(&self, q: usize, r: &[i32]) -> usize {
        let Some(d) = self.degrees.get(q) else {
            return 0;
        };
        d.entries
            .binary_search_by(|e| e.multidegree.as_slice().cmp(r))
            .map_or(0, |i| d.entries[i].dim)
    }

    /// The monomials carrying `H^q`, one per basis element.
    pub fn basis(&self, q: usize) -> Vec<String> {
        let Some(d) = self.degrees.get(q) else {
            return Vec::new();
        };
        d.entries
            .iter()
            .flat_map(|e| {
                (0..e.dim).map(move |k| {
                    if e.dim == 1 {
                        e.monomial.clone()
                    } else {
                        format!("{} [{k}]", e.monomial)
                    }
                })
            })
            .collect()
    }

    pub fn render_text(&self, with_bases: bool) -> String {
        let mut s = format!("{}\nbox {}\n", self.bundle, self.truncation_box);
        for d in &self.degrees {
            s.push_str(&format!("H^{}: {}\n", d.q, d.total));
            if with_bases {
                for e in &d.entries {
                    let r: Vec<String> = e.multidegree.iter().map(i32::to_string).collect();
                    s.push_str(&format!(
                        "  {:<24} ({})  dim {}\n",
                        e.monomial,
                        r.join(","),
                        e.dim
                    ));
                }
            }
        }
        s.push_str(&format!(
            "{} multidegrees, {} patterns, d^2 = 0: {}\n",
            self.multidegrees_scanned, self.patterns, self.d_squared_zero
        ));
        s
    }
}

/// A box on which `H^*(P^n, O(d))` is supported: `H^0` needs every exponent
/// in `[0, d]`, `H^n` every exponent in `[d + n, -1]`, and every other
/// multidegree has acyclic slice.
pub fn projective_box(n: usize, d: i32) -> TruncationBox {
    let vars: Vec<String> = (0..=n).map(|j| format!("t{j}")).collect();
    TruncationBox::cube(&vars, (d + n as i32).min(0), d.max(0))
}

/// Cech cohomology of `bundle` at every multidegree of `window`.
pub fn cech_cohomology(
    bundle: &LineBundleDatum,
    window: &TruncationBox,
) -> Result<CohomologyReport, CechError> {
    let space = bundle.space();
    let vars = space.vars();
    if window.dim() != vars.len() {
        return Err(CechError::BoxMismatch {
            expected: vars.len(),
            got: window.dim(),
        });
    }
    for (a, v) in window.axes().iter().zip(vars) {
        if a.var != *v {
            return Err(CechError::UnknownVariable(a.var.clone()));
        }
    }
    let cx = CechComplex::new(bundle)?;
    let points: Vec<Vec<i32>> = window.points().filter(|r| bundle.in_grading(r)).collect();
    let masks: Vec<u128> = points.par_iter().map(|r| cx.violations(r)).collect();
    let distinct: BTreeSet<u128> = masks.iter().copied().collect();
    let slices: HashMap<u128, _> = distinct
        .into_par_iter()
        .map(|v| (v, cx.slice_for(v)))
        .collect();

    let m = cx.num_charts();
    let mut degrees: Vec<DegreeTable> = (0..m)
        .map(|q| DegreeTable {
            q,
            total: 0,
            entries: Vec::new(),
        })
        .collect();
    let d_squared_zero = slices.values().all(|s| s.d_squared_zero);
    for (r, v) in points.iter().zip(&masks) {
        let slice = &slices[v];
        for (q, &h) in slice.dims.iter().enumerate() {
            if h == 0 {
                continue;
            }
            let representatives = slice.representatives[q]
                .iter()
                .map(|vec| {
                    slice.basis[q]
                        .iter()
                        .zip(vec)
                        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                        .map(|(&s, x)| CochainTerm {
                            charts: cx.subset_names(s),
                            coeff: x.to_string(),
                        })
                        .collect()
                })
                .collect();
            degrees[q].total += h;
            degrees[q].entries.push(SliceEntry {
                multidegree: r.clone(),
                monomial: monomial_string(vars, r),
                dim: h,
                representatives,
            });
        }
    }
    Ok(CohomologyReport {
        space: space.label.clone(),
        bundle: bundle.label.clone(),
        variables: vars.to_vec(),
        charts: space.charts().iter().map(|c| c.name.clone()).collect(),
        truncation_box: window.clone(),
        degrees,
        multidegrees_scanned: points.len(),
        patterns: cx.patterns_computed(),
        d_squared_zero,
    })
}
