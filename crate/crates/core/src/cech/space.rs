use serde::{Deserialize, Serialize};

use super::{CechError, Constraint, SectionLattice};

/// An open chart and the monomial lattice of its coordinate ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub name: String,
    pub lattice: SectionLattice,
}

/// A linear form `sum coeffs[j] * r_j` fixed to a value by the line bundle
/// (the homogeneous degree on a projective factor).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading {
    pub coeffs: Vec<i8>,
}

impl Grading {
    pub fn value(&self, r: &[i32]) -> i64 {
        self.coeffs
            .iter()
            .zip(r)
            .map(|(&c, &x)| c as i64 * x as i64)
            .sum()
    }
}

/// What a twist parameter acts on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistSlot {
    /// Sets the value of a grading: `O(d)` on a projective factor.
    Grading(usize),
    /// Raises the bound of every chart constraint with these coefficients:
    /// `O(i)` along a toric divisor such as the exceptional divisor.
    Divisor(Vec<i8>),
}

/// A toric space given by a chart cover. Sections over an intersection of
/// charts are the monomials satisfying the constraints common to all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveredSpace {
    pub label: String,
    vars: Vec<String>,
    charts: Vec<Chart>,
    gradings: Vec<Grading>,
    twists: Vec<TwistSlot>,
}

impl CoveredSpace {
    pub fn new(
        label: impl Into<String>,
        vars: Vec<String>,
        charts: Vec<Chart>,
        gradings: Vec<Grading>,
        twists: Vec<TwistSlot>,
    ) -> Result<Self, CechError> {
        let n = vars.len();
        if charts.is_empty() {
            return Err(CechError::Invalid(
                "a cover needs at least one chart".into(),
            ));
        }
        if charts.len() > 16 {
            return Err(CechError::TooManyCharts(charts.len()));
        }
        for c in &charts {
            if c.lattice.nvars() != n {
                return Err(CechError::LengthMismatch {
                    expected: n,
                    got: c.lattice.nvars(),
                });
            }
        }
        for (i, c) in charts.iter().enumerate() {
            if charts[..i].iter().any(|d| d.name == c.name) {
                return Err(CechError::Invalid(format!(
                    "chart name '{}' repeated",
                    c.name
                )));
            }
        }
        for g in &gradings {
            if g.coeffs.len() != n {
                return Err(CechError::LengthMismatch {
                    expected: n,
                    got: g.coeffs.len(),
                });
            }
        }
        for t in &twists {
            match t {
                TwistSlot::Grading(g) if *g >= gradings.len() => {
                    return Err(CechError::Invalid(format!(
                        "twist refers to missing grading {g}"
                    )))
                }
                TwistSlot::Divisor(c) if c.len() != n => {
                    return Err(CechError::LengthMismatch {
                        expected: n,
                        got: c.len(),
                    })
                }
                _ => {}
            }
        }
        Ok(CoveredSpace {
            label: label.into(),
            vars,
            charts,
            gradings,
            twists,
        })
    }

    /// Standard cover of `P^n` by the charts `t_k != 0`, variables `t0..tn`.
    pub fn projective(n: i64) -> Result<Self, CechError> {
        if n < 1 {
            return Err(CechError::InvalidDimension(n));
        }
        let n = n as usize;
        let vars: Vec<String> = (0..=n).map(|j| format!("t{j}")).collect();
        let charts = (0..=n)
            .map(|k| Chart {
                name: format!("U{k}"),
                lattice: SectionLattice::new(
                    n + 1,
                    (0..=n)
                        .filter(|&j| j != k)
                        .map(|j| Constraint::var_at_least(n + 1, j, 0)),
                )
                .expect("valid"),
            })
            .collect();
        let gradings = vec![Grading {
            coeffs: vec![1; n + 1],
        }];
        Self::new(
            format!("P^{n}"),
            vars,
            charts,
            gradings,
            vec![TwistSlot::Grading(0)],
        )
    }

    /// Blowup of `A^(n+1)` (variables `t0..tn`) at the origin.
    pub fn blowup(n: i64) -> Result<Self, CechError> {
        if n < 1 {
            return Err(CechError::InvalidDimension(n));
        }
        let vars: Vec<String> = (0..=n).map(|j| format!("t{j}")).collect();
        let center: Vec<usize> = (0..=n as usize).collect();
        let mut s = Self::blowup_along(&vars, &center)?;
        s.label = format!("Bl_0 A^{}", n + 1);
        Ok(s)
    }

    /// Blowup of affine space along the coordinate subspace `{t_b = 0, b in
    /// center}`. Chart `k` (for `k` in the center) has coordinates `t_k`,
    /// `t_b / t_k` and the untouched `t_j`; the exponent of `t_k` there is
    /// `sum_{b in center} r_b`, which carries the exceptional twist.
    pub fn blowup_along<S: AsRef<str>>(vars: &[S], center: &[usize]) -> Result<Self, CechError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let n = vars.len();
        let mut center = center.to_vec();
        center.sort_unstable();
        center.dedup();
        if center.is_empty() || center.iter().any(|&b| b >= n) {
            return Err(CechError::Invalid(format!(
                "center {center:?} is not a set of variable indices"
            )));
        }
        let exc = Constraint::sum_at_least(n, &center, 0);
        let mut charts = Vec::new();
        for &k in &center {
            let mut cs: Vec<Constraint> = (0..n)
                .filter(|&j| j != k)
                .map(|j| Constraint::var_at_least(n, j, 0))
                .collect();
            cs.push(exc.clone());
            charts.push(Chart {
                name: format!("U_{}", vars[k]),
                lattice: SectionLattice::new(n, cs)?,
            });
        }
        let label = format!(
            "Bl_{{{}}} A^{n}",
            center
                .iter()
                .map(|&b| vars[b].as_str())
                .collect::<Vec<_>>()
                .join(",")
        );
        Self::new(
            label,
            vars,
            charts,
            vec![],
            vec![TwistSlot::Divisor(exc.coeffs)],
        )
    }

    /// `X x P^1`, with new homogeneous variables `s0, s1` and one new twist
    /// slot for the `P^1` degree.
    pub fn product_with_line(&self) -> Result<Self, CechError> {
        let n = self.vars.len();
        let mut vars = self.vars.clone();
        let (s0, s1) = fresh_pair(&vars);
        vars.push(s0);
        vars.push(s1);
        let mut charts = Vec::new();
        for c in &self.charts {
            for a in 0..2 {
                // V0 inverts s0 (so s1 >= 0), V1 inverts s1
                let other = if a == 0 { n + 1 } else { n };
                let lattice =
                    c.lattice
                        .extended(2)
                        .with(Constraint::var_at_least(n + 2, other, 0))?;
                charts.push(Chart {
                    name: format!("{}*V{a}", c.name),
                    lattice,
                });
            }
        }
        let mut gradings: Vec<Grading> = self
            .gradings
            .iter()
            .map(|g| {
                let mut coeffs = g.coeffs.clone();
                coeffs.extend([0, 0]);
                Grading { coeffs }
            })
            .collect();
        let mut line = vec![0; n + 2];
        line[n] = 1;
        line[n + 1] = 1;
        gradings.push(Grading { coeffs: line });
        let mut twists: Vec<TwistSlot> = self
            .twists
            .iter()
            .map(|t| match t {
                TwistSlot::Grading(g) => TwistSlot::Grading(*g),
                TwistSlot::Divisor(c) => {
                    let mut c = c.clone();
                    c.extend([0, 0]);
                    TwistSlot::Divisor(c)
                }
            })
            .collect();
        twists.push(TwistSlot::Grading(gradings.len() - 1));
        Self::new(
            format!("{} x P^1", self.label),
            vars,
            charts,
            gradings,
            twists,
        )
    }

    /// A point: no variables, one chart.
    pub fn point() -> Self {
        Self::new(
            "pt",
            vec![],
            vec![Chart {
                name: "P".into(),
                lattice: SectionLattice::full(0),
            }],
            vec![],
            vec![],
        )
        .expect("valid")
    }

    /// A single affine chart whose sections are the given lattice.
    pub fn affine<S: AsRef<str>>(vars: &[S], lattice: SectionLattice) -> Result<Self, CechError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Self::new(
            format!("A^{}", vars.len()),
            vars,
            vec![Chart {
                name: "A".into(),
                lattice,
            }],
            vec![],
            vec![],
        )
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn twist_slots(&self) -> &[TwistSlot] {
        &self.twists
    }

    /// The same space with charts listed in the order `perm`.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self, CechError> {
        let mut seen = vec![false; self.charts.len()];
        if perm.len() != self.charts.len()
            || perm
                .iter()
                .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
        {
            return Err(CechError::Invalid(format!(
                "{perm:?} is not a permutation of the charts"
            )));
        }
        let mut s = self.clone();
        s.charts = perm.iter().map(|&i| self.charts[i].clone()).collect();
        Ok(s)
    }

    /// Charts in name order.
    pub fn canonical(&self) -> Self {
        let mut s = self.clone();
        s.charts.sort_by(|a, b| a.name.cmp(&b.name));
        s
    }
}

fn fresh_pair(vars: &[String]) -> (String, String) {
    let mut base = "s".to_string();
    while vars
        .iter()
        .any(|v| *v == format!("{base}0") || *v == format!("{base}1"))
    {
        base.push('_');
    }
    (format!("{base}0"), format!("{base}1"))
}
