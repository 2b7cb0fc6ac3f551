use std::sync::Arc;

use serde_json::json;

use crate::poly::{parse_poly, CoeffRing, Poly, PolyRing};

use super::{TheoremError, TheoremId, TheoremVerdict};

/// A divisor `prod p^r` and a center `{g = 0 : g in center}` on `A^n` with
/// coordinates `t1..tn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncDatum {
    pub ring: Arc<PolyRing>,
    pub divisor: Vec<(Poly, u32)>,
    pub center: Vec<Poly>,
}

impl SncDatum {
    pub fn ring_for(n: usize) -> Result<Arc<PolyRing>, TheoremError> {
        let vars: Vec<String> = (1..=n).map(|j| format!("t{j}")).collect();
        Ok(PolyRing::polynomial(&vars, CoeffRing::Rationals)?)
    }

    pub fn parse(n: usize, divisor: &[(&str, u32)], center: &[&str]) -> Result<Self, TheoremError> {
        let ring = Self::ring_for(n)?;
        let divisor = divisor
            .iter()
            .map(|(s, r)| Ok((parse_poly(&ring, s)?, *r)))
            .collect::<Result<Vec<_>, TheoremError>>()?;
        let center = center
            .iter()
            .map(|s| parse_poly(&ring, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SncDatum {
            ring,
            divisor,
            center,
        })
    }

    /// Divisor `prod t_a^exps[a]` and center `{t_b = 0, b in center}`
    /// (0-based indices).
    pub fn from_indices(n: usize, exps: &[u32], center: &[usize]) -> Result<Self, TheoremError> {
        let ring = Self::ring_for(n)?;
        let var = |j: usize| Poly::var(&ring, &ring.vars()[j]);
        let divisor = exps
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(a, &r)| Ok((var(a)?, r)))
            .collect::<Result<Vec<_>, TheoremError>>()?;
        let center = center
            .iter()
            .map(|&b| var(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SncDatum {
            ring,
            divisor,
            center,
        })
    }
}

/// Index of the variable `p` is a nonzero multiple of, if any.
fn coordinate_index(p: &Poly) -> Option<usize> {
    let e = p.monomial_exponent()?;
    let (_, c) = p.leading_term()?;
    if !c.is_unit() || !c.is_rational() {
        return None;
    }
    let nz: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0).collect();
    (nz.len() == 1 && e[nz[0]] == 1).then(|| nz[0])
}

/// Divisor components `(index, multiplicity)` and center coordinates.
pub type CoordinateForm = (Vec<(usize, u32)>, Vec<usize>);

/// `Ok((A, B))` when the datum is in coordinate form: the divisor is
/// `prod_{a in A} t_a^{r_a}` with `r_a > 0` and distinct `a`, the center is
/// `{t_b = 0, b in B}`. `A` and `B` may meet. `Err` names the first
/// offending entry.
pub fn snc_datum_ok(d: &SncDatum) -> Result<CoordinateForm, String> {
    let mut a_set: Vec<(usize, u32)> = Vec::new();
    for (p, r) in &d.divisor {
        let Some(a) = coordinate_index(p) else {
            return Err(format!("divisor component '{p}' is not a coordinate"));
        };
        if *r == 0 {
            return Err(format!("divisor component '{p}' has multiplicity 0"));
        }
        if a_set.iter().any(|(x, _)| *x == a) {
            return Err(format!("divisor component '{p}' repeated"));
        }
        a_set.push((a, *r));
    }
    let mut b_set: Vec<usize> = Vec::new();
    for g in &d.center {
        let Some(b) = coordinate_index(g) else {
            return Err(format!("center equation '{g}' is not a coordinate"));
        };
        if b_set.contains(&b) {
            return Err(format!("center equation '{g}' repeated"));
        }
        b_set.push(b);
    }
    a_set.sort_unstable();
    b_set.sort_unstable();
    Ok((a_set, b_set))
}

/// Checks that a divisor and center are a normal-crossings datum in the
/// coordinates of `A^n`.
pub fn check_snc(d: &SncDatum) -> TheoremVerdict {
    let divisor: Vec<String> = d
        .divisor
        .iter()
        .map(|(p, r)| format!("({p})^{r}"))
        .collect();
    let center: Vec<String> = d.center.iter().map(Poly::to_string).collect();
    let mut v = TheoremVerdict::new(TheoremId::Snc)
        .param("n", d.ring.nvars())
        .param("divisor", json!(divisor))
        .param("center", json!(center));
    match snc_datum_ok(d) {
        Ok((a, b)) => {
            let names = |idx: &mut dyn Iterator<Item = usize>| -> Vec<String> {
                idx.map(|i| d.ring.vars()[i].clone()).collect()
            };
            let meet: Vec<usize> = a
                .iter()
                .map(|(x, _)| *x)
                .filter(|x| b.contains(x))
                .collect();
            v.observe(
                "divisor_support",
                json!(names(&mut a.iter().map(|(x, _)| *x))),
            );
            v.observe("center_coordinates", json!(names(&mut b.iter().copied())));
            v.observe("intersection", json!(names(&mut meet.iter().copied())));
        }
        Err(w) => v.fail(w),
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::VerdictStatus;

    #[test]
    fn examples() {
        let d = SncDatum::parse(3, &[("t1", 2), ("t2", 1)], &["t1", "t3"]).unwrap();
        let v = check_snc(&d);
        assert_eq!(v.status, VerdictStatus::Pass);
        assert_eq!(v.observations["intersection"], json!(["t1"]));
        let d = SncDatum::parse(3, &[], &["t1"]).unwrap();
        assert_eq!(check_snc(&d).status, VerdictStatus::Pass);
        let d = SncDatum::parse(3, &[("t1", 1)], &["t1 + t2^2"]).unwrap();
        let v = check_snc(&d);
        assert_eq!(v.status, VerdictStatus::Fail);
        assert!(v.witness.unwrap().contains("is not a coordinate"));
    }
}
