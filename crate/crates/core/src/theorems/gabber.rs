use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cech::{cech_cohomology, projective_box, CechComplex, CoveredSpace, LineBundleDatum};
use crate::linalg::Matrix;
use crate::poly::{parse_poly, CoeffRing, Poly, PolyRing, Rational};

use super::{TheoremError, TheoremId, TheoremVerdict};

/// Cohomology of `O_E(i)` for the plane cubic `E = V(F)`, read off the long
/// exact sequence of `0 -> O(i-3) -F-> O(i) -> O_E(i) -> 0` on `P^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabberRow {
    pub i: i32,
    /// `h^0(P^2, O(i))`.
    pub h0_ambient: usize,
    /// `rank(F : H^0(O(i-3)) -> H^0(O(i)))`.
    pub rank_h0: usize,
    /// `h^2(P^2, O(i-3))` and `h^2(P^2, O(i))`.
    pub h2_source: usize,
    pub h2_target: usize,
    /// `rank(F : H^2(O(i-3)) -> H^2(O(i)))`.
    pub rank_h2: usize,
    /// `h^0(E, O_E(i))`.
    pub h0: usize,
    /// `h^1(E, O_E(i)) = dim ker(F on H^2)`.
    pub h1: usize,
    /// Kernel basis of `F` on `H^2(O(i-3))`, each vector written as a sum of
    /// the `H^2` basis monomials.
    pub kernel: Vec<String>,
}

/// `Q[t0, t1, t2]`, the homogeneous coordinate ring of `P^2`.
pub fn cubic_ring() -> Arc<PolyRing> {
    PolyRing::polynomial(&["t0", "t1", "t2"], CoeffRing::Rationals).expect("valid ring")
}

/// `t0^3 + t1^3 + t2^3`.
pub fn fermat_cubic() -> Poly {
    parse_poly(&cubic_ring(), "t0^3 + t1^3 + t2^3").expect("valid cubic")
}

fn validate(cubic: &Poly) -> Result<(), TheoremError> {
    if cubic.ring().vars() != cubic_ring().vars() || cubic.ring().coeffs() != CoeffRing::Rationals {
        return Err(TheoremError::Invalid(format!(
            "cubic must be over {}",
            cubic_ring()
        )));
    }
    if cubic.is_zero() {
        return Err(TheoremError::Invalid("zero cubic".into()));
    }
    if let Some((e, _)) = cubic
        .terms()
        .find(|(e, _)| e.iter().sum::<i32>() != 3 || e.iter().any(|&x| x < 0))
    {
        return Err(TheoremError::Invalid(format!(
            "'{cubic}' is not homogeneous of degree 3 (term of degree {:?})",
            e
        )));
    }
    Ok(())
}

/// Matrix of multiplication by `F` from `H^q(O(i-3))` to `H^q(O(i))`, with
/// the basis monomials of the source.
fn multiplication(
    space: &CoveredSpace,
    cubic: &Poly,
    i: i32,
    q: usize,
) -> Result<(Matrix, Vec<String>), TheoremError> {
    let src = LineBundleDatum::twisted(space, &[i - 3])?;
    let tgt = LineBundleDatum::twisted(space, &[i])?;
    let src_report = cech_cohomology(&src, &projective_box(2, i - 3))?;
    let tgt_report = cech_cohomology(&tgt, &projective_box(2, i))?;
    let src_cx = CechComplex::new(&src)?;
    let tgt_cx = CechComplex::new(&tgt)?;
    let mut row_of: HashMap<Vec<i32>, usize> = HashMap::new();
    let mut rows = 0;
    for e in &tgt_report.degrees[q].entries {
        row_of.insert(e.multidegree.clone(), rows);
        rows += e.dim;
    }
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for e in &src_report.degrees[q].entries {
        for rep in src_cx.representatives(&e.multidegree, q) {
            let mut col = vec![Rational::zero(); rows];
            for (m, c) in cubic.terms() {
                let image = rep.shifted(m).scaled(&c.re);
                let class = tgt_cx.class_of(&image)?.ok_or_else(|| {
                    TheoremError::Invalid("image of a cocycle is not a cocycle".into())
                })?;
                if class.iter().all(Zero::is_zero) {
                    continue;
                }
                let Some(&row) = row_of.get(&image.multidegree) else {
                    return Err(TheoremError::Invalid(format!(
                        "class in degree {:?} outside the target box",
                        image.multidegree
                    )));
                };
                for (k, x) in class.into_iter().enumerate() {
                    col[row + k] += x;
                }
            }
            columns.push(col);
            labels.push(e.monomial.clone());
        }
    }
    Ok((Matrix::from_columns(rows, &columns), labels))
}

/// One row per twist `i` in `[i_lo, i_hi]`.
pub fn gabber_rows(cubic: &Poly, i_lo: i32, i_hi: i32) -> Result<Vec<GabberRow>, TheoremError> {
    validate(cubic)?;
    let space = CoveredSpace::projective(2)?;
    let mut rows = Vec::new();
    for i in i_lo..=i_hi {
        let (m0, _) = multiplication(&space, cubic, i, 0)?;
        let (m2, labels) = multiplication(&space, cubic, i, 2)?;
        let rank_h0 = m0.rank();
        let rank_h2 = m2.rank();
        let kernel = if m2.cols() == 0 {
            Vec::new()
        } else {
            m2.kernel()
                .into_iter()
                .map(|v| {
                    let one = Rational::from_integer(1.into());
                    let mut s = String::new();
                    for (x, l) in v.iter().zip(&labels).filter(|(x, _)| !x.is_zero()) {
                        let (sign, mag) = if x < &Rational::zero() {
                            ("-", -x.clone())
                        } else {
                            ("+", x.clone())
                        };
                        if s.is_empty() {
                            s.push_str(if sign == "-" { "-" } else { "" });
                        } else {
                            s.push_str(&format!(" {sign} "));
                        }
                        if mag == one {
                            s.push_str(l);
                        } else {
                            s.push_str(&format!("{mag}*{l}"));
                        }
                    }
                    s
                })
                .collect()
        };
        rows.push(GabberRow {
            i,
            h0_ambient: m0.rows(),
            rank_h0,
            h2_source: m2.cols(),
            h2_target: m2.rows(),
            rank_h2,
            h0: m0.rows() - rank_h0,
            h1: m2.cols() - rank_h2,
            kernel,
        });
    }
    Ok(rows)
}

/// The affine cone over the plane cubic `V(F)`: computes `h^*(E, O_E(i))`
/// for `i` in `[i_lo, i_hi]` (which must contain 0), checks Riemann-Roch
/// `h^0 - h^1 = 3i` on every row, and certifies `h^1(E, O_E) = 1`. That
/// class gives a nonzero class in `H^1` of `MO` on the blowup of the cone,
/// so blowup invariance fails there. Only this lower bound is certified.
///
/// Smoothness of `E` is not checked. A cubic divisible by a coordinate is
/// reported without a claim.
pub fn counterexample_gabber(
    cubic: &Poly,
    i_lo: i32,
    i_hi: i32,
) -> Result<TheoremVerdict, TheoremError> {
    if !(i_lo..=i_hi).contains(&0) {
        return Err(TheoremError::Invalid(format!(
            "twist range [{i_lo}, {i_hi}] must contain 0"
        )));
    }
    let rows = gabber_rows(cubic, i_lo, i_hi)?;
    let mut v = TheoremVerdict::new(TheoremId::Gabber)
        .param("cubic", cubic.to_string())
        .param("i_range", json!([i_lo, i_hi]));
    for r in &rows {
        if r.h0 as i64 - r.h1 as i64 != 3 * r.i as i64 {
            v.fail(format!(
                "i = {}: h0 - h1 = {} - {}, Riemann-Roch gives {}",
                r.i,
                r.h0,
                r.h1,
                3 * r.i
            ));
        }
    }
    let table: serde_json::Map<String, serde_json::Value> = rows
        .iter()
        .map(|r| (format!("O_E({})", r.i), json!([r.h0, r.h1])))
        .collect();
    v.observe("dims", serde_json::Value::Object(table));
    let min = cubic.min_exponents();
    if min.iter().any(|&x| x > 0) {
        v.fail(format!(
            "cubic {cubic} contains a coordinate line: degenerate, no claim"
        ));
        return Ok(v);
    }
    v.note("smoothness of the cubic is not verified");
    let r0 = rows.iter().find(|r| r.i == 0).expect("range contains 0");
    v.observe("h1_basis", json!(r0.kernel));
    if r0.h1 == 1 {
        v.witnessed(format!(
            "H^1(E, O_E) = <{}> = ker(F: H^2(O(-3)) -> H^2(O)), so H^1(BE, MO_B) != 0",
            r0.kernel[0]
        ));
    } else {
        v.fail(format!("h^1(E, O_E) = {}, expected 1", r0.h1));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::VerdictStatus;

    #[test]
    fn fermat() {
        let rows = gabber_rows(&fermat_cubic(), -3, 3).unwrap();
        let by_i = |i: i32| rows.iter().find(|r| r.i == i).unwrap();
        assert_eq!(by_i(0).h1, 1);
        assert_eq!(by_i(0).kernel, vec!["t0^-1*t1^-1*t2^-1".to_string()]);
        assert_eq!(by_i(1).h1, 0);
        assert_eq!(by_i(1).h2_source, 0);
        assert_eq!(by_i(3).h0, 9);
        assert_eq!(by_i(-2).h1, 6);
        let v = counterexample_gabber(&fermat_cubic(), -3, 3).unwrap();
        assert_eq!(
            v.status,
            VerdictStatus::StrictInclusionWitnessed,
            "{}",
            v.render_text()
        );
    }

    #[test]
    fn degenerate_cubics() {
        let r = cubic_ring();
        assert!(counterexample_gabber(&Poly::zero(&r), -1, 1).is_err());
        assert!(counterexample_gabber(&parse_poly(&r, "t0^2 + t1^3").unwrap(), -1, 1).is_err());
        let v = counterexample_gabber(&parse_poly(&r, "t0*t1*t2").unwrap(), -1, 1).unwrap();
        assert_eq!(v.status, VerdictStatus::Fail);
        assert!(v.witness.unwrap().contains("no claim"));
    }
}
