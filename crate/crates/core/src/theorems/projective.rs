use serde_json::json;

use crate::cech::{cech_cohomology, projective_box, CoveredSpace, LineBundleDatum};

use super::{TheoremError, TheoremId, TheoremVerdict};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

/// Compares `h^q(P^n, O(d))` for `d` in `[d_lo, d_hi]` with the closed
/// forms: `C(n+d, n)` in degree 0, `C(-d-1, n)` in degree n, zero elsewhere.
/// Also checks the shape of the bases: `H^0` by monomials of degree `d`,
/// `H^n` by monomials with every exponent negative.
pub fn check_projective_cohomology(
    n: i64,
    d_lo: i32,
    d_hi: i32,
) -> Result<TheoremVerdict, TheoremError> {
    if !(1..=3).contains(&n) {
        return Err(TheoremError::Invalid(format!("n = {n} outside 1..=3")));
    }
    if d_lo > d_hi {
        return Err(TheoremError::Invalid(format!(
            "empty twist range [{d_lo}, {d_hi}]"
        )));
    }
    let space = CoveredSpace::projective(n)?;
    let nu = n as usize;
    let mut v = TheoremVerdict::new(TheoremId::Projcoh)
        .param("n", n)
        .param("d_range", json!([d_lo, d_hi]));
    let mut table = serde_json::Map::new();
    for d in d_lo..=d_hi {
        let bundle = LineBundleDatum::twisted(&space, &[d])?;
        let window = projective_box(nu, d);
        let report = cech_cohomology(&bundle, &window)?;
        if !report.d_squared_zero {
            v.fail(format!("d o d != 0 for O({d})"));
        }
        let dims = report.totals();
        for (q, &h) in dims.iter().enumerate() {
            let expected = if q == 0 {
                binomial(n + d as i64, n)
            } else if q == nu {
                binomial(-(d as i64) - 1, n)
            } else {
                0
            } as usize;
            if h != expected {
                v.fail(format!(
                    "h^{q}(P^{n}, O({d})) = {h}, closed form gives {expected}"
                ));
            }
        }
        for e in &report.degrees[0].entries {
            if e.multidegree.iter().any(|&x| x < 0) {
                v.fail(format!(
                    "H^0(P^{n}, O({d})) has non-polynomial basis element {}",
                    e.monomial
                ));
            }
        }
        for e in &report.degrees[nu].entries {
            if e.multidegree.iter().any(|&x| x >= 0) {
                v.fail(format!(
                    "H^{n}(P^{n}, O({d})) has basis element {} not of the form a/(t0..tn)",
                    e.monomial
                ));
            }
        }
        table.insert(format!("O({d})"), json!(dims));
    }
    v.observe("dims", serde_json::Value::Object(table));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::VerdictStatus;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(-1, 0), 0);
    }

    #[test]
    fn examples() {
        assert_eq!(
            check_projective_cohomology(2, -6, 6).unwrap().status,
            VerdictStatus::Pass
        );
        let v = check_projective_cohomology(1, 0, 0).unwrap();
        assert_eq!(v.observations["dims"]["O(0)"], json!([1, 0]));
        let v = check_projective_cohomology(3, -5, -5).unwrap();
        assert_eq!(v.observations["dims"]["O(-5)"], json!([0, 0, 0, 4]));
        assert!(check_projective_cohomology(4, 0, 0).is_err());
    }
}
