use serde_json::json;

use crate::cech::{cech_cohomology, Constraint, CoveredSpace, LineBundleDatum, SectionLattice};
use crate::mo::{mo_generator, AffineModulusPair, FactoredDivisor};
use crate::poly::{CoeffRing, PolyRing};
use crate::truncation::TruncationBox;

use super::snc::{snc_datum_ok, SncDatum};
use super::{TheoremError, TheoremId, TheoremVerdict};

/// Checks on the blowup of `A^(n+1)` at the origin that `R^q f_* O(i)`
/// vanishes in the box for `q > 0` and `i > -n-1`, and that `f_* O(i)` is
/// the monomial lattice of `I^max(i,0)`. For `i = -n-1` a nonzero `R^n` class
/// must appear; smaller `i` are only reported.
pub fn check_blowup_pushforward(
    n: i64,
    i_lo: i32,
    i_hi: i32,
    bound: i32,
) -> Result<TheoremVerdict, TheoremError> {
    if !(1..=2).contains(&n) {
        return Err(TheoremError::Invalid(format!(
            "n = {n}: need n + 1 in {{2, 3}}"
        )));
    }
    let space = CoveredSpace::blowup(n)?;
    let window = TruncationBox::symmetric(space.vars(), bound);
    let mut v = TheoremVerdict::new(TheoremId::Bupush)
        .param("n", n)
        .param("i_range", json!([i_lo, i_hi]))
        .with_box(window.clone());
    let nu = n as usize;
    let edge = -(n as i32) - 1;
    let mut table = serde_json::Map::new();
    for i in i_lo..=i_hi {
        let bundle = LineBundleDatum::twisted(&space, &[i])?;
        let report = cech_cohomology(&bundle, &window)?;
        if !report.d_squared_zero {
            v.fail(format!("d o d != 0 for O({i})"));
        }
        let dims = report.totals();
        table.insert(format!("O({i})"), json!(dims));
        if i > edge {
            for (q, &h) in dims.iter().enumerate().skip(1) {
                if h != 0 {
                    let e = &report.degrees[q].entries[0];
                    v.fail(format!(
                        "R^{q} f_* O({i}) has a class at {} (total {h} in box)",
                        e.monomial
                    ));
                }
            }
            let need = i.max(0);
            for r in window.points() {
                let in_ideal = r.iter().all(|&x| x >= 0) && r.iter().sum::<i32>() >= need;
                let h0 = report.dim_at(0, &r);
                if h0 != in_ideal as usize {
                    v.fail(format!(
                        "f_* O({i}) at {}: dim {h0}, I^{need} lattice gives {}",
                        crate::poly::monomial_string(space.vars(), &r),
                        in_ideal as usize
                    ));
                    break;
                }
            }
        } else if i == edge {
            match report.degrees[nu].entries.first() {
                Some(e) => v.note(format!(
                    "sharpness: R^{n} f_* O({i}) has a class at {}",
                    e.monomial
                )),
                None => v.fail(format!("no R^{n} f_* O({i}) class in the box")),
            }
        } else {
            v.note(format!(
                "O({i}) is below the vanishing range; dims reported only"
            ));
        }
    }
    v.observe("dims", serde_json::Value::Object(table));
    Ok(v)
}

/// Exponent form, over the `t` exponents, of each coordinate of chart `k`
/// of the blowup along `center`: `t_k` has exponent `sum_{b in center} r_b`,
/// every other coordinate the exponent of its own variable.
fn chart_forms(n: usize, center: &[usize], k: usize) -> Vec<Vec<i8>> {
    (0..n)
        .map(|j| {
            let mut c = vec![0i8; n];
            if j == k {
                for &b in center {
                    c[b] = 1;
                }
            } else {
                c[j] = 1;
            }
            c
        })
        .collect()
}

/// `MO` of the pulled-back modulus on the blowup of `A^n` along the
/// coordinate center, one lattice per chart, read off from the generator
/// of `MO` on each chart ring.
pub fn mo_blowup_bundle(
    vars: &[String],
    exps: &[u32],
    center: &[usize],
) -> Result<LineBundleDatum, TheoremError> {
    let n = vars.len();
    let space = CoveredSpace::blowup_along(vars, center)?;
    let mut lattices = Vec::new();
    for &k in center {
        let names: Vec<String> = (0..n)
            .map(|j| {
                if center.contains(&j) && j != k {
                    format!("{}d{}", vars[j], vars[k])
                } else {
                    vars[j].clone()
                }
            })
            .collect();
        let ring = PolyRing::polynomial(&names, CoeffRing::Rationals)?;
        let pulled: Vec<u32> = (0..n)
            .map(|j| {
                if j == k {
                    center.iter().map(|&b| exps[b]).sum()
                } else {
                    exps[j]
                }
            })
            .collect();
        let pair = AffineModulusPair::new(FactoredDivisor::monomial(&ring, &pulled)?)?;
        let gen = mo_generator(&pair)?;
        let den = gen
            .denominator
            .monomial_exponent()
            .expect("monomial denominator")
            .clone();
        let forms = chart_forms(n, center, k);
        let lattice = SectionLattice::new(
            n,
            forms.into_iter().zip(&den).map(|(c, &d)| Constraint {
                coeffs: c,
                bound: -d,
            }),
        )?;
        lattices.push(lattice);
    }
    let label = format!("MO on {}", space.label);
    Ok(LineBundleDatum::new(label, &space, lattices, vec![])?)
}

/// Pullback of `MO(A, f)` to the blowup, twisted by `twist` along the
/// exceptional divisor.
fn pulled_back_twisted(
    vars: &[String],
    exps: &[u32],
    center: &[usize],
    twist: i32,
) -> Result<LineBundleDatum, TheoremError> {
    let n = vars.len();
    let space = CoveredSpace::blowup_along(vars, center)?;
    let g: Vec<i32> = exps.iter().map(|&r| r.saturating_sub(1) as i32).collect();
    let mut lattices = Vec::new();
    for &k in center {
        let forms = chart_forms(n, center, k);
        let cs = forms.into_iter().enumerate().map(|(j, c)| {
            // exponent of coordinate j in the pulled-back generator
            let e: i32 = if j == k {
                center.iter().map(|&b| g[b]).sum()
            } else {
                g[j]
            };
            Constraint {
                coeffs: c,
                bound: -e + if j == k { twist } else { 0 },
            }
        });
        lattices.push(SectionLattice::new(n, cs)?);
    }
    Ok(LineBundleDatum::new(
        format!("f^*MO({twist})"),
        &space,
        lattices,
        vec![],
    )?)
}

/// Blowup invariance for the monomial model: `A = Q[t1..tn]`,
/// `f = prod t_a^exps[a]`, center `{t_b = 0, b in center}` (0-based). Checks
/// in the box that `H^0` of `MO` on the blowup is the lattice of `MO(A, f)`
/// and higher cohomology vanishes, and that chart by chart the bundle equals
/// the pullback of `MO(A, f)` twisted by `1 - i`, `i = |A meet B|` (no
/// twist when the center misses the divisor).
pub fn check_basic_blowup_invariance(
    exps: &[u32],
    center: &[usize],
    bound: i32,
) -> Result<TheoremVerdict, TheoremError> {
    let n = exps.len();
    let datum = SncDatum::from_indices(n, exps, center)?;
    let (a_set, b_set) = snc_datum_ok(&datum).map_err(TheoremError::NotAdmissible)?;
    if b_set.is_empty() {
        return Err(TheoremError::NotAdmissible("empty center".into()));
    }
    let vars: Vec<String> = datum.ring.vars().to_vec();
    let window = TruncationBox::symmetric(&vars, bound);
    let mut v = TheoremVerdict::new(TheoremId::Buinv)
        .param("n", n)
        .param("exponents", json!(exps))
        .param(
            "center",
            json!(b_set.iter().map(|&b| vars[b].clone()).collect::<Vec<_>>()),
        )
        .param("center_dim", n - b_set.len())
        .with_box(window.clone());

    let i = a_set.iter().filter(|(a, _)| b_set.contains(a)).count() as i32;
    let twist = if i >= 1 { 1 - i } else { 0 };
    v.observe("i", i);
    v.observe("twist", twist);

    let bundle = mo_blowup_bundle(&vars, exps, &b_set)?;
    let expected = pulled_back_twisted(&vars, exps, &b_set, twist)?;
    for (k, (l, m)) in bundle
        .lattices()
        .iter()
        .zip(expected.lattices())
        .enumerate()
    {
        if l != m {
            v.fail(format!(
                "chart {}: MO lattice {} differs from f^*MO(A, f)({twist}) lattice {}",
                bundle.space().charts()[k].name,
                l.display_with(&vars),
                m.display_with(&vars)
            ));
        }
    }

    let pair = AffineModulusPair::monomial(&vars, exps)?;
    let den = mo_generator(&pair)?
        .denominator
        .monomial_exponent()
        .expect("monomial")
        .clone();
    let report = cech_cohomology(&bundle, &window)?;
    if !report.d_squared_zero {
        v.fail("d o d != 0");
    }
    for (q, &h) in report.totals().iter().enumerate().skip(1) {
        if h != 0 {
            v.fail(format!(
                "H^{q} has a class at {}",
                report.degrees[q].entries[0].monomial
            ));
        }
    }
    for r in window.points() {
        let in_mo = r.iter().zip(&den).all(|(&x, &d)| x >= -d);
        if report.dim_at(0, &r) != in_mo as usize {
            v.fail(format!(
                "H^0 at {}: dim {}, MO(A, f) lattice gives {}",
                crate::poly::monomial_string(&vars, &r),
                report.dim_at(0, &r),
                in_mo as usize
            ));
            break;
        }
    }
    v.observe("dims", json!(report.totals()));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::VerdictStatus;

    #[test]
    fn pushforward_examples() {
        let v = check_blowup_pushforward(1, -1, 3, 4).unwrap();
        assert_eq!(v.status, VerdictStatus::Pass, "{}", v.render_text());
        let v = check_blowup_pushforward(1, -2, -2, 4).unwrap();
        assert_eq!(v.status, VerdictStatus::Pass);
        assert_eq!(v.observations["dims"]["O(-2)"][1], json!(1));
    }

    #[test]
    fn invariance_examples() {
        for (exps, center) in [
            (vec![1, 0], vec![0, 1]),
            (vec![2, 1], vec![0, 1]),
            (vec![1, 1, 0], vec![0, 1]),
        ] {
            let v = check_basic_blowup_invariance(&exps, &center, 4).unwrap();
            assert_eq!(v.status, VerdictStatus::Pass, "{}", v.render_text());
        }
        let v = check_basic_blowup_invariance(&[2, 1], &[0, 1], 3).unwrap();
        assert_eq!(v.observations["twist"], json!(-1));
    }

    #[test]
    fn center_missing_divisor() {
        let v = check_basic_blowup_invariance(&[0, 0, 2], &[0, 1], 3).unwrap();
        assert_eq!(v.status, VerdictStatus::Pass, "{}", v.render_text());
        assert_eq!(v.observations["twist"], json!(0));
    }
}
