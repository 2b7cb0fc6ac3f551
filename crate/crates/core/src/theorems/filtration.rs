use serde_json::json;

use crate::cech::{
    cech_cohomology, Chart, Constraint, CoveredSpace, LineBundleDatum, SectionLattice,
};
use crate::mo::{mo_generator, AffineModulusPair};
use crate::truncation::TruncationBox;

use super::{TheoremError, TheoremId, TheoremVerdict};

/// `MO` of `(P^1, n * infinity)` as a bundle on the two standard charts, in
/// the exponent of `t`. On `U0 = Spec Q[t]` the modulus is trivial; on
/// `U1 = Spec Q[s]`, `s = 1/t`, it is `s^n`.
fn filtration_bundle(n: u32) -> Result<LineBundleDatum, TheoremError> {
    let u0 = AffineModulusPair::monomial(&["t"], &[0])?;
    let u1 = AffineModulusPair::monomial(&["s"], &[n])?;
    let d0 = mo_generator(&u0)?
        .denominator
        .monomial_exponent()
        .expect("monomial")[0];
    let d1 = mo_generator(&u1)?
        .denominator
        .monomial_exponent()
        .expect("monomial")[0];
    let charts = vec![
        Chart {
            name: "U0".into(),
            lattice: SectionLattice::new(1, [Constraint::new(vec![1], -d0)?])?,
        },
        // s^k = t^-k, so the bound on the s exponent reads -t >= -d1
        Chart {
            name: "U1".into(),
            lattice: SectionLattice::new(1, [Constraint::new(vec![-1], -d1)?])?,
        },
    ];
    let space = CoveredSpace::new(
        format!("(P^1, {n}*inf)"),
        vec!["t".into()],
        charts,
        vec![],
        vec![],
    )?;
    Ok(LineBundleDatum::structure_sheaf(&space))
}

/// For `n = 1..=n_max`: `H^0(P^1, MO) = O((n-1) inf)` has dimension `n`
/// with basis `1, t, .., t^(n-1)`, the bases increase with `n`, `H^1`
/// vanishes, and the union over `n` is every power of `t` in the window.
/// Each dimension is cross-checked against `O(n-1)` on the projective cover.
pub fn check_filtration_exhaustive(n_max: u32) -> Result<TheoremVerdict, TheoremError> {
    if n_max == 0 {
        return Err(TheoremError::Invalid("n_max must be at least 1".into()));
    }
    let reach = n_max as i32 + 1;
    let window = TruncationBox::cube(&["t"], -reach, reach);
    let mut v = TheoremVerdict::new(TheoremId::Filtration)
        .param("n_max", n_max)
        .with_box(window.clone());
    let p1 = CoveredSpace::projective(1)?;
    let mut dims = Vec::new();
    let mut previous: Vec<String> = Vec::new();
    for n in 1..=n_max {
        let report = cech_cohomology(&filtration_bundle(n)?, &window)?;
        if !report.d_squared_zero {
            v.fail(format!("d o d != 0 at n = {n}"));
        }
        let h0 = report.total(0);
        dims.push(h0);
        if h0 != n as usize {
            v.fail(format!("n = {n}: dim H^0 = {h0}, expected {n}"));
        }
        if report.total(1) != 0 {
            v.fail(format!(
                "n = {n}: H^1 has a class at {}",
                report.degrees[1].entries[0].monomial
            ));
        }
        let expected: Vec<Vec<i32>> = (0..n as i32).map(|k| vec![k]).collect();
        let got: Vec<Vec<i32>> = report.degrees[0]
            .entries
            .iter()
            .map(|e| e.multidegree.clone())
            .collect();
        if got != expected {
            v.fail(format!(
                "n = {n}: H^0 basis {:?} is not 1, t, .., t^{}",
                report.basis(0),
                n - 1
            ));
        }
        let basis = report.basis(0);
        if let Some(lost) = previous.iter().find(|b| !basis.contains(b)) {
            v.fail(format!(
                "n = {n}: basis element {lost} of the previous step is missing"
            ));
        }
        previous = basis;
        let twist = n as i32 - 1;
        let proj = cech_cohomology(
            &LineBundleDatum::twisted(&p1, &[twist])?,
            &crate::cech::projective_box(1, twist),
        )?;
        if proj.totals() != report.totals() {
            v.fail(format!(
                "n = {n}: dims {:?} differ from O({twist}) on P^1, {:?}",
                report.totals(),
                proj.totals()
            ));
        }
    }
    if n_max == 1 {
        v.note("n = 1 is the tame case: MO = O");
    }
    v.observe("dims", json!(dims));
    v.observe("union_basis", json!(previous));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::VerdictStatus;

    #[test]
    fn dims_one_to_six() {
        let v = check_filtration_exhaustive(6).unwrap();
        assert_eq!(v.status, VerdictStatus::Pass, "{}", v.render_text());
        assert_eq!(v.observations["dims"], json!([1, 2, 3, 4, 5, 6]));
        assert_eq!(
            v.observations["union_basis"],
            json!(["1", "t", "t^2", "t^3", "t^4", "t^5"])
        );
    }

    #[test]
    fn three() {
        let b = filtration_bundle(3).unwrap();
        let r = cech_cohomology(&b, &TruncationBox::cube(&["t"], -5, 5)).unwrap();
        assert_eq!(r.basis(0), vec!["1", "t", "t^2"]);
    }
}
