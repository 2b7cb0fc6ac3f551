use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::mo::{
    check_divisor_shift, check_exhaustion, check_poly_extension, AffineModulusPair,
    FactoredDivisor, MembershipOptions,
};
use crate::poly::{CoeffRing, Poly, PolyRing};

use super::blowup::{check_basic_blowup_invariance, check_blowup_pushforward};
use super::cube::check_cube_invariance;
use super::examples::{
    base_change_case, counterexample_flat_base_change, counterexample_nonreduced, BaseChangeCase,
};
use super::filtration::check_filtration_exhaustive;
use super::gabber::{counterexample_gabber, fermat_cubic};
use super::projective::check_projective_cohomology;
use super::snc::{check_snc, snc_datum_ok, SncDatum};
use super::{AggregateReport, TheoremError, TheoremId, TheoremVerdict, VerdictStatus};

/// Parameters shared by every checker in a run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Half-width of the truncation boxes.
    pub box_bound: i32,
    /// Seed for the random cube pairs.
    pub seed: u64,
    /// Cubic for the cone example; the Fermat cubic when unset.
    pub cubic: Option<Poly>,
    /// Record wall-clock time per verdict.
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            box_bound: 6,
            seed: 0,
            cubic: None,
            timing: false,
        }
    }
}

/// Twelve fixed monomial pairs plus two drawn from `seed`.
pub fn default_cube_pairs(seed: u64) -> Vec<AffineModulusPair> {
    let fixed: [(&[&str], &[u32]); 10] = [
        (&[], &[]),
        (&["x"], &[0]),
        (&["x"], &[1]),
        (&["x"], &[2]),
        (&["x"], &[4]),
        (&["x", "y"], &[1, 1]),
        (&["x", "y"], &[3, 1]),
        (&["x", "y"], &[2, 2]),
        (&["x", "y"], &[0, 3]),
        (&["x", "y", "z"], &[1, 2, 1]),
    ];
    let mut pairs: Vec<AffineModulusPair> = fixed
        .iter()
        .map(|(v, e)| AffineModulusPair::monomial(v, e).expect("valid pair"))
        .collect();
    for (f, inv) in [("x^2", "y"), ("x^3*y^2", "y")] {
        let ring =
            PolyRing::laurent(&["x", "y"], &[inv], CoeffRing::Rationals).expect("valid ring");
        let f = crate::poly::parse_poly(&ring, f).expect("valid modulus");
        pairs.push(
            AffineModulusPair::new(FactoredDivisor::from_monomial_poly(&f).expect("monomial"))
                .expect("valid pair"),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2 {
        let n = rng.gen_range(1..=2);
        let vars = &["x", "y"][..n];
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        pairs.push(AffineModulusPair::monomial(vars, &exps).expect("valid pair"));
    }
    pairs
}

/// The normal-crossings table: datum and whether it should be accepted.
fn snc_table() -> Vec<(SncDatum, bool)> {
    type Row<'a> = (usize, &'a [(&'a str, u32)], &'a [&'a str], bool);
    let rows: [Row; 8] = [
        (2, &[("t1", 1)], &["t1", "t2"], true),
        (2, &[("t1", 2), ("t2", 1)], &["t1", "t2"], true),
        (3, &[("t1", 1), ("t2", 1)], &["t1", "t2"], true),
        (3, &[("t1", 2), ("t2", 1)], &["t1", "t3"], true),
        (3, &[], &["t1"], true),
        (2, &[("t1 + t2", 1)], &["t1", "t2"], false),
        (3, &[("t1", 1)], &["t1 + t2^2"], false),
        (2, &[("t1", 1), ("2*t1", 2)], &["t2"], false),
    ];
    rows.iter()
        .map(|(n, d, c, ok)| (SncDatum::parse(*n, d, c).expect("table datum"), *ok))
        .collect()
}

/// Folds sub-checks into one verdict for `id`. A sub-check matches when it
/// ends in the status it expects (a counterexample must find its witness).
fn merge(
    id: TheoremId,
    cases: Vec<(String, Result<TheoremVerdict, TheoremError>)>,
    detail: bool,
) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(id);
    v.observe("cases", cases.len());
    for (label, case) in cases {
        match case {
            Err(e) => v.fail(format!("{label}: {e}")),
            Ok(c) => {
                if c.status != c.expected {
                    let what = c
                        .witness
                        .clone()
                        .unwrap_or_else(|| format!("status {}", c.status));
                    v.fail(format!("{label}: expected {}, got {what}", c.expected));
                }
                if detail {
                    v.observe(&label, json!(c.observations));
                }
            }
        }
    }
    v
}

fn merge_extra(
    id: TheoremId,
    cases: Vec<(String, Result<TheoremVerdict, crate::mo::MoError>)>,
) -> TheoremVerdict {
    merge(
        id,
        cases
            .into_iter()
            .map(|(l, r)| (l, r.map_err(TheoremError::from)))
            .collect(),
        true,
    )
}

fn extra_pairs() -> Vec<AffineModulusPair> {
    let dual = PolyRing::polynomial(&["t"], CoeffRing::DualNumbers).expect("valid ring");
    vec![
        AffineModulusPair::monomial(&["x"], &[2]).expect("valid pair"),
        AffineModulusPair::monomial(&["x", "y"], &[1, 3]).expect("valid pair"),
        AffineModulusPair::new(FactoredDivisor::monomial(&dual, &[1]).expect("valid"))
            .expect("valid pair"),
    ]
}

fn run_inner(id: TheoremId, cfg: &SuiteConfig) -> Result<TheoremVerdict, TheoremError> {
    let b = cfg.box_bound;
    if b < 1 {
        return Err(TheoremError::Invalid(format!(
            "box bound {b} must be positive"
        )));
    }
    let mut v = match id {
        TheoremId::Projcoh => {
            let cases = (1..=3)
                .map(|n| (format!("P^{n}"), check_projective_cohomology(n, -b, b)))
                .collect();
            merge(id, cases, true).param("d_range", json!([-b, b]))
        }
        TheoremId::Bupush => {
            let cases = (1..=2)
                .map(|n| {
                    (
                        format!("Bl_0 A^{}", n + 1),
                        check_blowup_pushforward(n, -(n as i32) - 1, 3, b),
                    )
                })
                .collect();
            merge(id, cases, true).param("box", b)
        }
        TheoremId::Buinv => {
            let mut data: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
            for n in [2usize, 3] {
                let mut centers: Vec<Vec<usize>> = vec![(0..n).collect()];
                if n == 3 {
                    centers.extend([vec![0, 1], vec![0, 2], vec![1, 2]]);
                }
                for code in 0..4u32.pow(n as u32) {
                    let exps: Vec<u32> = (0..n).map(|j| (code / 4u32.pow(j as u32)) % 4).collect();
                    for c in &centers {
                        let datum = SncDatum::from_indices(n, &exps, c)?;
                        if snc_datum_ok(&datum).is_ok() {
                            data.push((exps.clone(), c.clone()));
                        }
                    }
                }
            }
            let cases = data
                .par_iter()
                .map(|(e, c)| {
                    (
                        format!("exps {e:?} center {c:?}"),
                        check_basic_blowup_invariance(e, c, b),
                    )
                })
                .collect();
            merge(id, cases, false)
                .param("exponents", "{0..3}^n, n in {2, 3}")
                .param("box", b)
        }
        TheoremId::Cube => {
            let pairs = default_cube_pairs(cfg.seed);
            let cases = pairs
                .par_iter()
                .map(|p| (p.to_string(), check_cube_invariance(p, b)))
                .collect();
            merge(id, cases, false).param("box", b)
        }
        TheoremId::Filtration => check_filtration_exhaustive(b as u32)?,
        TheoremId::Gabber => {
            let cubic = cfg.cubic.clone().unwrap_or_else(fermat_cubic);
            counterexample_gabber(&cubic, -3, b)?
        }
        TheoremId::Nonreduced => {
            let mut main =
                counterexample_nonreduced(CoeffRing::DualNumbers, MembershipOptions::default())?;
            let reduced =
                counterexample_nonreduced(CoeffRing::Rationals, MembershipOptions::default())?;
            if !reduced.is_expected() {
                main.fail(format!(
                    "reduced analogue: {}",
                    reduced.witness.unwrap_or_default()
                ));
            }
            for bound in [1, 4] {
                let other = counterexample_nonreduced(
                    CoeffRing::DualNumbers,
                    MembershipOptions {
                        search_bound: bound,
                    },
                )?;
                if other.witness != main.witness {
                    main.fail(format!(
                        "search bound {bound} gives witness {:?}",
                        other.witness
                    ));
                }
            }
            main.observe(
                "reduced_kernel_dims",
                reduced.observations["kernel_dims"].clone(),
            );
            main
        }
        TheoremId::Flatbc => {
            let mut main = counterexample_flat_base_change()?;
            let mut others = serde_json::Map::new();
            for case in [
                BaseChangeCase::Cube,
                BaseChangeCase::Identity,
                BaseChangeCase::Localization,
            ] {
                let c = base_change_case(case, b as u32)?;
                if !c.is_expected() {
                    main.fail(format!(
                        "{}: expected {}, got {}",
                        json!(case),
                        c.expected,
                        c.status
                    ));
                }
                others.insert(
                    json!(case).as_str().expect("string").to_string(),
                    json!({"status": c.status, "image": c.observations["image_generator"], "target": c.observations["target_generator"]}),
                );
            }
            main.observe("other_cases", serde_json::Value::Object(others));
            main
        }
        TheoremId::Snc => {
            let cases = snc_table()
                .into_iter()
                .map(|(d, ok)| {
                    let expect = if ok {
                        VerdictStatus::Pass
                    } else {
                        VerdictStatus::Fail
                    };
                    let c = check_snc(&d).expecting(expect);
                    let label = format!(
                        "{} / {}",
                        json!(c.parameters["divisor"]),
                        json!(c.parameters["center"])
                    );
                    (label, Ok(c))
                })
                .collect();
            merge(id, cases, false)
        }
        TheoremId::Polyext => {
            let u = b as u32;
            merge_extra(
                id,
                extra_pairs()
                    .iter()
                    .map(|p| (p.to_string(), check_poly_extension(p, u)))
                    .collect(),
            )
        }
        TheoremId::Divshift => {
            let u = b as u32;
            merge_extra(
                id,
                extra_pairs()
                    .iter()
                    .map(|p| (p.to_string(), check_divisor_shift(p, u)))
                    .collect(),
            )
        }
        TheoremId::Exhaustion => {
            let u = (b as u32).min(4);
            merge_extra(
                id,
                extra_pairs()
                    .iter()
                    .map(|p| (p.to_string(), check_exhaustion(p, u)))
                    .collect(),
            )
        }
    };
    if v.parameters.is_empty() {
        v = v.param("box", b);
    }
    Ok(v)
}

/// Runs one checker with the suite defaults. Errors become failed verdicts.
pub fn run_checker(id: TheoremId, cfg: &SuiteConfig) -> TheoremVerdict {
    let start = Instant::now();
    let mut v = run_inner(id, cfg).unwrap_or_else(|e| TheoremVerdict::new(id).errored(e));
    if cfg.timing {
        v.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    v
}

/// Runs the given checkers concurrently and collects the verdicts.
pub fn run_suite(ids: &[TheoremId], cfg: &SuiteConfig) -> AggregateReport {
    let verdicts: Vec<TheoremVerdict> = ids.par_iter().map(|&id| run_checker(id, cfg)).collect();
    AggregateReport::new(cfg.seed, cfg.box_bound, verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snc_table_matches() {
        let v = run_checker(TheoremId::Snc, &SuiteConfig::default());
        assert!(v.is_expected(), "{}", v.render_text());
    }

    #[test]
    fn small_suite() {
        let cfg = SuiteConfig {
            box_bound: 2,
            ..SuiteConfig::default()
        };
        let report = run_suite(&TheoremId::SUITE, &cfg);
        for v in &report.verdicts {
            assert!(v.is_expected(), "{}", v.render_text());
        }
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn cube_pairs_are_reproducible() {
        assert_eq!(default_cube_pairs(7), default_cube_pairs(7));
        assert!(default_cube_pairs(0).len() >= 10);
    }
}
