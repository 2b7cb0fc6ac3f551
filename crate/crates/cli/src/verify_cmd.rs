use anyhow::Context;
use clap::Args;

use modsheaf_core::poly::parse_poly;
use modsheaf_core::theorems::{cubic_ring, run_suite, SuiteConfig};
use modsheaf_core::TheoremId;

use crate::cech_cmd::default_box;
use crate::{emit, Format};

#[derive(Args, Debug)]
pub struct SharedArgs {
    /// Half-width of the truncation boxes [default: MODSHEAF_BOX or 6].
    #[arg(long = "box")]
    bound: Option<i32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the random cube pairs; recorded in the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall-clock time per verdict.
    #[arg(long)]
    timing: bool,
    /// Plane cubic in t0, t1, t2 for the cone example.
    #[arg(long)]
    cubic: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Theorem ids to run.
    ids: Vec<String>,
    /// Run the whole suite.
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    shared: SharedArgs,
}

fn run_ids(ids: &[TheoremId], a: &SharedArgs) -> anyhow::Result<u8> {
    let box_bound = match a.bound {
        Some(b) if !(1..=64).contains(&b) => anyhow::bail!("--box {b} outside 1..=64"),
        Some(b) => b,
        None => default_box()?,
    };
    let cubic = match &a.cubic {
        Some(s) => Some(parse_poly(&cubic_ring(), s).with_context(|| format!("--cubic '{s}'"))?),
        None => None,
    };
    let cfg = SuiteConfig {
        box_bound,
        seed: a.seed,
        cubic,
        timing: a.timing,
    };
    let report = match a.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()?
            .install(|| run_suite(ids, &cfg)),
        None => run_suite(ids, &cfg),
    };
    emit(a.format, &report, || report.render_text())?;
    Ok(report.exit_code() as u8)
}

pub fn run(a: &VerifyArgs) -> anyhow::Result<u8> {
    let mut ids: Vec<TheoremId> = a
        .ids
        .iter()
        .map(|s| s.parse::<TheoremId>())
        .collect::<Result<_, _>>()
        .map_err(anyhow::Error::msg)?;
    if a.all {
        ids.extend(TheoremId::SUITE);
    }
    if ids.is_empty() {
        anyhow::bail!("name theorem ids or pass --all");
    }
    ids.sort();
    ids.dedup();
    run_ids(&ids, &a.shared)
}

pub fn run_counterexamples(a: &SharedArgs) -> anyhow::Result<u8> {
    run_ids(&TheoremId::COUNTEREXAMPLES, a)
}
