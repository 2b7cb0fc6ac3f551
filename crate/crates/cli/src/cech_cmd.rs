use anyhow::{bail, Context};
use clap::{Args, ValueEnum};

use modsheaf_core::cech::{cech_cohomology, projective_box, CoveredSpace, LineBundleDatum};
use modsheaf_core::truncation::TruncationBox;

use crate::{emit, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceId {
    /// Projective space P^n.
    Pn,
    /// Blowup of A^(n+1) at the origin.
    Blowup,
    /// A base space times P^1.
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseId {
    Point,
    Pn,
    Blowup,
}

#[derive(Args, Debug)]
pub struct CechArgs {
    #[arg(value_enum)]
    space: SpaceId,
    #[arg(long, default_value_t = 1)]
    n: i64,
    /// Twist of the line bundle (degree on P^n, exceptional twist on a blowup).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    twist: i32,
    /// Base of the product.
    #[arg(long, value_enum, default_value_t = BaseId::Point)]
    base: BaseId,
    /// Degree on the P^1 factor of a product.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    line_twist: i32,
    /// Truncation box: `B` for [-B, B] or `lo..hi`, on every variable.
    /// Defaults to the exact support box on P^n and to MODSHEAF_BOX elsewhere.
    #[arg(long = "box", allow_hyphen_values = true)]
    window: Option<String>,
    /// Print only the dimensions, not the basis monomials.
    #[arg(long)]
    no_bases: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn parse_range(s: &str) -> anyhow::Result<(i32, i32)> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse::<i32>()?, hi.trim().parse::<i32>()?),
        None => {
            let b: i32 = s.trim().parse()?;
            if b < 0 {
                bail!("box half-width {b} is negative");
            }
            (-b, b)
        }
    };
    if lo > hi {
        bail!("empty box {lo}..{hi}");
    }
    Ok((lo, hi))
}

pub fn default_box() -> anyhow::Result<i32> {
    match std::env::var("MODSHEAF_BOX") {
        Ok(v) => {
            let b: i32 = v
                .trim()
                .parse()
                .with_context(|| format!("MODSHEAF_BOX = '{v}'"))?;
            if !(1..=64).contains(&b) {
                bail!("MODSHEAF_BOX = {b} outside 1..=64");
            }
            Ok(b)
        }
        Err(_) => Ok(6),
    }
}

fn base_space(base: BaseId, n: i64) -> anyhow::Result<CoveredSpace> {
    Ok(match base {
        BaseId::Point => CoveredSpace::point(),
        BaseId::Pn => CoveredSpace::projective(n)?,
        BaseId::Blowup => CoveredSpace::blowup(n)?,
    })
}

pub fn run(a: &CechArgs) -> anyhow::Result<u8> {
    let (space, twists) = match a.space {
        SpaceId::Pn => (CoveredSpace::projective(a.n)?, vec![a.twist]),
        SpaceId::Blowup => (CoveredSpace::blowup(a.n)?, vec![a.twist]),
        SpaceId::Product => {
            let base = base_space(a.base, a.n)?;
            let mut twists = vec![a.twist; base.twist_slots().len()];
            twists.push(a.line_twist);
            (base.product_with_line()?, twists)
        }
    };
    let bundle = LineBundleDatum::twisted(&space, &twists)?;
    let window = match (&a.window, a.space) {
        (Some(s), _) => {
            let (lo, hi) = parse_range(s).with_context(|| format!("--box '{s}'"))?;
            TruncationBox::cube(space.vars(), lo, hi)
        }
        (None, SpaceId::Pn) => projective_box(a.n as usize, a.twist),
        (None, _) => TruncationBox::symmetric(space.vars(), default_box()?),
    };
    let report = cech_cohomology(&bundle, &window)?;
    emit(a.format, &report, || report.render_text(!a.no_bases))?;
    Ok(if report.d_squared_zero { 0 } else { 1 })
}
