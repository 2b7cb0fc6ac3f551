use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::Serialize;

use modsheaf_core::mo::{mo_contains_with, mo_generator, MembershipOptions, PairSpec};
use modsheaf_core::poly::{parse_fraction, parse_poly, CoeffRing, PolyRing};
use modsheaf_core::{AffineModulusPair, FactoredDivisor, LocalizedElement};

use crate::{emit, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeffs {
    Rationals,
    Dual,
}

#[derive(Args, Debug)]
pub struct MoArgs {
    /// Comma-separated variables of A.
    #[arg(long, default_value = "")]
    ring: String,
    /// Comma-separated variables to invert.
    #[arg(long, default_value = "")]
    invertible: String,
    #[arg(long, value_enum, default_value_t = Coeffs::Rationals)]
    coeffs: Coeffs,
    /// Monomial modulus, factored variable by variable.
    #[arg(long, conflicts_with_all = ["factors", "spec"])]
    f: Option<String>,
    /// Explicit factorization `p:r,q:s` of a non-monomial modulus.
    #[arg(long, conflicts_with = "spec")]
    factors: Option<String>,
    /// JSON pair specification file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Element of A[1/f] to test, e.g. `x/y^2`. Repeatable.
    #[arg(long = "test", allow_hyphen_values = true)]
    tests: Vec<String>,
    /// Search bound for the membership criterion over the dual numbers.
    #[arg(long, default_value_t = 4)]
    bound: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Serialize)]
struct MembershipLine {
    element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical: Option<String>,
    in_localization: bool,
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    radical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search_exponent: Option<u32>,
}

#[derive(Debug, Serialize)]
struct MoReport {
    pair: PairSpec,
    f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<String>,
    tests: Vec<MembershipLine>,
    notes: Vec<String>,
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}

fn build_pair(a: &MoArgs) -> anyhow::Result<AffineModulusPair> {
    if let Some(path) = &a.spec {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let spec: PairSpec =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(AffineModulusPair::from_spec(&spec)?);
    }
    let coeffs = match a.coeffs {
        Coeffs::Rationals => CoeffRing::Rationals,
        Coeffs::Dual => CoeffRing::DualNumbers,
    };
    let ring = PolyRing::laurent(&split_list(&a.ring), &split_list(&a.invertible), coeffs)?;
    let modulus = match (&a.f, &a.factors) {
        (Some(f), None) => {
            let f = parse_poly(&ring, f).context("--f")?;
            FactoredDivisor::from_monomial_poly(&f)?
        }
        (None, Some(list)) => {
            let mut factors = Vec::new();
            for item in split_list(list) {
                let (p, r) = item.rsplit_once(':').unwrap_or((item.as_str(), "1"));
                let r: u32 = r
                    .trim()
                    .parse()
                    .with_context(|| format!("multiplicity in '{item}'"))?;
                factors.push((
                    parse_poly(&ring, p).with_context(|| format!("factor '{p}'"))?,
                    r,
                ));
            }
            FactoredDivisor::new(modsheaf_core::Poly::one(&ring), factors)?
        }
        (None, None) => bail!("give the modulus with --f, --factors or --spec"),
        (Some(_), Some(_)) => unreachable!("clap rejects both"),
    };
    Ok(AffineModulusPair::new(modulus)?)
}

pub fn run(a: &MoArgs) -> anyhow::Result<u8> {
    let pair = build_pair(a)?;
    let mut notes = Vec::new();
    let generator = match mo_generator(&pair) {
        Ok(m) => Some(m.describe()),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let opts = MembershipOptions {
        search_bound: a.bound,
    };
    let mut tests = Vec::new();
    for t in &a.tests {
        let fr = parse_fraction(pair.ring(), t).with_context(|| format!("element '{t}'"))?;
        match LocalizedElement::from_fraction(&pair, &fr.num, &fr.den)? {
            None => tests.push(MembershipLine {
                element: t.clone(),
                canonical: None,
                in_localization: false,
                member: false,
                radical: None,
                search_exponent: None,
            }),
            Some(el) => {
                let m = mo_contains_with(&pair, &el, opts)?;
                tests.push(MembershipLine {
                    element: t.clone(),
                    canonical: Some(el.to_string()),
                    in_localization: true,
                    member: m.member,
                    radical: m.radical,
                    search_exponent: m.search_exponent,
                });
            }
        }
    }
    let report = MoReport {
        pair: pair.to_spec(),
        f: pair.f().to_string(),
        generator,
        tests,
        notes,
    };
    emit(a.format, &report, || {
        let mut s = format!("pair {pair}\n");
        if let Some(g) = &report.generator {
            s.push_str(&format!("generator {g}\n"));
        }
        for n in &report.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        for t in &report.tests {
            let verdict = if !t.in_localization {
                "not in A[1/f]"
            } else if t.member {
                "member"
            } else {
                "not a member"
            };
            s.push_str(&format!("{}: {verdict}\n", t.element));
        }
        s
    })?;
    Ok(0)
}
