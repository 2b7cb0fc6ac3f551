//! `modsheaf`: compute `MO` of modulus pairs, Cech cohomology of monomial
//! line bundles, and run the theorem checkers.
//!
//! Exit codes: 0 when everything is as expected, 1 when a checker reports an
//! unexpected verdict, 2 on bad input.

mod cech_cmd;
mod mo_cmd;
mod verify_cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "modsheaf",
    version,
    about = "Filtered structure sheaves on modulus pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generator of MO(A, f) and membership tests.
    Mo(mo_cmd::MoArgs),
    /// Cech cohomology of a line bundle on a toric cover.
    Cech(cech_cmd::CechArgs),
    /// Run theorem checkers and report verdicts.
    Verify(verify_cmd::VerifyArgs),
    /// Run the three counterexample checkers (nonreduced, flatbc, gabber).
    Counterexamples(verify_cmd::SharedArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn emit<T: serde::Serialize>(
    format: Format,
    value: &T,
    text: impl FnOnce() -> String,
) -> anyhow::Result<()> {
    match format {
        Format::Text => print!("{}", text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mo(a) => mo_cmd::run(&a),
        Command::Cech(a) => cech_cmd::run(&a),
        Command::Verify(a) => verify_cmd::run(&a),
        Command::Counterexamples(a) => verify_cmd::run_counterexamples(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
