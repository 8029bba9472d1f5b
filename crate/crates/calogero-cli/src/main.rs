//! Command-line front end: spectra, verification reports and eigenfunction expansions
//! for the inverse-square potential on the half-line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Common;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("output: {0}")]
    Output(String),
    #[error(transparent)]
    Lib(#[from] calogero::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "calogero",
    version,
    about = "Self-adjoint extensions of the alpha/x^2 Hamiltonian on the half-line"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Bound levels with their weights and samples of the continuum density
    Spectrum(Common),
    /// Residuals of the built-in consistency checks; exits nonzero if any fails
    Verify(Common),
    /// Eigenfunction expansion of an input function and its reconstruction
    Expand {
        #[command(flatten)]
        common: Common,
        /// expression in x, e.g. `x^{3/2}*exp(-x)`
        #[arg(long, conflicts_with = "input")]
        expr: Option<String>,
        /// two-column `x value` file
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (report, out) = match cli.cmd {
        Cmd::Spectrum(c) => (
            commands::spectrum(config::resolve(&c, "spectrum", None)?)?,
            c.out,
        ),
        Cmd::Verify(c) => (
            commands::verify(config::resolve(&c, "verify", None)?)?,
            c.out,
        ),
        Cmd::Expand {
            common,
            expr,
            input,
        } => {
            let (label, source) = match (expr, input) {
                (_, Some(p)) => (format!("file:{}", p.display()), input::table_file(&p)?),
                (e, None) => {
                    let e = e.unwrap_or_else(|| input::BUILTIN.to_string());
                    (format!("expr:{e}"), input::expression(&e)?)
                }
            };
            (
                commands::expand(config::resolve(&common, "expand", Some(label))?, source)?,
                common.out,
            )
        }
    };
    output::emit(&report, out.as_deref())?;
    Ok(report.config.command != "verify" || report.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                _ => 1,
            })
        }
    }
}
