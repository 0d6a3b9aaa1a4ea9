//! `cop`: command-line front end for the classical orthogonal polynomial kernel.
//!
//! Every subcommand reads one JSON document, given as a file path or inline,
//! and writes JSON (or CSV for recurrence tables) to stdout or `--out`.
//! Exit codes: 0 on success, 2 on domain errors (with a JSON error body on
//! stdout), 1 on I/O, parse or configuration errors.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cop_core::Tolerance;
use serde::de::DeserializeOwned;

use commands::FamilyOptions;
use error::CliError;
use output::{table_csv, Report};

#[derive(Debug, Parser)]
#[command(name = "cop", version, about = "Classical orthogonal polynomials on admissible lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute tolerance (overrides COP_TOL_ABS).
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
    /// Relative tolerance (overrides COP_TOL_REL).
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Render the recurrence table as CSV instead of the JSON document.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a map from four consecutive samples.
    Classify { input: String },
    /// Recurrence table, monic sequence and eigenvalues for a classical pair.
    OpsGenerate { input: String },
    /// Certify regularity and report the diagnostics.
    RegularityCheck { input: String },
    /// Gaussian rule from a recurrence table.
    Quadrature { input: String },
    /// Rebuild an alternating sequence from its quadratic component.
    AlternatingBuild { input: String },
    /// Eigenvalue and symmetry checks of L = phi D^2 + psi S D.
    NuVerify { input: String },
    /// Named families.
    Family {
        input: String,
        /// Root-of-unity order for the Askey-Wilson truncation.
        #[arg(long)]
        nu: Option<usize>,
        /// Produce nodes and weights of the truncated Askey-Wilson family.
        #[arg(long)]
        truncate: bool,
        /// Number of members (or recurrence steps) to produce.
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Compare quadratic tables with their q -> 1 surrogates.
    Degeneration { input: String },
}

fn env_tolerance(name: &'static str) -> Result<Option<f64>, CliError> {
    match std::env::var(name) {
        Ok(value) => value.trim().parse().map(Some).map_err(|_| CliError::Env { name, value }),
        Err(_) => Ok(None),
    }
}

fn tolerance(args: &CommonArgs) -> Result<Tolerance, CliError> {
    let default = Tolerance::default();
    let abs = args.tol_abs.or(env_tolerance("COP_TOL_ABS")?).unwrap_or(default.abs_eps);
    let rel = args.tol_rel.or(env_tolerance("COP_TOL_REL")?).unwrap_or(default.rel_eps);
    Ok(Tolerance::new(abs, rel))
}

/// Parse inline JSON when the argument starts like a document, else read the file.
fn load<T: DeserializeOwned>(input: &str) -> Result<T, CliError> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|source| CliError::Read { path: input.to_string(), source })?
    };
    Ok(serde_json::from_str(&text)?)
}

fn dispatch(command: Command, tol: &Tolerance) -> Result<Report, CliError> {
    match command {
        Command::Classify { input } => commands::classify(load(&input)?, tol),
        Command::OpsGenerate { input } => commands::ops_generate(load(&input)?, tol),
        Command::RegularityCheck { input } => commands::regularity_check(load(&input)?, tol),
        Command::Quadrature { input } => commands::quadrature(load(&input)?, tol),
        Command::AlternatingBuild { input } => commands::alternating_build(load(&input)?, tol),
        Command::NuVerify { input } => commands::nu_verify(load(&input)?),
        Command::Family { input, nu, truncate, count } => commands::family(load(&input)?, &FamilyOptions { nu, truncate, count }, tol),
        Command::Degeneration { input } => commands::degeneration(load(&input)?, tol),
    }
}

fn render(report: &Report, csv: bool) -> Result<String, CliError> {
    match (&report.table, csv) {
        (Some(table), true) => Ok(table_csv(table)),
        _ => Ok(serde_json::to_string_pretty(&report.json)? + "\n"),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = tolerance(&cli.common)?;
    let report = dispatch(cli.command, &tol)?;
    emit(&render(&report, cli.common.csv)?, cli.common.out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match e.domain_report() {
                Some(body) => println!("{}", serde_json::to_string_pretty(&body).unwrap_or_default()),
                None => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
