//! Command-line front end for the two-user status-update age analysis:
//! exact single-point analysis, NOMA-vs-OMA sweeps with CSV/SVG output,
//! limit-formula comparison with crossover search, and stochastic
//! simulation with confidence intervals.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 infeasible
//! parameters (a superposed rate exceeding its solo cap; override with
//! --allow-infeasible), 4 numerical failure.

mod analyze;
mod common;
mod compare;
mod error;
mod json;
mod simcmd;
mod svg;
mod sweep;

use clap::{Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "aoi-cli",
    version,
    about = "Average age-of-information analysis for two-user status-update systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one parameter set along both analytical routes and report
    /// their agreement
    Analyze(analyze::AnalyzeArgs),
    /// Sweep alpha or the arrival rate and compare the two disciplines
    Sweep(sweep::SweepArgs),
    /// Compare both disciplines at one point, with limit references and
    /// the crossover factor
    Compare(compare::CompareArgs),
    /// Estimate the ages by discrete-event simulation
    Simulate(simcmd::SimulateArgs),
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze(args) => analyze::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Compare(args) => compare::run(args),
        Command::Simulate(args) => simcmd::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
