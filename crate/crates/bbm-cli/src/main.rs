//! `bbm` — exact sampling, transforms, moment identities and Monte Carlo
//! experiments for the bifractional Brownian family.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    cmd_besov, cmd_coeffs, cmd_holder, cmd_ito_nisio, cmd_lln, cmd_moments, cmd_sample,
    BesovArgs, CoeffsArgs, HolderArgs, ItoNisioArgs, LlnArgs, MomentsArgs, SampleArgs,
};
use config::CliResult;

#[derive(Parser)]
#[command(
    name = "bbm",
    version,
    about = "Bifractional Brownian motion: exact sampling, sequence norms, moment identities and convergence experiments",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample exact Gaussian paths on a dyadic grid
    Sample(SampleArgs),
    /// Faber–Schauder coefficients and endpoint values of sampled paths
    Coeffs(CoeffsArgs),
    /// Besov membership: sequence-norm level terms and their log₂ slopes
    Besov(BesovArgs),
    /// Second-difference moments: oracle vs identity, scaling, pair bounds
    Moments(MomentsArgs),
    /// LLN statistic s_j across levels against the Gaussian moment c_p
    Lln(LlnArgs),
    /// Truncated basis expansion: residual norms and exact tail sizes
    #[command(name = "ito-nisio")]
    ItoNisio(ItoNisioArgs),
    /// Hölder residual decay for the truncated expansion
    Holder(HolderArgs),
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::Besov(a) => cmd_besov(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Lln(a) => cmd_lln(a),
        Command::ItoNisio(a) => cmd_ito_nisio(a),
        Command::Holder(a) => cmd_holder(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
