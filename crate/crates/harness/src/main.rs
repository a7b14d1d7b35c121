use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lfmo_harness::config::Kind;
use lfmo_harness::Overrides;

/// Experiment runner for mixed coherent systems with subordinator-driven
/// component lifetimes. Each subcommand reads a TOML config and writes one
/// CSV table.
#[derive(Parser)]
#[command(name = "lfmo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// KS p-values of finite systems against their limit law, per cell.
    PvalueStudy(RunArgs),
    /// Relative error of the mean failure time against the limit mean.
    MeanStudy(RunArgs),
    /// Finite-system survival curves next to the limit model.
    ReliabilityCurve(RunArgs),
    /// Signature-family limit diagnostics (no sampling).
    HypothesisReport(RunArgs),
    /// Exact mean time-to-failure against Monte Carlo.
    MttfTable(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (TOML, schema lfmo-experiment/1).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; falls back to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed, overriding the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads, overriding the config (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Use the publication sample sizes instead of desk-scale defaults.
    #[arg(long)]
    paper_scale: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::PvalueStudy(a) => (Kind::PvalueStudy, a),
        Command::MeanStudy(a) => (Kind::MeanStudy, a),
        Command::ReliabilityCurve(a) => (Kind::ReliabilityCurve, a),
        Command::HypothesisReport(a) => (Kind::HypothesisReport, a),
        Command::MttfTable(a) => (Kind::MttfTable, a),
    };
    let overrides = Overrides {
        out: args.out.clone(),
        seed: args.seed,
        workers: args.workers,
        paper_scale: args.paper_scale,
    };
    match lfmo_harness::run(kind, &args.config, &overrides) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
