use anyhow::Result;
use bbm_cli::config::ExperimentKind;
use bbm_cli::{run_experiment, validate_only, RunOptions};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Pseudo-spectral laboratory for the BBM-BBM Boussinesq system.
#[derive(Parser)]
#[command(name = "bbm-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration file for the experiment.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: $BBM_LAB_OUT, then ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker-pool size for sweeps (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Override the configuration's seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Nonlinear time integration with full diagnostics.
    Simulate(CommonArgs),
    /// Conservation and energy-identity verification run.
    Invariants(CommonArgs),
    /// High-to-low frequency norm-explosion probe.
    Illposedness(CommonArgs),
    /// Linear decay experiment on a large domain.
    Decay(CommonArgs),
    /// Empirical bilinear-constant scan.
    BilinearScan(CommonArgs),
    /// Contraction-window estimates across scalings.
    ExistenceTime(CommonArgs),
    /// Static configuration checks only.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn dispatch(kind: ExperimentKind, args: CommonArgs) -> Result<i32> {
    run_experiment(&RunOptions {
        config_path: args.config,
        out_dir: args.out,
        jobs: args.jobs,
        seed_override: args.seed,
        expected_kind: Some(kind),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => dispatch(ExperimentKind::Simulate, a),
        Command::Invariants(a) => dispatch(ExperimentKind::Invariants, a),
        Command::Illposedness(a) => dispatch(ExperimentKind::Illposedness, a),
        Command::Decay(a) => dispatch(ExperimentKind::Decay, a),
        Command::BilinearScan(a) => dispatch(ExperimentKind::BilinearScan, a),
        Command::ExistenceTime(a) => dispatch(ExperimentKind::ExistenceTime, a),
        Command::Validate { config } => validate_only(&config),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
