//! `stabsse` — SSE Monte Carlo sweeps over stabilizer states, with an
//! exact-diagonalization reference and a comparison report.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use config::{Model, RunConfig};

#[derive(Parser)]
#[command(name = "stabsse", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo temperature sweep and write one CSV row per
    /// temperature.
    Run(SweepArgs),
    /// Write exact-diagonalization reference energies over the same grid.
    Ed(SweepArgs),
    /// Compare a Monte Carlo CSV against a reference CSV point by point.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Plain-text key=value parameter file; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Model: cnot_chain, tfi_chain, or z2_plaquette.
    #[arg(long)]
    model: Option<Model>,

    /// Chain length (cnot_chain, tfi_chain).
    #[arg(long)]
    n: Option<usize>,

    /// Lattice extent in x (z2_plaquette; qubits live on the 2*lx*ly edges).
    #[arg(long)]
    lx: Option<usize>,

    /// Lattice extent in y (z2_plaquette).
    #[arg(long)]
    ly: Option<usize>,

    /// Field coupling h >= 0.
    #[arg(long)]
    h: Option<f64>,

    /// Bond coupling J > 0.
    #[arg(long)]
    j: Option<f64>,

    /// Star coupling (z2_plaquette).
    #[arg(long = "j-star")]
    j_star: Option<f64>,

    /// Plaquette coupling (z2_plaquette).
    #[arg(long = "j-plaq")]
    j_plaq: Option<f64>,

    /// Expansion cutoff L.
    #[arg(long = "L")]
    cutoff: Option<usize>,

    #[arg(long = "t-start")]
    t_start: Option<f64>,

    #[arg(long = "t-end")]
    t_end: Option<f64>,

    #[arg(long = "t-step")]
    t_step: Option<f64>,

    /// Thermalization cycles per temperature.
    #[arg(long)]
    therm: Option<usize>,

    /// Measurement cycles per temperature.
    #[arg(long)]
    meas: Option<usize>,

    /// RNG seed; recorded in the output for reproducibility.
    #[arg(long)]
    seed: Option<u64>,

    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Monte Carlo CSV (expects an `energy` column).
    mc_csv: PathBuf,
    /// Reference CSV (prefers `energy_truncated_L`).
    ed_csv: PathBuf,
    /// Per-point relative-error threshold.
    #[arg(long, default_value_t = 0.01)]
    threshold: f64,
}

impl SweepArgs {
    fn resolve(&self, default_out: &str) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if self.config.is_none() {
            config.out = default_out.to_string();
        }
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { config.$field = v; })*
            };
        }
        take!(
            model, n, lx, ly, h, j, j_star, j_plaq, cutoff, t_start, t_end, t_step, therm, meas,
            seed
        );
        if let Some(out) = &self.out {
            config.out = out.display().to_string();
        }
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => args
            .resolve("run.csv")
            .and_then(|config| commands::cmd_run(&config))
            .map(|()| true),
        Command::Ed(args) => args
            .resolve("ed.csv")
            .and_then(|config| commands::cmd_ed(&config))
            .map(|()| true),
        Command::Compare(args) => commands::cmd_compare(&args.mc_csv, &args.ed_csv, args.threshold),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
