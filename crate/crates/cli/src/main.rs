//! `landbubble`: run the land-bubble model experiments from a config file and
//! write the results as CSV.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use landbubble::ErrorCategory;

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] landbubble::Error),
}

impl CliError {
    fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) | CliError::Io { .. } => "config",
            CliError::Model(e) => match e.category() {
                ErrorCategory::Input => "config",
                ErrorCategory::NonConvergence => "nonconvergence",
                ErrorCategory::Domain => "domain",
            },
        }
    }

    fn exit_code(&self) -> u8 {
        match self.category() {
            "config" => 2,
            "nonconvergence" => 3,
            _ => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "landbubble", version, about, after_help = config::HELP)]
struct Cli {
    /// Flat key = value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Seed for the Monte Carlo commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Leverage threshold across elasticities of substitution (phase.csv, phase_regimes.csv).
    Phase,
    /// Closed-economy steady state (steady.csv).
    Steady,
    /// Long-run growth rate over the leverage grid (growth.csv).
    Growth,
    /// Perfect-foresight path from init.K (transition.csv).
    Transition,
    /// Temporary leverage and productivity booms (fig2_*.csv).
    Fig2,
    /// Open-economy trend-stationary equilibrium (trend.csv, trend_path.csv).
    Trend,
    /// World interest rate over the leverage grid (rates.csv).
    Rates,
    /// Pareto exponent of wealth over the leverage grid (pareto.csv).
    Pareto,
    /// Terminal wealth cross-section of a simulated panel (simulate.csv).
    Simulate,
    /// Bubble test on a CSV with columns t,rent,price[,rate] (bubbletest.csv).
    Bubbletest {
        input: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let out = output::OutputDir::prepare(&cli.out)?;
    let outcome = match &cli.command {
        Command::Phase => commands::phase(&cfg)?,
        Command::Steady => commands::steady(&cfg)?,
        Command::Growth => commands::growth(&cfg)?,
        Command::Transition => commands::transition(&cfg)?,
        Command::Fig2 => commands::fig2(&cfg)?,
        Command::Trend => commands::trend(&cfg)?,
        Command::Rates => commands::rates(&cfg)?,
        Command::Pareto => commands::pareto(&cfg, cli.seed)?,
        Command::Simulate => commands::simulate(&cfg, cli.seed)?,
        Command::Bubbletest { input } => commands::bubbletest(input)?,
    };
    for (name, contents) in &outcome.files {
        let path = out.write(name, contents)?;
        if !cli.quiet {
            println!("wrote {}", path.display());
        }
    }
    if !cli.quiet {
        println!("{}", outcome.summary);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}
