use clap::{Parser, Subcommand};
use serde::Serialize;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use qcc::detectors::DetectorModel;
use qcc::harness::{self, Protocol, RunConfig};
use qcc::Error;

/// Quantum communication complexity toolkit: exact analysis and seeded
/// Monte Carlo simulation of the ring and modular-sum tasks.
#[derive(Debug, Parser)]
#[command(name = "qcc", version)]
struct Cli {
    /// Emit machine-readable JSON instead of the human-readable report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the closed-form landmark values for both tasks.
    Analyze,
    /// Exhaustively search classical strategies for the exact optimum.
    Search {
        /// Number of parties (2 or 3).
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        parties: u8,
        /// Ring parameter for the two-party task (even, at least 4;
        /// defaults to 4). Not accepted for the three-party task.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Run seeded Monte Carlo trials of a protocol.
    Simulate {
        /// One of quantum2, classical2, spin2, quantum3, classical3.
        #[arg(long, value_parser = parse_protocol)]
        protocol: Protocol,
        /// Ring parameter for two-party protocols (defaults to 4).
        #[arg(long)]
        n: Option<u32>,
        /// Detector efficiency in [0,1] (quantum protocols only).
        #[arg(long)]
        eta: f64,
        /// Faithful-click probability in [0,1] (quantum protocols only).
        #[arg(long)]
        mu: f64,
        /// Number of Monte Carlo trials.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Base seed; each trial derives its own stream from it.
        #[arg(long)]
        seed: u64,
        /// Worker threads (results are identical for any count).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
        workers: u64,
    },
    /// Write the detector feasibility region and its analytic boundary as CSV.
    Region {
        /// Number of parties (2 or 3).
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        parties: u8,
        /// Grid points per axis (at least 2).
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        resolution: u32,
        /// Output CSV path; the boundary lands next to it with a
        /// `_boundary` suffix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the Bell sum: exact quantum value, local bound, spin model.
    Bell {
        /// Number of Monte Carlo trials for the spin model.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Seed for the spin-model hidden variables.
        #[arg(long)]
        seed: u64,
    },
}

fn parse_protocol(s: &str) -> Result<Protocol, String> {
    s.parse::<Protocol>().map_err(|e| e.to_string())
}

fn emit<T: Serialize + Display>(json: bool, value: &T) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize cleanly")
        );
    } else {
        println!("{value}");
    }
}

fn run(cli: &Cli) -> qcc::Result<()> {
    match &cli.command {
        Command::Analyze => emit(cli.json, &harness::analyze()),
        Command::Search { parties, n } => {
            emit(cli.json, &harness::search_command(*parties, *n)?);
        }
        Command::Simulate {
            protocol,
            n,
            eta,
            mu,
            trials,
            seed,
            workers,
        } => {
            let config = RunConfig {
                protocol: *protocol,
                n: *n,
                detector: DetectorModel::new(*eta, *mu)?,
                trials: *trials,
                seed: *seed,
                workers: *workers as usize,
            };
            emit(cli.json, &harness::run_trials(&config)?);
        }
        Command::Region {
            parties,
            resolution,
            out,
        } => {
            emit(
                cli.json,
                &harness::region_command(*parties, *resolution, out)?,
            );
        }
        Command::Bell { trials, seed } => {
            emit(cli.json, &harness::bell_command(*trials, *seed)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
