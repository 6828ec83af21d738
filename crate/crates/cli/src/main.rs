//! `ckl`: batch front end for the common knowledge workbench.
//!
//! Exit status is 0 when the verdict is pass, 1 when it is fail and 2 on
//! bad input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand};

use report::Report;

#[derive(Debug, Parser)]
#[command(name = "ckl", version, about = "Model, algebra and proof checks for common knowledge logic")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Number of agents, numbered 1..=N (formulas, proofs, sweeps, counterexample).
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    agents: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a frame file is a CKL-frame, cross-checked against the
    /// schemas and the complex algebra.
    CheckFrame { path: PathBuf },
    /// Evaluate a formula in a model file; passes if it holds everywhere.
    ModelCheck { path: PathBuf, formula: String },
    /// Check frame condition, schemas and algebra agree on every frame with
    /// the given number of worlds (or a seeded sample of them).
    Sweep {
        worlds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample this many frames instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check the finite/cofinite algebra and print E^n a for n <= bound.
    Counterexample { bound: u64 },
    /// Check a proof script.
    CheckProof { path: PathBuf },
    /// Parse and pretty-print a formula.
    Parse { formula: String },
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::CheckFrame { path } => commands::check_frame(path),
        Command::ModelCheck { path, formula } => commands::model_check(path, formula),
        Command::Sweep {
            worlds,
            seed,
            samples,
        } => commands::sweep(*worlds, cli.agents, *seed, *samples),
        Command::Counterexample { bound } => commands::counterexample(*bound, cli.agents),
        Command::CheckProof { path } => commands::check_proof_file(path, cli.agents),
        Command::Parse { formula } => commands::parse_formula(formula, cli.agents),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis();
            if cli.json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": format!("{e:#}") }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
