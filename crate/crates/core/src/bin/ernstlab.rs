use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ernstlab::cli::{evaluate_scenario, reduce_check, run_scenario, Scenario};
use ernstlab::lie::{commutator_table, structure_check};

/// Exact solutions, symmetries and first integrals of the hyperbolic Ernst equation.
#[derive(Parser)]
#[command(name = "ernstlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a scenario and write <stem>.csv and <stem>.summary.json
    Run {
        config: PathBuf,
        /// Output directory (defaults to the config's directory)
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check a scenario's residuals against a tolerance without writing files
    Verify {
        config: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the commutator table of X1..X5
    LieTable {
        #[arg(long)]
        json: bool,
    },
    /// Randomised checks of the first integrals of the reduced ODE
    ReduceCheck {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a reader that has gone away (`| head`) is not an error.
fn emit(text: &str) -> ernstlab::Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json(value: &impl serde::Serialize) -> ernstlab::Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn execute(command: Command) -> ernstlab::Result<bool> {
    match command {
        Command::Run { config, out_dir } => {
            let scenario = Scenario::load(&config)?;
            let dir =
                out_dir.unwrap_or_else(|| config.parent().unwrap_or(Path::new(".")).to_path_buf());
            let stem = config
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("scenario");
            let (run, files) = run_scenario(&scenario, &dir, stem)?;
            if let Some(csv) = &files.csv {
                eprintln!("wrote {}", csv.display());
            }
            eprintln!("wrote {}", files.summary.display());
            print_json(&run.summary)?;
            if !run.summary.passed {
                eprintln!("residuals exceed tolerance {:e}", scenario.tolerance);
            }
            Ok(run.summary.passed)
        }
        Command::Verify { config, tol } => {
            let mut scenario = Scenario::load(&config)?;
            if let Some(tol) = tol {
                scenario.tolerance = tol;
                scenario.validate()?;
            }
            let run = evaluate_scenario(&scenario)?;
            print_json(&run.summary)?;
            Ok(run.summary.passed)
        }
        Command::LieTable { json } => {
            let table = commutator_table()?;
            if json {
                print_json(&table.to_json())?;
            } else {
                emit(&table.to_string())?;
            }
            Ok(structure_check()?.all_passed())
        }
        Command::ReduceCheck { seed, trials } => {
            let report = reduce_check(seed, trials as usize)?;
            print_json(&report)?;
            for name in report.failed_checks() {
                eprintln!("check failed: {name}");
            }
            Ok(report.passed)
        }
    }
}
