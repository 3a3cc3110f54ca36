use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use photonbox::runner::{run_scenario, sweep, RunOptions};
use photonbox::scenario::{OutputFormat, ScenarioError, ScenarioFile, SweepSpec, Units};

/// Photon-box indeterminacy lab: runs scenario files and writes reports.
#[derive(Parser)]
#[command(name = "photonbox", version)]
struct Cli {
    /// Unit system, overriding the scenario file.
    #[arg(long, global = true, value_enum)]
    units: Option<Units>,
    /// Seed for randomized property checks, overriding the scenario file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress the check summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and emit its report.
    Run {
        file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Run a scenario over a grid of one parameter and emit a CSV table.
    Sweep {
        file: PathBuf,
        #[arg(long, requires = "range")]
        param: Option<String>,
        /// Grid as A:B:STEP, inclusive of B.
        #[arg(long, requires = "param")]
        range: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), ScenarioError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, ScenarioError> {
    let opts = RunOptions { units: cli.units, seed: cli.seed };
    match &cli.command {
        Command::Run { file, out, format } => {
            let scenario = ScenarioFile::load(file)?;
            let report = run_scenario(&scenario, &opts)?;
            let spec = scenario.output.clone().unwrap_or_default();
            let text = match format.unwrap_or(spec.format) {
                OutputFormat::Json => report.to_json()?,
                OutputFormat::Csv => report.to_csv()?,
            };
            let target = out.clone().or_else(|| spec.path.map(PathBuf::from));
            emit(&text, target.as_deref())?;
            if !cli.quiet {
                for c in &report.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    eprintln!("{tag} {} measured={} threshold={}", c.name, c.measured, c.threshold);
                }
            }
            Ok(report.exit_status())
        }
        Command::Sweep { file, param, range, out } => {
            let scenario = ScenarioFile::load(file)?;
            let spec = match (param, range) {
                (Some(p), Some(r)) => Some(SweepSpec { param: p.clone(), range: Some(r.clone()), values: None }),
                _ => None,
            };
            let outcome = sweep(&scenario, spec.as_ref(), &opts)?;
            emit(&outcome.csv, out.as_deref())?;
            if !cli.quiet {
                eprintln!("{} rows, {} failed checks", outcome.rows, outcome.failed_checks.len());
                for f in &outcome.failed_checks {
                    eprintln!("FAIL {f}");
                }
            }
            Ok(outcome.exit_status())
        }
    }
}

fn main() -> ExitCode {
    // usage errors exit with 1; clap's own default of 2 means "check failed" here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("photonbox: {e}");
            ExitCode::from(1)
        }
    }
}
