use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use photonfield::export::write_operator;
use photonfield::run::{basis_for, named_operator, OPERATOR_NAMES};
use photonfield::tables::{write_grid, write_scan};
use photonfield::{run_expect, run_vacuum_scan, run_verify, LabError, RunOptions, Scenario};

/// Verify the photon field lattice and emit data for plotting.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on a
/// configuration or precondition error.
#[derive(Debug, Parser)]
#[command(name = "photonfield", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for output files; standard output when omitted.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Multiplies every check tolerance.
    #[arg(long, global = true, value_name = "FLOAT", default_value_t = 1.0)]
    tolerance_scale: f64,

    /// Seed for sampled checks; overrides the scenario's seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the scenario's checks and write a JSON report.
    Verify,
    /// Write the field expectation grid as CSV.
    Expect,
    /// Write vacuum ⟨E²⟩ against momentum cutoff as CSV.
    VacuumScan,
    /// Export an operator in coordinate-list form.
    DumpOperator {
        /// Operator name; falls back to the scenario's `dump.operator`.
        #[arg(long, long_help = format!("Operator name, one of: {OPERATOR_NAMES}"))]
        operator: Option<String>,
    },
}

fn emit(out: Option<&Path>, file: &str, bytes: &[u8]) -> Result<(), LabError> {
    match out {
        Some(dir) => {
            let io_err = |source| LabError::Io {
                path: dir.display().to_string(),
                source,
            };
            fs::create_dir_all(dir).map_err(io_err)?;
            let path = dir.join(file);
            fs::write(&path, bytes).map_err(|source| LabError::Io {
                path: path.display().to_string(),
                source,
            })
        }
        None => io::stdout().write_all(bytes).map_err(|source| LabError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn csv_bytes(result: csv::Result<()>, buf: Vec<u8>) -> Result<Vec<u8>, LabError> {
    result.map_err(|e| LabError::Io {
        path: "<csv>".into(),
        source: io::Error::other(e.to_string()),
    })?;
    Ok(buf)
}

fn execute(cli: &Cli) -> Result<bool, LabError> {
    let config = cli.config.as_ref().ok_or(LabError::Config {
        path: "--config".into(),
        message: "a scenario file is required".into(),
    })?;
    let scenario = Scenario::load(config)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Verify => {
            let options = RunOptions {
                tolerance_scale: cli.tolerance_scale,
                seed: cli.seed,
            };
            let report = run_verify(&scenario, &options)?;
            eprint!("{}", report.summary());
            emit(out, &scenario.outputs.report, report.to_json().as_bytes())?;
            Ok(report.pass)
        }
        Command::Expect => {
            let rows = run_expect(&scenario)?;
            let mut buf = Vec::new();
            let result = write_grid(&mut buf, &rows);
            emit(out, &scenario.outputs.grid, &csv_bytes(result, buf)?)?;
            Ok(true)
        }
        Command::VacuumScan => {
            let rows = run_vacuum_scan(&scenario)?;
            let mut buf = Vec::new();
            let result = write_scan(&mut buf, &rows);
            emit(out, &scenario.outputs.vacuum_scan, &csv_bytes(result, buf)?)?;
            Ok(true)
        }
        Command::DumpOperator { operator } => {
            let name = operator
                .clone()
                .or_else(|| scenario.dump.as_ref().map(|d| d.operator.clone()))
                .ok_or(LabError::MissingSection("dump"))?;
            let basis = basis_for(&scenario)?;
            let op = named_operator(&scenario, &basis, &name)?;
            let mut buf = Vec::new();
            write_operator(&mut buf, &op, &basis).expect("writing to memory");
            emit(out, &format!("{}.coo", file_stem(&name)), &buf)?;
            Ok(true)
        }
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect::<String>()
        .trim_end_matches('_')
        .to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
