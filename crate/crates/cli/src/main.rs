//! `mheight`: compute, cross-check and tabulate m-height profiles.
//!
//! Exit codes: 0 success, 1 disagreement or failed check, 2 bad arguments,
//! 3 a loaded code violates its invariants. `HEIGHTS_THREADS` caps the
//! worker pool.

mod args;
mod commands;
mod report;
mod select;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, OutFormat, OutputArgs};
use mheight::Tolerance64;
use report::RunReport;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    InvalidCode(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::InvalidCode(_) => 3,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HEIGHTS_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| CliError::Usage(format!("HEIGHTS_THREADS must be an integer ≥ 1, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Failed(e.to_string()))
}

fn tolerance(out: &OutputArgs) -> Tolerance64 {
    out.tol.map_or_else(Tolerance64::default, Tolerance64::uniform)
}

fn emit(report: &RunReport, format: OutFormat) {
    match format {
        OutFormat::Json => println!("{}", report.to_json()),
        OutFormat::Csv => print!("{}", report.to_csv()),
    }
}

fn run(cli: Cli) -> Result<RunReport, CliError> {
    configure_threads()?;
    let (report, out) = match &cli.command {
        Command::Profile(a) => (commands::profile(a, &tolerance(&a.output))?, a.output.out),
        Command::Crosscheck(a) => (commands::crosscheck(a, &tolerance(&a.output))?, a.output.out),
        Command::VerifyTables(a) => (commands::verify_tables(a, &tolerance(&a.output))?, a.output.out),
    };
    emit(&report, out);
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) if report.passed => ExitCode::SUCCESS,
        Ok(report) => {
            if let Some(d) = report.crosscheck.as_ref().and_then(|x| x.max_discrepancy.as_ref()) {
                eprintln!("max discrepancy {} at m = {} ({})", d.relative.csv(), d.m, d.method);
            }
            for c in report.cells.iter().flatten().filter(|c| !c.passed) {
                eprintln!(
                    "failed: table {} code {} m = {}: expected {}, computed {}",
                    c.table,
                    c.code,
                    c.m,
                    c.expected.csv(),
                    c.computed.csv()
                );
            }
            ExitCode::from(1)
        }
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::InvalidCode(m) | CliError::Failed(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
