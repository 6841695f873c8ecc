//! Command-line harness for PRC, DPRC and their baselines.

pub mod bench;
pub mod cli;
pub mod error;
pub mod report;
pub mod trace;

use std::fs;
use std::path::Path;

pub use bench::run_bench;
pub use cli::{Cli, Command};
pub use error::CliError;
pub use trace::run_trace;

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs a parsed command, writing files and standard output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Bench(args) => {
            let report = run_bench(args)?;
            if let Some(path) = &args.out {
                write_file(path, &report.to_json(args.timings))?;
            }
            print!("{}", report.to_table());
        }
        Command::Trace(args) => {
            let (result, csv) = run_trace(args)?;
            match &args.out {
                Some(path) => {
                    write_file(path, &csv)?;
                    eprintln!(
                        "stop={} iterations={} distance={}",
                        result.stop_reason.as_str(),
                        result.iterations_used,
                        result.distance
                    );
                }
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}
