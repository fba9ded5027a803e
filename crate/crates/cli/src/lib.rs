//! Command-line driver: argument and config handling, the `solve`, `scan`,
//! `table` and `validate` commands, and the embedded reference tables.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod golden;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

use args::{Cli, Command, OutputArgs, Pairs};
use commands::Report;
use error::{CliError, CliResult};

/// What a successful invocation produced.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub out: Option<PathBuf>,
}

fn dump(pairs: Pairs, output: &OutputArgs) -> Report {
    let mut csv = String::new();
    for (k, v) in pairs.into_iter().chain(output.pairs()) {
        csv.push_str(&format!("{k}={v}\n"));
    }
    Report { csv, regression: None }
}

fn configure_threads(threads: Option<usize>) -> CliResult<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::config("--threads must be >= 1"));
    }
    #[cfg(feature = "parallel")]
    {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    #[cfg(not(feature = "parallel"))]
    log::warn!("--threads {n} ignored: built without the parallel feature");
    Ok(())
}

/// Parses `args` (program name first), expands `--config`, and runs the command.
pub fn run(args: Vec<OsString>) -> CliResult<Outcome> {
    let cli = Cli::try_parse_from(config::expand(args)?)?;
    let (report, output) = match &cli.command {
        Command::Solve(a) if a.dump_config => (dump(a.pairs(), &a.output), None),
        Command::Scan(a) if a.dump_config => (dump(a.pairs(), &a.output), None),
        Command::Validate(a) if a.dump_config => (dump(a.pairs(), &a.output), None),
        Command::Solve(a) => {
            configure_threads(a.output.threads)?;
            (commands::solve(a)?, Some(&a.output))
        }
        Command::Scan(a) => {
            configure_threads(a.output.threads)?;
            (commands::scan(a)?, Some(&a.output))
        }
        Command::Table(a) => {
            configure_threads(a.output.threads)?;
            (commands::table(a)?, Some(&a.output))
        }
        Command::Validate(a) => {
            configure_threads(a.output.threads)?;
            (commands::validate(a)?, Some(&a.output))
        }
    };
    Ok(Outcome { report, out: output.and_then(|o| o.out.clone()) })
}
