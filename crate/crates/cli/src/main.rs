use std::io::Write;
use std::process::ExitCode;

use trispectra_cli::error::{CliError, EXIT_OK, EXIT_REGRESSION};

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = match trispectra_cli::run(std::env::args_os().collect()) {
        Ok(outcome) => match emit(&outcome.report.csv, outcome.out.as_deref()) {
            Err(e) => {
                eprintln!("trispectra: {e}");
                e.exit_code()
            }
            Ok(()) => match &outcome.report.regression {
                Some(msg) => {
                    eprintln!("trispectra: regression: {msg}");
                    EXIT_REGRESSION
                }
                None => EXIT_OK,
            },
        },
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("trispectra: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
