mod args;
mod commands;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// Why no result was produced. Each kind has its own exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(redwords::Error),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use redwords::Error as E;
        match self {
            CliError::Usage(_) | CliError::Library(E::Config(_)) => 1,
            CliError::Library(E::Malformed(_) | E::Contract(_)) => 2,
            CliError::Library(E::ResourceLimit { .. }) => 3,
            CliError::Library(E::Internal(_)) | CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<redwords::Error> for CliError {
    fn from(e: redwords::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    }
    let report = commands::run(cli)?;
    let mut body = if cli.json {
        serde_json::to_string_pretty(&report.json).expect("reports serialize")
    } else {
        report.text
    };
    body.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("redwords: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
