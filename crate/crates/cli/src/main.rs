//! `cutgeom`: command-line access to the cut-volume and distance computations.
//!
//! Records go to stdout (or `--out PATH`) as CSV with a header, or as JSON
//! lines with `--json`. Exit codes: 0 success, 1 other failure, 2 usage,
//! 3 domain error, 4 capability error.

mod args;
mod commands;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// Why a command did not produce output.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(cutgeom::Error),
    Other(String),
}

impl From<cutgeom::Error> for Failure {
    fn from(e: cutgeom::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(cutgeom::Error::Domain(_)) => 3,
            Failure::Lib(cutgeom::Error::Capability(_)) => 4,
            Failure::Lib(_) | Failure::Other(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Lib(e) => e.fmt(f),
            Failure::Other(m) => f.write_str(m),
        }
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let output = commands::dispatch(&cli.command)?;
    match &cli.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            output::render(&output, cli.json, &mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            output::render(&output, cli.json, &mut lock)?;
        }
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("cutgeom: {failure}");
            failure.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
