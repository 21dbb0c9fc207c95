//! `braidforge` command-line front end.

mod build;
mod io;
mod signature;
mod tower;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use braidforge::Error;

#[derive(Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Braid group representation constructions and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one construction from an input file.
    Build(build::Args),
    /// Run residual suites on a file or a generated representation.
    Verify(verify::Args),
    /// Signature of a Hermitian form, or of the induced form of a rep.
    Signature(signature::Args),
    /// Iterate the construction and report every level.
    Tower(tower::Args),
}

/// Failure with its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 3,
            Error::ResourceGuard(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(args) => build::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Signature(args) => signature::run(args),
        Command::Tower(args) => tower::run(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
