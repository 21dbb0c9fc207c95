use std::path::PathBuf;

use clap::{Args as ClapArgs, ValueEnum};

use braidforge::convolutions::{twisted_lm, ConvolutionParams};
use braidforge::hermitian::{signature_oracle, signature_recursive};
use braidforge::linalg::ensure_hermitian;
use braidforge::repfile::RepKind;

use crate::io::{lambda, read_file, tolerances};
use crate::{CliResult, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Recursive,
    Oracle,
    Both,
}

#[derive(ClapArgs)]
pub struct Args {
    /// A `hermitian` file, or a semidirect rep with a form (needs `--lambda`).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    algorithm: Algorithm,
    /// Block size for the recursion; defaults to the file's `N`.
    #[arg(long)]
    block: Option<usize>,
}

pub fn run(args: Args) -> CliResult<u8> {
    let tol = tolerances()?;
    let file = read_file(&args.input)?;
    let (h, block) = match file.kind {
        RepKind::Hermitian => (file.hermitian_matrix()?, file.dim),
        RepKind::Semidirect => {
            let rep = file.to_semidirect()?;
            let l = lambda(args.lambda.as_deref())?.ok_or_else(|| {
                Failure::validation("--lambda is required to build the induced form")
            })?;
            let lifted = twisted_lm(&rep, &ConvolutionParams::new(l, rep.action_exponent())?)?;
            let h = lifted.hermitian().cloned().ok_or_else(|| {
                Failure::validation("no induced form: the input needs H and |lambda| = 1")
            })?;
            (h, rep.dim())
        }
        other => {
            return Err(Failure::validation(format!(
                "cannot take a signature of a {other:?} file"
            )))
        }
    };
    ensure_hermitian(&h, &tol)?;
    let block = args.block.unwrap_or(block).max(1);
    if h.nrows() % block != 0 {
        return Err(Failure::validation(format!(
            "block size {block} does not divide {}",
            h.nrows()
        )));
    }
    let oracle = || signature_oracle(&h, &tol);
    match args.algorithm {
        Algorithm::Oracle => println!("{}", oracle()?),
        Algorithm::Recursive => {
            let report = signature_recursive(&h, block, &tol)?;
            println!("{}", report.inertia());
            if let Some(why) = &report.fallback_reason {
                println!("fallback: {why}");
            }
        }
        Algorithm::Both => {
            let report = signature_recursive(&h, block, &tol)?;
            let o = oracle()?;
            println!("recursive: {}", report.inertia());
            println!("oracle: {o}");
            if let Some(why) = &report.fallback_reason {
                println!("fallback: {why}");
            }
            if report.inertia() == o {
                println!("MATCH");
            } else {
                println!("MISMATCH");
                return Ok(2);
            }
        }
    }
    Ok(0)
}
