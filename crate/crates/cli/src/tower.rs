use std::fs;
use std::path::PathBuf;

use clap::Args as ClapArgs;
use serde_json::json;

use braidforge::klm::{tower, TowerOptions};
use braidforge::repfile::{parse_complex, RepFile};
use braidforge::reps::scalar_seed;

use crate::io::{read_file, tolerances};
use crate::{CliResult, Failure};

#[derive(ClapArgs)]
pub struct Args {
    #[arg(long)]
    depth: usize,
    /// One `re,im` per level, separated by `;` or given by repeating the
    /// flag; a single value is reused at every level.
    #[arg(
        long,
        required = true,
        value_delimiter = ';',
        allow_hyphen_values = true
    )]
    lambdas: Vec<String>,
    /// Seed representation file; without it a scalar seed is built.
    #[arg(long)]
    seed_rep: Option<PathBuf>,
    /// Strands of the scalar seed.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Free-generator scalar of the seed, `re,im`.
    #[arg(
        long,
        default_value = "0.5403023058681398,0.8414709848078965",
        allow_hyphen_values = true
    )]
    t: String,
    /// Braid-generator scalar of the seed, `re,im`.
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    s: String,
    /// Skip the quotient by K + L.
    #[arg(long)]
    no_quotient: bool,
    /// Largest lifted dimension allowed before stopping with exit code 4.
    #[arg(long, default_value_t = TowerOptions::default().max_dim)]
    max_dim: usize,
    /// Directory for one representation file per level and `summary.json`.
    #[arg(long)]
    emit_levels: Option<PathBuf>,
}

pub fn run(args: Args) -> CliResult<u8> {
    let tol = tolerances()?;
    if args.depth == 0 {
        return Err(Failure::validation("--depth must be at least 1"));
    }
    let mut lambdas = args
        .lambdas
        .iter()
        .map(|t| parse_complex(t))
        .collect::<Result<Vec<_>, _>>()?;
    if lambdas.len() == 1 {
        lambdas = vec![lambdas[0]; args.depth];
    }
    let seed = match &args.seed_rep {
        Some(path) => read_file(path)?.to_semidirect()?,
        None => {
            if args.n < 2 {
                return Err(Failure::validation("--n must be at least 2"));
            }
            let t = parse_complex(&args.t)?;
            let s = parse_complex(&args.s)?;
            scalar_seed(args.n, t, &vec![s; args.n - 1], true)?
        }
    };
    let options = TowerOptions {
        quotient: !args.no_quotient,
        max_dim: args.max_dim,
        ..TowerOptions::default()
    };
    let result = tower(&seed, &lambdas, args.depth, &options, &tol)?;
    println!("level  lifted  K  L  dim  compat      braid       commutant  signature");
    for l in &result.levels {
        let num = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.2e}"));
        println!(
            "{:<6} {:<7} {:<2} {:<2} {:<4} {:<11} {:<11} {:<10} {}",
            l.level,
            l.lifted_dim,
            l.k_dim,
            l.l_dim,
            l.dim,
            num(l.compat_residual),
            num(l.braid_residual),
            l.commutant_dim
                .map_or_else(|| "-".to_string(), |c| c.to_string()),
            l.signature
                .as_ref()
                .map_or_else(|| "-".to_string(), |s| s.inertia().to_string())
        );
    }
    if result.degenerate {
        println!(
            "stopped early: the quotient at level {} is zero-dimensional",
            result.levels.len()
        );
    }
    if let Some(dir) = &args.emit_levels {
        let io_err = |e: std::io::Error| {
            Failure::validation(format!("cannot write to {}: {e}", dir.display()))
        };
        fs::create_dir_all(dir).map_err(io_err)?;
        for (rep, level) in result.reps.iter().zip(&result.levels) {
            let file = RepFile::from_semidirect(rep)
                .with_metadata("level", json!(level.level))
                .with_metadata("lambda", json!(level.lambda));
            fs::write(
                dir.join(format!("level-{}.json", level.level)),
                file.to_json(),
            )
            .map_err(io_err)?;
        }
        let summary = json!({
            "depth": args.depth,
            "degenerate": result.degenerate,
            "levels": result.levels,
        });
        let mut text = serde_json::to_string_pretty(&summary).expect("plain values");
        text.push('\n');
        fs::write(dir.join("summary.json"), text).map_err(io_err)?;
    }
    Ok(0)
}
