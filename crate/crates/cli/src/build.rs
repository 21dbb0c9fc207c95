use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args as ClapArgs, ValueEnum};
use serde_json::json;

use braidforge::convolutions::{
    additive_b0j, basis_matrix_p, dr_matrix, haraoka_convolution, lm_sigma, twisted_lm, wada_lm,
    ConvolutionParams, HaraokaReading, WadaRowScaling,
};
use braidforge::klm::klm;
use braidforge::linalg::CMatrix;
use braidforge::repfile::{RepFile, RepKind};
use braidforge::reps::{restrict_to_pure, Convention, PureBraidAntiRep};

use crate::io::{lambda, read_file, tolerances, write_text};
use crate::{CliResult, Failure};

#[derive(Clone, Copy, ValueEnum)]
pub enum Construction {
    Lm,
    Dr,
    Tlm,
    Wada,
    Klm,
    Haraoka,
    B0j,
    #[value(name = "basisP")]
    BasisP,
}

#[derive(ClapArgs)]
pub struct Args {
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(long)]
    input: PathBuf,
    /// Convolution parameter as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Exponent of the free-group action.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    k: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn pure_input(file: &RepFile) -> CliResult<PureBraidAntiRep> {
    match file.kind {
        RepKind::PureAnti => Ok(file.to_pure()?),
        RepKind::Semidirect => Ok(restrict_to_pure(
            &file.to_semidirect()?,
            Convention::default(),
        )?),
        other => Err(Failure::validation(format!(
            "expected a semidirect or pure_anti file, got {other:?}"
        ))),
    }
}

fn keyed(prefix: &str, mats: impl IntoIterator<Item = CMatrix>) -> BTreeMap<String, CMatrix> {
    mats.into_iter()
        .enumerate()
        .map(|(k, m)| (format!("{prefix}{}", k + 1), m))
        .collect()
}

pub fn run(args: Args) -> CliResult<u8> {
    let file = read_file(&args.input)?;
    let tol = tolerances()?;
    let lam = lambda(args.lambda.as_deref())?;
    let need_lambda =
        || lam.ok_or_else(|| Failure::validation("--lambda is required for this construction"));
    let out = match args.construction {
        Construction::Lm => {
            let rep = file.to_semidirect()?;
            let s = (1..rep.n())
                .map(|i| lm_sigma(&rep, i))
                .collect::<Result<Vec<_>, _>>()?;
            RepFile::from_matrices(rep.n(), rep.dim() * rep.n(), &keyed("s", s))
        }
        Construction::Dr => {
            let rep = file.to_semidirect()?;
            let l = need_lambda()?;
            let x = (1..=rep.n())
                .map(|j| dr_matrix(rep.g(), l, j))
                .collect::<Result<Vec<_>, _>>()?;
            RepFile::from_matrices(rep.n(), rep.dim() * rep.n(), &keyed("x", x))
        }
        Construction::Tlm => {
            let rep = file.to_semidirect()?;
            let params = ConvolutionParams::new(need_lambda()?, args.k)?;
            RepFile::from_semidirect(&twisted_lm(&rep, &params)?)
        }
        Construction::Wada => {
            let rep = file.to_semidirect()?;
            let params = ConvolutionParams::new(need_lambda()?, args.k)?;
            RepFile::from_semidirect(&wada_lm(&rep, &params, WadaRowScaling::default())?)
        }
        Construction::Klm => {
            let rep = file.to_semidirect()?;
            let params = ConvolutionParams::new(need_lambda()?, args.k)?;
            let result = klm(&rep, &params, &tol)?;
            let meta = json!({
                "k_dim": result.k.dim(),
                "l_dim": result.l.dim(),
                "invariance_residual": result.invariance_residual,
                "l_pointwise_residual": result.l_pointwise_residual,
            });
            match &result.rep {
                Some(q) => RepFile::from_semidirect(q).with_metadata("klm", meta),
                None => {
                    eprintln!("warning: the quotient is zero-dimensional");
                    RepFile::from_matrices(rep.n(), 0, &BTreeMap::new())
                        .with_metadata("klm", meta)
                        .with_metadata("degenerate", json!(true))
                }
            }
        }
        Construction::Haraoka => {
            let m = pure_input(&file)?;
            RepFile::from_pure(&haraoka_convolution(
                &m,
                need_lambda()?,
                HaraokaReading::default(),
            )?)
        }
        Construction::B0j => {
            let named = file.named_matrices()?;
            let mut a0 = Vec::new();
            for j in 1..=file.n {
                let key = format!("A{j}");
                a0.push(
                    named
                        .get(&key)
                        .cloned()
                        .ok_or_else(|| Failure::validation(format!("input lacks matrix {key}")))?,
                );
            }
            let l = need_lambda()?;
            let b = (1..=file.n)
                .map(|j| additive_b0j(&a0, l, j))
                .collect::<Result<Vec<_>, _>>()?;
            let dim = a0.first().map_or(0, |m| m.nrows());
            RepFile::from_matrices(file.n, dim * file.n, &keyed("B", b))
        }
        Construction::BasisP => {
            let m = pure_input(&file)?;
            let basis = basis_matrix_p(&m.first_row(), need_lambda()?)?;
            if !basis.invertible {
                eprintln!("warning: P is singular for this input");
            }
            let mut mats = BTreeMap::new();
            mats.insert("P".to_string(), basis.p);
            RepFile::from_matrices(m.n(), m.dim() * m.n(), &mats)
                .with_metadata("invertible", json!(basis.invertible))
        }
    };
    let out = match lam {
        Some(l) => out.with_metadata("lambda", json!([l.re, l.im])),
        None => out,
    };
    write_text(args.out.as_deref(), &out.to_json())?;
    Ok(0)
}
