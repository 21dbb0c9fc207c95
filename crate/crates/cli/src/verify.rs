use std::path::PathBuf;

use clap::{Args as ClapArgs, ValueEnum};
use serde_json::{json, Value};

use braidforge::convolutions::{twisted_lm, ConvolutionParams, HaraokaReading};
use braidforge::correspond::verify_main_theorem;
use braidforge::hermitian::{
    annihilation_check, check_unitary, kernel_equals_kl, signature_oracle, signature_recursive,
};
use braidforge::klm::klm;
use braidforge::linalg::{hermitian_residual, Tolerances, C64};
use braidforge::reps::{
    check_braid_relations, check_semidirect_compat, random_phase, random_unitary_free_rep,
    Convention, SemidirectRep,
};
use braidforge::samples::{rng, scalar_case, tower_case};

use crate::io::{lambda, read_file, tolerances};
use crate::{CliResult, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Relations,
    Correspondence,
    Unitarity,
    Signature,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Generate {
    Scalar,
    Tower,
    Random,
}

#[derive(ClapArgs)]
pub struct Args {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Semidirect representation file.
    #[arg(
        long,
        conflicts_with = "generate",
        required_unless_present = "generate"
    )]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    generate: Option<Generate>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of strands for generated input.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Dimension of generated random free representations.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Convolution parameter `re,im`; generated inputs draw their own.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

struct Check {
    suite: &'static str,
    name: String,
    value: Option<f64>,
    limit: Option<f64>,
    status: Status,
    note: String,
}

impl Check {
    fn residual(suite: &'static str, name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check {
            suite,
            name: name.into(),
            value: Some(value),
            limit: Some(limit),
            status: if value <= limit {
                Status::Pass
            } else {
                Status::Fail
            },
            note: String::new(),
        }
    }

    fn verdict(suite: &'static str, name: impl Into<String>, pass: bool, note: String) -> Self {
        Check {
            suite,
            name: name.into(),
            value: None,
            limit: None,
            status: if pass { Status::Pass } else { Status::Fail },
            note,
        }
    }

    fn skip(suite: &'static str, name: impl Into<String>, why: &str) -> Self {
        Check {
            suite,
            name: name.into(),
            value: None,
            limit: None,
            status: Status::Skip,
            note: why.into(),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "check": self.name,
            "value": self.value,
            "limit": self.limit,
            "status": self.status.label(),
            "note": self.note,
        })
    }
}

fn input(args: &Args) -> CliResult<(SemidirectRep, Option<C64>, String)> {
    let given = lambda(args.lambda.as_deref())?;
    if let Some(path) = &args.input {
        let rep = read_file(path)?.to_semidirect()?;
        return Ok((rep, given, path.display().to_string()));
    }
    if args.n < 2 {
        return Err(Failure::validation("--n must be at least 2"));
    }
    let mut r = rng(args.seed);
    let (rep, lam, label) = match args.generate.expect("clap enforces input or generate") {
        Generate::Scalar => {
            let c = scalar_case(&mut r, args.n)?;
            (c.rep, c.lambda, c.label)
        }
        Generate::Tower => {
            let c = tower_case(&mut r, args.n)?;
            (c.rep, c.lambda, c.label)
        }
        Generate::Random => {
            let rep = random_unitary_free_rep(args.n, args.dim, args.seed)?;
            (
                rep,
                random_phase(&mut r),
                format!("random free n={} N={}", args.n, args.dim),
            )
        }
    };
    Ok((
        rep,
        Some(given.unwrap_or(lam)),
        format!("{label} seed={}", args.seed),
    ))
}

fn relations(
    rep: &SemidirectRep,
    lam: Option<C64>,
    tol: &Tolerances,
    out: &mut Vec<Check>,
) -> CliResult<()> {
    let limit = tol.residual_rel;
    out.push(Check::residual(
        "relations",
        "input compatibility",
        check_semidirect_compat(rep)?,
        limit,
    ));
    if rep.has_full_braid() {
        out.push(Check::residual(
            "relations",
            "input braid relations",
            check_braid_relations(rep)?,
            limit,
        ));
    }
    match lam {
        Some(l) => {
            let lifted = twisted_lm(rep, &ConvolutionParams::new(l, rep.action_exponent())?)?;
            out.push(Check::residual(
                "relations",
                "lifted compatibility",
                check_semidirect_compat(&lifted)?,
                limit,
            ));
            if lifted.has_full_braid() {
                out.push(Check::residual(
                    "relations",
                    "lifted braid relations",
                    check_braid_relations(&lifted)?,
                    limit,
                ));
            }
        }
        None => out.push(Check::skip("relations", "lifted relations", "no --lambda")),
    }
    Ok(())
}

fn correspondence(
    rep: &SemidirectRep,
    lam: Option<C64>,
    tol: &Tolerances,
    out: &mut Vec<Check>,
) -> CliResult<()> {
    let Some(l) = lam else {
        out.push(Check::skip("correspondence", "main theorem", "no --lambda"));
        return Ok(());
    };
    if !rep.has_full_braid() || rep.action_exponent() != 1 {
        out.push(Check::skip(
            "correspondence",
            "main theorem",
            "needs all braid generators and k = 1",
        ));
        return Ok(());
    }
    let report = verify_main_theorem(
        rep,
        l,
        Convention::default(),
        HaraokaReading::default(),
        tol,
    )?;
    let mut check = Check::residual(
        "correspondence",
        "max r_ij",
        report.max_residual,
        tol.residual_rel,
    );
    if let Some((i, j)) = report.induction_break {
        check.note = format!("first break at ({i},{j})");
    }
    out.push(check);
    Ok(())
}

fn induced_form(
    rep: &SemidirectRep,
    lam: Option<C64>,
) -> CliResult<Result<SemidirectRep, &'static str>> {
    let Some(l) = lam else {
        return Ok(Err("no --lambda"));
    };
    if rep.hermitian().is_none() {
        return Ok(Err("input carries no Hermitian form"));
    }
    if (l.norm() - 1.0).abs() > 1e-9 {
        return Ok(Err("needs |lambda| = 1"));
    }
    Ok(Ok(twisted_lm(
        rep,
        &ConvolutionParams::new(l, rep.action_exponent())?,
    )?))
}

fn unitarity(
    rep: &SemidirectRep,
    lam: Option<C64>,
    tol: &Tolerances,
    out: &mut Vec<Check>,
) -> CliResult<()> {
    let lifted = match induced_form(rep, lam)? {
        Ok(l) => l,
        Err(why) => {
            out.push(Check::skip("unitarity", "induced form", why));
            return Ok(());
        }
    };
    let h = lifted.hermitian().expect("unit lambda with a form");
    let loose = 10.0 * tol.residual_rel;
    out.push(Check::residual(
        "unitarity",
        "hermiticity",
        hermitian_residual(h),
        tol.residual_rel,
    ));
    out.push(Check::residual(
        "unitarity",
        "generators preserve the form",
        check_unitary(&lifted.generator_images(), h)?,
        loose,
    ));
    let result = klm(
        rep,
        &ConvolutionParams::new(lam.expect("checked"), rep.action_exponent())?,
        tol,
    )?;
    let (hk, hl) = annihilation_check(h, &result.k, &result.l)?;
    out.push(Check::residual(
        "unitarity",
        format!("form kills K (dim {})", result.k.dim()),
        hk,
        loose,
    ));
    out.push(Check::residual(
        "unitarity",
        format!("form kills L (dim {})", result.l.dim()),
        hl,
        loose,
    ));
    let cmp = kernel_equals_kl(h, result.quotient.invariant(), tol)?;
    out.push(Check::verdict(
        "unitarity",
        "kernel equals K + L",
        cmp.pass,
        format!("dims {} vs {}", cmp.kernel_dim, cmp.subspace_dim),
    ));
    Ok(())
}

fn signature(
    rep: &SemidirectRep,
    lam: Option<C64>,
    tol: &Tolerances,
    out: &mut Vec<Check>,
) -> CliResult<()> {
    let lifted = match induced_form(rep, lam)? {
        Ok(l) => l,
        Err(why) => {
            out.push(Check::skip("signature", "recursive vs oracle", why));
            return Ok(());
        }
    };
    let h = lifted.hermitian().expect("unit lambda with a form");
    let report = signature_recursive(h, rep.dim(), tol)?;
    let oracle = signature_oracle(h, tol)?;
    out.push(Check::verdict(
        "signature",
        "recursive vs oracle",
        report.inertia() == oracle,
        format!(
            "{} / {oracle}, fallbacks {}",
            report.inertia(),
            usize::from(report.fallback_used)
        ),
    ));
    Ok(())
}

fn fmt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.3e}"))
}

pub fn run(args: Args) -> CliResult<u8> {
    let tol = tolerances()?;
    let (rep, lam, label) = input(&args)?;
    let mut checks = Vec::new();
    let wants = |s: Suite| args.suite == Suite::All || args.suite == s;
    if wants(Suite::Relations) {
        relations(&rep, lam, &tol, &mut checks)?;
    }
    if wants(Suite::Correspondence) {
        correspondence(&rep, lam, &tol, &mut checks)?;
    }
    if wants(Suite::Unitarity) {
        unitarity(&rep, lam, &tol, &mut checks)?;
    }
    if wants(Suite::Signature) {
        signature(&rep, lam, &tol, &mut checks)?;
    }
    let pass = checks.iter().all(|c| c.status != Status::Fail);
    if args.json {
        let report = json!({
            "input": label,
            "lambda": lam.map(|l| [l.re, l.im]),
            "residual_rel": tol.residual_rel,
            "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "pass": pass,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("plain values")
        );
    } else {
        println!("input: {label}");
        if let Some(l) = lam {
            println!("lambda: {},{}", l.re, l.im);
        }
        let width = checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        println!(
            "{:<15} {:<width$} {:>10} {:>10}  status",
            "suite", "check", "value", "limit"
        );
        for c in &checks {
            println!(
                "{:<15} {:<width$} {:>10} {:>10}  {}{}",
                c.suite,
                c.name,
                fmt_num(c.value),
                fmt_num(c.limit),
                c.status.label(),
                if c.note.is_empty() {
                    String::new()
                } else {
                    format!("  ({})", c.note)
                }
            );
        }
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 2 })
}
