//! Browser bindings for the interactive demo in `www/`.
//!
//! Every export takes plain numbers and returns a JSON string. The work is
//! done by the `*_json` functions, which also run natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use braidforge::convolutions::{twisted_lm, ConvolutionParams};
use braidforge::correspond::{adjudicate_readings, Verdict};
use braidforge::hermitian::signature_recursive;
use braidforge::klm::klm;
use braidforge::linalg::{eigenvalues, unit, Tolerances};
use braidforge::reps::{scalar_seed, SemidirectRep};
use braidforge::samples::{rng, tower_case};

const MAX_STRANDS: usize = 6;

fn seed(
    n: usize,
    t_angle: f64,
    s_angle: f64,
    inner_angle: Option<f64>,
) -> Result<SemidirectRep, String> {
    if !(2..=MAX_STRANDS).contains(&n) {
        return Err(format!("strand count must lie in 2..={MAX_STRANDS}"));
    }
    let base = scalar_seed(n, unit(t_angle), &vec![unit(s_angle); n - 1], true)
        .map_err(|e| e.to_string())?;
    match inner_angle {
        Some(a) => twisted_lm(
            &base,
            &ConvolutionParams::artin(unit(a)).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string()),
        None => Ok(base),
    }
}

/// Signature of the induced form and the `K`, `L` dimensions as `λ`
/// runs once around the unit circle.
pub fn signature_sweep_json(
    n: usize,
    t_angle: f64,
    s_angle: f64,
    inner_angle: Option<f64>,
    steps: usize,
) -> Result<String, String> {
    let rep = seed(n, t_angle, s_angle, inner_angle)?;
    let tol = Tolerances::default();
    let steps = steps.clamp(2, 720);
    let mut points = Vec::with_capacity(steps);
    for k in 0..steps {
        let theta = std::f64::consts::TAU * k as f64 / steps as f64;
        let out = klm(
            &rep,
            &ConvolutionParams::artin(unit(theta)).map_err(|e| e.to_string())?,
            &tol,
        )
        .map_err(|e| e.to_string())?;
        let h = out.lifted.hermitian().ok_or("the seed carries no form")?;
        let sig = signature_recursive(h, rep.dim(), &tol).map_err(|e| e.to_string())?;
        points.push(json!({
            "theta": theta,
            "p": sig.p,
            "q": sig.q,
            "z": sig.z,
            "k": out.k.dim(),
            "l": out.l.dim(),
        }));
    }
    Ok(json!({ "dim": rep.dim() * rep.n(), "points": points }).to_string())
}

fn spectrum(m: &braidforge::linalg::CMatrix) -> Result<Value, String> {
    let ev = eigenvalues(m).map_err(|e| e.to_string())?;
    Ok(Value::Array(
        ev.iter().map(|z| json!([z.re, z.im])).collect(),
    ))
}

/// Eigenvalues of every generator image of the twisted construction at
/// `λ = e^{iθ}`, with the quotient dimensions.
pub fn spectra_json(
    n: usize,
    t_angle: f64,
    s_angle: f64,
    inner_angle: Option<f64>,
    lambda_angle: f64,
) -> Result<String, String> {
    let rep = seed(n, t_angle, s_angle, inner_angle)?;
    let tol = Tolerances::default();
    let out = klm(
        &rep,
        &ConvolutionParams::artin(unit(lambda_angle)).map_err(|e| e.to_string())?,
        &tol,
    )
    .map_err(|e| e.to_string())?;
    let mut generators = Vec::new();
    for (j, g) in out.lifted.g().iter().enumerate() {
        generators.push(json!({ "name": format!("x{}", j + 1), "eigenvalues": spectrum(g)? }));
    }
    for (i, s) in out.lifted.s() {
        generators.push(json!({ "name": format!("s{i}"), "eigenvalues": spectrum(s)? }));
    }
    Ok(json!({
        "lifted_dim": out.lifted.dim(),
        "k_dim": out.k.dim(),
        "l_dim": out.l.dim(),
        "quotient_dim": out.quotient.dims().1,
        "generators": generators,
    })
    .to_string())
}

/// Residuals of every convention and reading over `cases` random
/// noncommuting inputs on `n` strands.
pub fn adjudication_json(n: usize, seed_value: u64, cases: usize) -> Result<String, String> {
    if !(2..=4).contains(&n) {
        return Err("strand count must lie in 2..=4".into());
    }
    let mut r = rng(seed_value);
    let suite = (0..cases.clamp(1, 20))
        .map(|_| tower_case(&mut r, n).map(|c| (c.rep, c.lambda)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let adj = adjudicate_readings(&suite, &Tolerances::default()).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = adj
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "convention": o.convention.label(),
                "pivot": o.reading.pivot,
                "middle": o.reading.middle,
                "max_residual": if o.max_residual.is_finite() { json!(o.max_residual) } else { json!(null) },
                "pass": o.pass,
                "first_failure": o.minimal_failure.map(|(_, _, i, j, _)| [i, j]),
            })
        })
        .collect();
    let verdict = match adj.verdict {
        Verdict::Unique {
            convention,
            reading,
        } => json!({
            "kind": "unique",
            "convention": convention.label(),
            "pivot": reading.pivot,
            "middle": reading.middle,
        }),
        Verdict::None => json!({ "kind": "none" }),
        Verdict::Multiple(v) => json!({ "kind": "multiple", "count": v.len() }),
    };
    Ok(json!({ "rows": rows, "verdict": verdict }).to_string())
}

fn inner(angle: f64) -> Option<f64> {
    angle.is_finite().then_some(angle)
}

/// Pass `NaN` as `inner_angle` for a scalar seed.
#[wasm_bindgen]
pub fn signature_sweep(
    n: usize,
    t_angle: f64,
    s_angle: f64,
    inner_angle: f64,
    steps: usize,
) -> Result<String, JsValue> {
    signature_sweep_json(n, t_angle, s_angle, inner(inner_angle), steps)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generator_spectra(
    n: usize,
    t_angle: f64,
    s_angle: f64,
    inner_angle: f64,
    lambda_angle: f64,
) -> Result<String, JsValue> {
    spectra_json(n, t_angle, s_angle, inner(inner_angle), lambda_angle)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reading_adjudication(n: usize, seed_value: u32, cases: usize) -> Result<String, JsValue> {
    adjudication_json(n, seed_value as u64, cases).map_err(|e| JsValue::from_str(&e))
}
