//! The evaluation verbs. Each returns a JSON value that echoes its inputs.

use std::collections::BTreeMap;

use gl3inv::appell::{
    f1_euler, f1_value, k3_closed_form, k_integral, picard_closed_form, picard_integral, F1Params,
    QuadratureSpec,
};
use gl3inv::derivs::deriv_quad;
use gl3inv::eisenstein::EisInt;
use gl3inv::eta;
use gl3inv::heisenberg::{decompose_heisenberg, HalfLattice, HeisenbergElem};
use gl3inv::lft;
use gl3inv::picard::{j_invariants, modular_solve, order5_map, transform_abg, ModuliPair};
use gl3inv::suites::{run_suites, OutputFormat, Suite, SuiteConfig, VerificationReport};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::mapfile::MapInput;

/// Environment variable holding the default tolerance for `verify`.
pub const TOLERANCE_ENV: &str = "GL3INV_TOL";

/// Resolves suite names, where `all` or no names select every suite.
pub fn select_suites(names: &[String]) -> CliResult<Vec<Suite>> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            n.parse()
                .map_err(|_| CliError::Usage(format!("unknown suite {n:?}")))
        })
        .collect()
}

/// Reads the default tolerance from the environment, if set.
pub fn env_tolerance() -> CliResult<Option<f64>> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(s) => {
            let t = crate::parse::real(&s)?;
            if t.is_nan() || t < 0.0 {
                return Err(CliError::Usage(format!(
                    "{TOLERANCE_ENV} must be nonnegative"
                )));
            }
            Ok(Some(t))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{TOLERANCE_ENV}: {e}"))),
    }
}

pub fn verify(
    suites: &[String],
    seed: u64,
    overrides: Vec<(String, f64)>,
    samples: Option<usize>,
    format: OutputFormat,
) -> CliResult<VerificationReport> {
    if samples == Some(0) {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let cfg = SuiteConfig {
        suites: select_suites(suites)?,
        seed,
        tolerance_overrides: overrides.into_iter().collect::<BTreeMap<_, _>>(),
        default_tolerance: env_tolerance()?,
        samples,
        format,
    };
    Ok(run_suites(&cfg)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum F1Method {
    Series,
    Euler,
    Both,
}

pub fn f1(p: &F1Params, x: Complex64, y: Complex64, method: F1Method) -> CliResult<Value> {
    let mut out = json!({
        "input": {"a": p.a, "b": p.b, "bp": p.bprime, "c": p.c, "x": x, "y": y},
    });
    if method != F1Method::Euler {
        out["series"] = json!(f1_value(p, x, y)?);
    }
    if method != F1Method::Series {
        out["euler"] = json!(f1_euler(p, x, y, &QuadratureSpec::default())?);
    }
    Ok(out)
}

pub fn deriv(path: &str, at: [Complex64; 2]) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    let map = MapInput::from_json(&text)?;
    let m = map.jets_at(at);
    let q = deriv_quad(&m)?;
    Ok(json!({
        "input": {"map": path, "order": map.order, "at": at},
        "value": [m.u1.value(), m.u2.value()],
        "jacobian": m.jacobian(),
        "derivatives": q,
    }))
}

pub fn picard_j(l: [Complex64; 2]) -> CliResult<Value> {
    let (j1, j2) = j_invariants(l[0], l[1])?;
    Ok(json!({"input": {"l": l}, "j": [j1, j2]}))
}

fn moduli(m: [Complex64; 2]) -> CliResult<ModuliPair> {
    Ok(ModuliPair::new(m[0], m[1])?)
}

pub fn modular_solve_cmd(u: [Complex64; 2], v2: Complex64) -> CliResult<Value> {
    let roots = modular_solve(moduli(u)?, v2)?;
    Ok(json!({
        "input": {"u": u, "v2": v2},
        "roots": roots.roots,
        "residuals": roots.residuals,
        "double_root": roots.double_root,
    }))
}

pub fn transform(u: [Complex64; 2], v: [Complex64; 2]) -> CliResult<Value> {
    let abg = transform_abg(&moduli(u)?, &moduli(v)?)?;
    Ok(json!({
        "input": {"u": u, "v": v},
        "alpha": abg.alpha,
        "beta": abg.beta,
        "gamma": abg.gamma,
        "constraint_residual": abg.constraint_residual(),
    }))
}

pub fn order5(u: [Complex64; 2], v: [Complex64; 2], t: [Complex64; 2]) -> CliResult<Value> {
    let abg = transform_abg(&moduli(u)?, &moduli(v)?)?;
    Ok(json!({
        "input": {"u": u, "v": v, "t": t},
        "image": order5_map(&abg, t)?,
    }))
}

pub fn integral_picard(x: Complex64, y: Complex64) -> CliResult<Value> {
    Ok(json!({
        "input": {"x": x, "y": y},
        "quadrature": picard_integral(x, y, &QuadratureSpec::default())?,
        "closed_form": picard_closed_form(x, y)?,
    }))
}

pub fn integral_k(ki: Complex64, kj: Complex64) -> CliResult<Value> {
    Ok(json!({
        "input": {"ki": ki, "kj": kj},
        "quadrature": k_integral(ki, kj, &QuadratureSpec::default())?,
        "closed_form": k3_closed_form(ki, kj)?,
    }))
}

/// `alpha = a + bω` and `beta = (p + q√−3)/2`.
pub fn heisenberg(alpha: [i64; 2], beta: [i64; 2]) -> CliResult<Value> {
    let e = HeisenbergElem::new(
        EisInt::new(alpha[0], alpha[1]),
        HalfLattice::new(beta[0], beta[1]),
    )?;
    let d = decompose_heisenberg(&e)?;
    let word = d.word();
    Ok(json!({
        "input": {"alpha": alpha, "beta": beta},
        "m": d.m,
        "n": d.n,
        "l": d.l,
        "central_exponent": d.central_exponent,
        "word": word.to_string(),
        "verified": e.to_matrix().is_some_and(|m| lft::verify_word(&m, &word)),
    }))
}

pub fn generators() -> Value {
    json!(lft::generators())
}

pub fn ledger() -> CliResult<Value> {
    let multipliers: Vec<Value> = eta::multiplier_words()
        .into_iter()
        .map(|(w, expected)| {
            let phase = eta::phase_ledger(&w)
                .map(|q| q.to_string())
                .map_err(|e| e.to_string());
            json!({
                "word": w.to_string(),
                "expected": expected.to_string(),
                "phase": phase.clone().unwrap_or_default(),
                "matches": phase == Ok(expected.to_string()),
            })
        })
        .collect();
    let claims = eta::eta_variant_identities()?;
    let failed = claims.iter().filter(|c| !c.passed()).count();
    Ok(json!({
        "multipliers": multipliers,
        "claims": claims,
        "failed_claims": failed,
    }))
}

/// Plain-text rendering: one `key: value` line per top-level field.
pub fn render(value: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values serialise");
            s.push('\n');
            s
        }
        OutputFormat::Text => match value {
            Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
            Value::Array(items) => items.iter().map(|v| format!("{v}\n")).collect(),
            v => format!("{v}\n"),
        },
    }
}
