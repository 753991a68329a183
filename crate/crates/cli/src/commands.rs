//! Subcommand implementations: validate arguments, call the library, emit
//! CSV/JSON.

use std::path::Path;

use serde::Serialize;

use flsuite_core::harness::{
    run_convergence, run_experiment, verify_kernel_estimates, BatchConfig, QuadPolicy,
    TestFunction,
};
use flsuite_core::legendre::gauss_rule;
use flsuite_core::spectral::{
    coefficients, partial_sum as eval_partial_sum, partial_sum_kernel, CoefficientMatrix,
};
use flsuite_core::variation::{
    build_variation_report, GridFunction2D, LambdaGenerator, LambdaWeights, Method,
};

use crate::{CliError, CliResult};

fn runtime_io(path: &Path, err: std::io::Error) -> CliError {
    CliError::Runtime(format!("i/o error at {}: {err}", path.display()))
}

fn write_output(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| runtime_io(path, e))
}

pub(crate) fn parse_params(flag: &str, raw: &[String]) -> Result<Vec<(String, f64)>, CliError> {
    let mut out = Vec::new();
    for item in raw {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            CliError::Validation(format!("{flag}: expected key=value, got `{item}`"))
        })?;
        let value: f64 = v.trim().parse().map_err(|_| {
            CliError::Validation(format!("{flag}: value of `{k}` must be numeric, got `{v}`"))
        })?;
        out.push((k.trim().to_string(), value));
    }
    Ok(out)
}

pub(crate) fn parse_usize_list(flag: &str, raw: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for tok in raw.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let v: i64 = tok
            .parse()
            .map_err(|_| CliError::Validation(format!("{flag}: `{tok}` is not an integer")))?;
        if v <= 0 {
            return Err(CliError::Validation(format!("{flag}: entries must be positive, got {v}")));
        }
        out.push(v as usize);
    }
    if out.is_empty() {
        return Err(CliError::Validation(format!("{flag}: list is empty")));
    }
    Ok(out)
}

pub(crate) fn parse_f64_list(flag: &str, raw: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for tok in raw.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let v: f64 = tok
            .parse()
            .map_err(|_| CliError::Validation(format!("{flag}: `{tok}` is not a number")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Validation(format!("{flag}: list is empty")));
    }
    Ok(out)
}

pub(crate) fn parse_lambda(flag: &str, raw: &str) -> Result<LambdaGenerator, CliError> {
    match raw {
        "harmonic" => Ok(LambdaGenerator::Harmonic),
        "constant" => Ok(LambdaGenerator::Constant),
        other => match other.strip_prefix("powerlog:") {
            Some(delta) => {
                let d: f64 = delta.parse().map_err(|_| {
                    CliError::Validation(format!("{flag}: powerlog delta `{delta}` is not a number"))
                })?;
                if d <= 0.0 {
                    return Err(CliError::Validation(format!(
                        "{flag}: powerlog delta must be positive, got {d}"
                    )));
                }
                Ok(LambdaGenerator::PowerLog { delta: d })
            }
            None => Err(CliError::Validation(format!(
                "{flag}: expected harmonic, constant, or powerlog:<delta>, got `{raw}`"
            ))),
        },
    }
}

pub(crate) fn parse_method(flag: &str, raw: &str) -> Result<Method, CliError> {
    match raw {
        "exhaustive" => Ok(Method::Exhaustive),
        "greedy_peel" | "greedy-peel" => Ok(Method::GreedyPeel),
        other => Err(CliError::Validation(format!(
            "{flag}: expected exhaustive or greedy_peel, got `{other}`"
        ))),
    }
}

pub(crate) fn parse_policy(flag: &str, raw: &str) -> Result<QuadPolicy, CliError> {
    match raw {
        "smooth" => Ok(QuadPolicy::Smooth),
        "kinked" => Ok(QuadPolicy::Kinked),
        other => match other.strip_prefix("fixed:") {
            Some(q) => {
                let order: usize = q.parse().map_err(|_| {
                    CliError::Validation(format!("{flag}: fixed order `{q}` is not an integer"))
                })?;
                if order == 0 {
                    return Err(CliError::Validation(format!("{flag}: fixed order must be positive")));
                }
                Ok(QuadPolicy::Fixed(order))
            }
            None => Err(CliError::Validation(format!(
                "{flag}: expected smooth, kinked, or fixed:<order>, got `{other}`"
            ))),
        },
    }
}

fn lookup_function(name: &str, params: &[(String, f64)]) -> Result<TestFunction, CliError> {
    flsuite_core::harness::corpus(name, params).map_err(|e| CliError::Validation(format!("--fn: {e}")))
}

fn build_coefficients(
    f: &TestFunction,
    n_modes: usize,
    m_modes: usize,
    quad: Option<usize>,
) -> Result<CoefficientMatrix, CliError> {
    if n_modes == 0 || m_modes == 0 {
        return Err(CliError::Validation("--n-modes/--m-modes must be positive".into()));
    }
    let order = quad.unwrap_or_else(|| f.quad_policy.order(n_modes.max(m_modes)));
    if order < n_modes.max(m_modes) {
        return Err(CliError::Validation(format!(
            "--quad: order {order} is below the mode count {}",
            n_modes.max(m_modes)
        )));
    }
    let rule = gauss_rule(order).map_err(CliError::from_core)?;
    let eval = f.evaluator();
    coefficients(|x, y| eval(x, y), n_modes, m_modes, &rule).map_err(CliError::from_core)
}

pub fn coeffs(
    name: &str,
    raw_params: &[String],
    n_modes: usize,
    m_modes: usize,
    quad: Option<usize>,
    out: &Path,
) -> CliResult {
    let params = parse_params("--param", raw_params)?;
    let f = lookup_function(name, &params)?;
    let matrix = build_coefficients(&f, n_modes, m_modes, quad)?;
    let mut text = String::from("n,m,value\n");
    for (n, m, v) in matrix.entries() {
        text.push_str(&format!("{n},{m},{v}\n"));
    }
    write_output(out, &text)
}

#[derive(Serialize)]
struct PartialSumOutput {
    function: String,
    params: String,
    n_modes: usize,
    m_modes: usize,
    quad_order: usize,
    x: f64,
    y: f64,
    value: f64,
    kernel_path_value: f64,
    path_disagreement: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn partial_sum(
    name: &str,
    raw_params: &[String],
    n_modes: usize,
    m_modes: usize,
    x: f64,
    y: f64,
    quad: Option<usize>,
    out: Option<&Path>,
) -> CliResult {
    if !(-1.0..=1.0).contains(&x) || !(-1.0..=1.0).contains(&y) {
        return Err(CliError::Validation(format!("-x/-y must lie in [-1, 1], got ({x}, {y})")));
    }
    let params = parse_params("--param", raw_params)?;
    let f = lookup_function(name, &params)?;
    let matrix = build_coefficients(&f, n_modes, m_modes, quad)?;
    let direct =
        eval_partial_sum(&matrix, n_modes, m_modes, x, y).map_err(CliError::from_core)?;
    let rule = gauss_rule(matrix.quad_order()).map_err(CliError::from_core)?;
    let eval = f.evaluator();
    let viakernel = partial_sum_kernel(|s, t| eval(s, t), n_modes, m_modes, x, y, &rule)
        .map_err(CliError::from_core)?;
    let output = PartialSumOutput {
        function: f.name.clone(),
        params: f.params_label(),
        n_modes,
        m_modes,
        quad_order: matrix.quad_order(),
        x,
        y,
        value: direct.value,
        kernel_path_value: viakernel.value,
        path_disagreement: (direct.value - viakernel.value).abs(),
    };
    let mut text = serde_json::to_string_pretty(&output).expect("output serializes");
    text.push('\n');
    match out {
        Some(path) => write_output(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// `partial_sum` the module-level name is taken by the library import.
pub use partial_sum_cmd as partial_sum;

#[allow(clippy::too_many_arguments)]
pub fn variation(
    name: &str,
    raw_params: &[String],
    grid: usize,
    lambda: &str,
    offset: usize,
    method: &str,
    n_max: Option<usize>,
    deltas: &str,
    series_terms: usize,
    out: &Path,
) -> CliResult {
    if grid < 2 {
        return Err(CliError::Validation(format!("--grid must be at least 2, got {grid}")));
    }
    let params = parse_params("--param", raw_params)?;
    let generator = parse_lambda("--lambda", lambda)?;
    let method = parse_method("--method", method)?;
    let deltas = parse_f64_list("--deltas", deltas)?;
    if deltas.iter().any(|d| *d <= 0.0) {
        return Err(CliError::Validation("--deltas: scales must be positive".into()));
    }
    let n_max = n_max.unwrap_or(grid - 1);
    if n_max == 0 {
        return Err(CliError::Validation("--n-max must be at least 1".into()));
    }
    if series_terms > 0 && series_terms < 10 {
        return Err(CliError::Validation("--series-terms must be 0 or at least 10".into()));
    }
    let f = lookup_function(name, &params)?;
    let gridfn = GridFunction2D::sample_uniform(grid, grid, |x, y| f.eval(x, y))
        .map_err(CliError::from_core)?;
    let lam = LambdaWeights::with_offset(generator, offset);
    let label =
        if f.params.is_empty() { f.name.clone() } else { format!("{}({})", f.name, f.params_label()) };
    let report = build_variation_report(
        &gridfn,
        &label,
        &lam,
        method,
        n_max,
        &deltas,
        &flsuite_core::harness::DEFAULT_TAIL_OFFSETS,
        series_terms,
    )
    .map_err(CliError::from_core)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_output(out, &text)
}

#[allow(clippy::too_many_arguments)]
pub fn converge(
    name: &str,
    raw_params: &[String],
    sizes: &str,
    eps: f64,
    grid: usize,
    quad_policy: Option<&str>,
    timings: bool,
    out: &Path,
) -> CliResult {
    let sizes = parse_usize_list("--sizes", sizes)?;
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Validation("--sizes: entries must be strictly increasing".into()));
    }
    if !(0.0 < eps && eps < 1.0) {
        return Err(CliError::Validation(format!("--eps must lie in (0, 1), got {eps}")));
    }
    if grid < 2 {
        return Err(CliError::Validation(format!("--grid must be at least 2, got {grid}")));
    }
    let params = parse_params("--param", raw_params)?;
    let f = lookup_function(name, &params)?;
    let policy = match quad_policy {
        Some(raw) => parse_policy("--quad-policy", raw)?,
        None => f.quad_policy,
    };
    let table =
        run_convergence(&f, eps, &sizes, grid, policy, timings).map_err(CliError::from_core)?;
    write_output(out, &table.to_csv())
}

pub fn verify_kernels(n_list: &str, samples: usize, eps: f64, seed: u64, out: &Path) -> CliResult {
    let n_list = parse_usize_list("--n-list", n_list)?;
    if samples < 10 {
        return Err(CliError::Validation(format!("--samples must be at least 10, got {samples}")));
    }
    if !(0.0 < eps && eps < 1.0) {
        return Err(CliError::Validation(format!("--eps must lie in (0, 1), got {eps}")));
    }
    let reports = verify_kernel_estimates(&n_list, samples, eps, seed).map_err(CliError::from_core)?;
    let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
    text.push('\n');
    write_output(out, &text)
}

pub fn run_batch(
    config_path: &Path,
    out_dir: Option<&Path>,
    seed: Option<u64>,
    timings: bool,
) -> CliResult {
    let text = std::fs::read_to_string(config_path).map_err(|e| runtime_io(config_path, e))?;
    let mut batch: BatchConfig = crate::config::parse_config(&text)?;
    if let Some(dir) = out_dir {
        batch.out_dir = dir.to_path_buf();
    }
    if let Some(s) = seed {
        batch.seed = s;
    }
    if timings {
        batch.timings = true;
    }
    run_experiment(&batch).map_err(CliError::from_core)?;
    Ok(())
}
