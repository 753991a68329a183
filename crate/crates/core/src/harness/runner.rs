//! Batch execution: run a named list of experiments and persist the results
//! under one run directory with a manifest.
//!
//! Layout: `<out_dir>/manifest.json` plus one `<name>.csv` per convergence
//! sweep and one `<name>.json` per variation or kernel-estimate report.
//! Outputs are byte-reproducible for a fixed config and seed; wall-clock
//! times are only recorded when timing capture is switched on, because they
//! would otherwise break reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::convergence::{run_convergence, QuadPolicy};
use crate::harness::corpus::corpus;
use crate::harness::estimates::verify_kernel_estimates;
use crate::variation::{
    build_variation_report, GridFunction2D, LambdaGenerator, LambdaWeights, Method,
};

/// One named experiment of a batch.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentSpec {
    Converge {
        name: String,
        function: String,
        params: Vec<(String, f64)>,
        eps: f64,
        sizes: Vec<usize>,
        grid_points: usize,
        policy: Option<QuadPolicy>,
    },
    Variation {
        name: String,
        function: String,
        params: Vec<(String, f64)>,
        grid: usize,
        lambda: LambdaGenerator,
        offset: usize,
        method: Method,
        n_max: Option<usize>,
        deltas: Vec<f64>,
        series_terms: usize,
    },
    VerifyKernels {
        name: String,
        n_list: Vec<usize>,
        samples: usize,
        eps: f64,
    },
}

impl ExperimentSpec {
    pub fn name(&self) -> &str {
        match self {
            ExperimentSpec::Converge { name, .. } => name,
            ExperimentSpec::Variation { name, .. } => name,
            ExperimentSpec::VerifyKernels { name, .. } => name,
        }
    }
}

/// A parsed batch: where to write, the seed, and the experiments to run.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub timings: bool,
    /// Key-value echo of the source configuration, in file order.
    pub config_echo: Vec<(String, String)>,
    pub experiments: Vec<ExperimentSpec>,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    pub manifest_path: PathBuf,
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    tool: String,
    version: String,
    seed: u64,
    timings: bool,
    config: Vec<(String, String)>,
    artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<Vec<(String, f64)>>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(io_err(path))
}

/// The default tail offsets reported as the decay diagnostic.
pub const DEFAULT_TAIL_OFFSETS: [usize; 4] = [0, 1, 4, 16];

/// Execute the batch. Artifact files are written before the manifest, so a
/// manifest always describes completed outputs.
pub fn run_experiment(cfg: &BatchConfig) -> Result<RunArtifacts> {
    fs::create_dir_all(&cfg.out_dir).map_err(io_err(&cfg.out_dir))?;
    let mut files = Vec::new();
    let mut walls = Vec::new();

    for exp in &cfg.experiments {
        let start = Instant::now();
        let (file_name, text) = match exp {
            ExperimentSpec::Converge { name, function, params, eps, sizes, grid_points, policy } => {
                let f = corpus(function, params)?;
                let policy = policy.unwrap_or(f.quad_policy);
                let table = run_convergence(&f, *eps, sizes, *grid_points, policy, cfg.timings)?;
                (format!("{name}.csv"), table.to_csv())
            }
            ExperimentSpec::Variation {
                name,
                function,
                params,
                grid,
                lambda,
                offset,
                method,
                n_max,
                deltas,
                series_terms,
            } => {
                let f = corpus(function, params)?;
                let gridfn = GridFunction2D::sample_uniform(*grid, *grid, |x, y| f.eval(x, y))?;
                let lam = LambdaWeights::with_offset(lambda.clone(), *offset);
                let label = if f.params.is_empty() {
                    f.name.clone()
                } else {
                    format!("{}({})", f.name, f.params_label())
                };
                let report = build_variation_report(
                    &gridfn,
                    &label,
                    &lam,
                    *method,
                    n_max.unwrap_or(grid - 1),
                    deltas,
                    &DEFAULT_TAIL_OFFSETS,
                    *series_terms,
                )?;
                let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
                text.push('\n');
                (format!("{name}.json"), text)
            }
            ExperimentSpec::VerifyKernels { name, n_list, samples, eps } => {
                let reports = verify_kernel_estimates(n_list, *samples, *eps, cfg.seed)?;
                let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
                text.push('\n');
                (format!("{name}.json"), text)
            }
        };
        let path = cfg.out_dir.join(&file_name);
        write_text(&path, &text)?;
        walls.push((exp.name().to_string(), start.elapsed().as_secs_f64() * 1e3));
        files.push(path);
    }

    let manifest = Manifest {
        tool: "flsuite".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: cfg.seed,
        timings: cfg.timings,
        config: cfg.config_echo.clone(),
        artifacts: files
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect(),
        wall_ms: if cfg.timings { Some(walls) } else { None },
    };
    let manifest_path = cfg.out_dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write_text(&manifest_path, &text)?;

    Ok(RunArtifacts { manifest_path, files })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "flsuite-runner-{tag}-{}-{}",
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .unwrap()
                .as_nanos()
        ));
        dir
    }

    #[test]
    fn empty_batch_writes_only_a_manifest() {
        let dir = tmp_dir("empty");
        let cfg = BatchConfig {
            out_dir: dir.clone(),
            seed: 3,
            timings: false,
            config_echo: vec![("experiments".into(), "".into())],
            experiments: vec![],
        };
        let artifacts = run_experiment(&cfg).unwrap();
        assert!(artifacts.files.is_empty());
        let manifest = std::fs::read_to_string(artifacts.manifest_path).unwrap();
        assert!(manifest.contains("\"artifacts\": []"));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn convergence_experiment_writes_csv() {
        let dir = tmp_dir("conv");
        let cfg = BatchConfig {
            out_dir: dir.clone(),
            seed: 0,
            timings: false,
            config_echo: vec![],
            experiments: vec![ExperimentSpec::Converge {
                name: "const".into(),
                function: "constant".into(),
                params: vec![],
                eps: 0.25,
                sizes: vec![2],
                grid_points: 11,
                policy: None,
            }],
        };
        let artifacts = run_experiment(&cfg).unwrap();
        let csv = std::fs::read_to_string(&artifacts.files[0]).unwrap();
        let row = csv.lines().nth(1).unwrap();
        let err: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!(err <= 1e-12);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn kernel_experiment_entries_are_positive() {
        let dir = tmp_dir("kern");
        let cfg = BatchConfig {
            out_dir: dir.clone(),
            seed: 5,
            timings: false,
            config_echo: vec![],
            experiments: vec![ExperimentSpec::VerifyKernels {
                name: "kern".into(),
                n_list: vec![8, 16],
                samples: 25,
                eps: 0.1,
            }],
        };
        let artifacts = run_experiment(&cfg).unwrap();
        let text = std::fs::read_to_string(&artifacts.files[0]).unwrap();
        let parsed: Vec<crate::harness::estimates::KernelEstimateReport> =
            serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.len(), 6);
        for r in parsed {
            for e in r.c_emp {
                assert!(e.c_emp > 0.0 && e.c_emp.is_finite());
            }
        }
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn unwritable_target_reports_the_path() {
        let cfg = BatchConfig {
            out_dir: PathBuf::from("/proc/does-not-exist/run"),
            seed: 0,
            timings: false,
            config_echo: vec![],
            experiments: vec![],
        };
        match run_experiment(&cfg) {
            Err(Error::Io { path, .. }) => assert!(path.to_string_lossy().contains("does-not-exist")),
            other => panic!("expected io error, got {other:?}"),
        }
    }
}
