//! `flsuite` — command-line front end for the Fourier-Legendre toolkit.
//!
//! Subcommands: `coeffs`, `partial-sum`, `variation`, `converge`,
//! `verify-kernels`, `run`. Exit codes: 0 on success, 1 when an argument or
//! configuration fails validation, 2 when execution fails at runtime.
//! `FLSUITE_THREADS` caps worker threads (0 or unset = automatic). Outputs
//! are byte-reproducible for identical arguments and seed; `--timings` opts
//! into wall-clock fields at the cost of reproducibility.

mod commands;
mod config;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

/// Validation failure (exit 1) or runtime failure (exit 2).
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    fn from_core(err: flsuite_core::Error) -> Self {
        if err.is_validation() {
            CliError::Validation(err.to_string())
        } else {
            CliError::Runtime(err.to_string())
        }
    }
}

pub type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "flsuite",
    version,
    about = "Double Fourier-Legendre analysis: coefficients, partial sums, variation functionals, and verification experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every corpus-function subcommand.
#[derive(Args, Debug)]
struct FunctionArgs {
    /// Corpus function name (constant, polynomial, abs_sum, oscillatory, pbv_p, radial_kink)
    #[arg(long = "fn", value_name = "NAME")]
    function: String,
    /// Function parameter as key=value; repeatable
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a coefficient matrix and write it as CSV (n,m,value)
    Coeffs {
        #[command(flatten)]
        function: FunctionArgs,
        /// Number of x-modes
        #[arg(long, default_value_t = 8)]
        n_modes: usize,
        /// Number of y-modes
        #[arg(long, default_value_t = 8)]
        m_modes: usize,
        /// Quadrature order (default: the function's policy at max(n,m))
        #[arg(long)]
        quad: Option<usize>,
        /// Output CSV path
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Evaluate one rectangular partial sum through both paths, as JSON
    PartialSum {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value_t = 8)]
        n_modes: usize,
        #[arg(long, default_value_t = 8)]
        m_modes: usize,
        /// Evaluation point, x coordinate
        #[arg(short = 'x', long, allow_hyphen_values = true)]
        x: f64,
        /// Evaluation point, y coordinate
        #[arg(short = 'y', long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long)]
        quad: Option<usize>,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Variation report for a function sampled on a uniform grid, as JSON
    Variation {
        #[command(flatten)]
        function: FunctionArgs,
        /// Grid points per axis
        #[arg(long, default_value_t = 9)]
        grid: usize,
        /// Weight sequence: harmonic, constant, or powerlog:<delta>
        #[arg(long, default_value = "harmonic")]
        lambda: String,
        /// Tail offset applied to the weights
        #[arg(long, default_value_t = 0)]
        offset: usize,
        /// exhaustive or greedy_peel
        #[arg(long, default_value = "exhaustive")]
        method: String,
        /// Length of the modulus-of-variation arrays (default: grid - 1)
        #[arg(long)]
        n_max: Option<usize>,
        /// Scales for the moduli of continuity, comma separated
        #[arg(long, default_value = "0.25,0.5", allow_hyphen_values = true)]
        deltas: String,
        /// Series-condition horizon (0 disables the section)
        #[arg(long, default_value_t = 0)]
        series_terms: usize,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Sup-error convergence sweep over square truncations, as CSV
    Converge {
        #[command(flatten)]
        function: FunctionArgs,
        /// Truncation sizes, comma separated, strictly increasing
        #[arg(long, allow_hyphen_values = true)]
        sizes: String,
        /// Interior margin of the measurement window
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Lattice points per axis
        #[arg(long, default_value_t = 41)]
        grid: usize,
        /// smooth, kinked, or fixed:<order> (default: the function's policy)
        #[arg(long)]
        quad_policy: Option<String>,
        /// Record wall-clock times (breaks byte reproducibility)
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Measure empirical constants for the kernel bounds, as JSON
    VerifyKernels {
        /// Kernel orders, comma separated
        #[arg(long, default_value = "8,16,32,64,128", allow_hyphen_values = true)]
        n_list: String,
        /// Samples per estimate and order
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Interior margin for sample points
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Sample-stream seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Execute a batch of experiments described by a config file
    Run {
        /// Flat key=value config file
        #[arg(long)]
        config: std::path::PathBuf,
        /// Override the configured output directory
        #[arg(long)]
        out_dir: Option<std::path::PathBuf>,
        /// Override the configured seed
        #[arg(long)]
        seed: Option<u64>,
        /// Record wall-clock times (breaks byte reproducibility)
        #[arg(long)]
        timings: bool,
    },
}

fn setup_threads() -> CliResult {
    match std::env::var("FLSUITE_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw.trim().parse().map_err(|_| {
                CliError::Validation(format!(
                    "FLSUITE_THREADS must be a nonnegative integer, got `{raw}`"
                ))
            })?;
            if n > 0 {
                // a pool may already exist in-process; that is fine
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Coeffs { function, n_modes, m_modes, quad, out } => {
            commands::coeffs(&function.function, &function.params, n_modes, m_modes, quad, &out)
        }
        Command::PartialSum { function, n_modes, m_modes, x, y, quad, out } => commands::partial_sum(
            &function.function,
            &function.params,
            n_modes,
            m_modes,
            x,
            y,
            quad,
            out.as_deref(),
        ),
        Command::Variation {
            function,
            grid,
            lambda,
            offset,
            method,
            n_max,
            deltas,
            series_terms,
            out,
        } => commands::variation(
            &function.function,
            &function.params,
            grid,
            &lambda,
            offset,
            &method,
            n_max,
            &deltas,
            series_terms,
            &out,
        ),
        Command::Converge { function, sizes, eps, grid, quad_policy, timings, out } => {
            commands::converge(
                &function.function,
                &function.params,
                &sizes,
                eps,
                grid,
                quad_policy.as_deref(),
                timings,
                &out,
            )
        }
        Command::VerifyKernels { n_list, samples, eps, seed, out } => {
            commands::verify_kernels(&n_list, samples, eps, seed, &out)
        }
        Command::Run { config, out_dir, seed, timings } => {
            commands::run_batch(&config, out_dir.as_deref(), seed, timings)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };

    if let Err(e) = setup_threads() {
        if let CliError::Validation(msg) = e {
            eprintln!("error: {msg}");
        }
        return ExitCode::from(1);
    }

    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
