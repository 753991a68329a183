//! Test-function corpus, kernel-bound verification, convergence sweeps, and
//! batch execution.

pub mod convergence;
pub mod corpus;
pub mod estimates;
pub mod runner;
pub mod sampling;

pub use convergence::{run_convergence, ConvergenceRow, ConvergenceTable, QuadPolicy};
pub use corpus::{corpus, corpus_default, corpus_names, ClassTag, TestFunction};
pub use estimates::{verify_kernel_estimates, CEmpEntry, EstimateId, KernelEstimateReport};
pub use runner::{run_experiment, BatchConfig, ExperimentSpec, RunArtifacts, DEFAULT_TAIL_OFFSETS};
pub use sampling::{Sampler2D, SplitMix64};
