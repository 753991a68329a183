//! Numerical toolkit for double Fourier-Legendre analysis on [-1, 1]² and
//! generalized bounded-variation functionals, with a harness that verifies
//! the kernel bounds and measures uniform-convergence behavior empirically.
//!
//! The crate splits into four layers:
//!
//! * [`legendre`] — the orthonormal basis, Gauss-Legendre rules, and the
//!   Christoffel-Darboux kernel with stable near-diagonal handling;
//! * [`spectral`] — coefficients and rectangular partial sums, with two
//!   independent evaluation paths and interior sup-error measurement;
//! * [`variation`] — Λ-variation (marginal and mixed), modulus of variation,
//!   Φ-variation, moduli of continuity, shifted-tail diagnostics, and series
//!   condition checks, all on grid-sampled functions;
//! * [`harness`] — the test-function corpus, empirical constants for the
//!   kernel bounds, convergence sweeps, and reproducible batch runs.

pub mod error;
pub mod harness;
pub mod legendre;
pub mod spectral;
pub mod variation;

pub use error::{Error, Result};
