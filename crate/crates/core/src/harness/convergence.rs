//! Convergence sweeps: sup-norm error of square partial sums against the
//! truncation order, on an interior window of the square.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::corpus::TestFunction;
use crate::legendre::gauss_rule;
use crate::spectral::{coefficients, sup_error};

/// How the quadrature order is chosen from the largest mode count.
///
/// Coefficients of non-smooth integrands converge slowly in the rule order,
/// so kinked functions get a multiplicative margin instead of an additive
/// one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadPolicy {
    /// order = max modes + 32.
    Smooth,
    /// order = 4 × max modes.
    Kinked,
    /// A caller-chosen fixed order.
    Fixed(usize),
}

impl QuadPolicy {
    pub fn order(&self, max_modes: usize) -> usize {
        match self {
            QuadPolicy::Smooth => max_modes + 32,
            QuadPolicy::Kinked => 4 * max_modes,
            QuadPolicy::Fixed(q) => *q,
        }
    }
}

/// One row of a convergence table: truncation (n, n) and its interior
/// sup-norm error. `wall_ms` is zero unless timing capture was requested,
/// which keeps default outputs byte-reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub m: usize,
    pub grid_points: usize,
    pub sup_error: f64,
    pub wall_ms: f64,
}

/// Sup-norm errors over [-1+eps, 1-eps]² for a list of truncation orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub function: String,
    pub eps: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// The fixed CSV schema: floats in shortest round-trip form, newline
    /// separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,M,eps,grid_points,sup_error,wall_ms\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n, r.m, self.eps, r.grid_points, r.sup_error, r.wall_ms
            ));
        }
        out
    }
}

/// Run the sweep: coefficients are computed once at the largest size with
/// the policy-chosen quadrature order, then each size is measured on a
/// `grid_points` × `grid_points` interior lattice.
pub fn run_convergence(
    f: &TestFunction,
    eps: f64,
    sizes: &[usize],
    grid_points: usize,
    policy: QuadPolicy,
    record_wall: bool,
) -> Result<ConvergenceTable> {
    if sizes.is_empty() {
        return Err(Error::Domain("sizes must be nonempty".into()));
    }
    if sizes[0] == 0 || !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain("sizes must be positive and strictly increasing".into()));
    }
    if !(0.0 < eps && eps < 1.0) {
        return Err(Error::Domain(format!("eps = {eps} must lie in (0, 1)")));
    }
    let max_size = *sizes.last().unwrap();
    let order = policy.order(max_size);
    let rule = gauss_rule(order)?;
    let eval = f.evaluator();
    let coeffs = coefficients(|x, y| eval(x, y), max_size, max_size, &rule)?;

    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let start = Instant::now();
        let err = sup_error(|x, y| eval(x, y), &coeffs, n, n, eps, grid_points)?;
        let wall_ms = if record_wall {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        rows.push(ConvergenceRow { n, m: n, grid_points, sup_error: err, wall_ms });
    }
    Ok(ConvergenceTable { function: f.name.clone(), eps, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::corpus::corpus_default;

    #[test]
    fn constant_is_reproduced_at_machine_precision() {
        let f = corpus_default("constant").unwrap();
        let t = run_convergence(&f, 0.25, &[2], 11, QuadPolicy::Smooth, false).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].sup_error <= 1e-12);
        assert_eq!(t.rows[0].wall_ms, 0.0);
    }

    #[test]
    fn low_degree_polynomial_rows_vanish() {
        let xy = crate::harness::corpus::corpus(
            "polynomial",
            &[("degx".into(), 1.0), ("degy".into(), 1.0)],
        )
        .unwrap();
        let t = run_convergence(&xy, 0.1, &[2, 4], 9, QuadPolicy::Smooth, false).unwrap();
        for r in &t.rows {
            assert!(r.sup_error <= 1e-10, "n={} err={}", r.n, r.sup_error);
        }
    }

    #[test]
    fn size_validation() {
        let f = corpus_default("constant").unwrap();
        assert!(run_convergence(&f, 0.25, &[], 11, QuadPolicy::Smooth, false).is_err());
        assert!(run_convergence(&f, 0.25, &[4, 4], 11, QuadPolicy::Smooth, false).is_err());
        assert!(run_convergence(&f, 0.25, &[4, 2], 11, QuadPolicy::Smooth, false).is_err());
        assert!(run_convergence(&f, 1.5, &[2], 11, QuadPolicy::Smooth, false).is_err());
    }

    #[test]
    fn csv_schema_is_stable() {
        let f = corpus_default("constant").unwrap();
        let t = run_convergence(&f, 0.25, &[2, 4], 5, QuadPolicy::Smooth, false).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "N,M,eps,grid_points,sup_error,wall_ms");
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.ends_with('\n'));
    }
}
