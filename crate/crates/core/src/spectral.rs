//! Double Fourier-Legendre coefficients and rectangular partial sums.
//!
//! Index convention, fixed once for the whole crate: the first truncation
//! index always counts x-modes and the second counts y-modes, i.e. a partial
//! sum truncated at (N, M) is
//!
//!   S f(x, y) = Σ_{n<N} Σ_{m<M} f̂(n, m) p_n(x) p_m(y),
//!
//! with coefficients f̂(n, m) = ∫∫ f(s, t) p_n(s) p_m(t) ds dt realized by a
//! tensor Gauss-Legendre rule. The same sum can be evaluated through the
//! kernel representation
//!
//!   S f(x, y) = ∫∫ f(s, t) K_N(x, s) K_M(y, t) ds dt,
//!
//! which [`partial_sum_kernel`] provides as an independent second path.
//!
//! All reductions run in a fixed ascending order so repeated runs are
//! bitwise reproducible.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::legendre::{default_diag_tol, eval_basis, kernel, QuadratureRule};

/// Fourier-Legendre coefficients f̂(n, m) for n < N, m < M.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    n_modes: usize,
    m_modes: usize,
    quad_order: usize,
    values: Vec<f64>, // row-major, n-major
}

impl CoefficientMatrix {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn m_modes(&self) -> usize {
        self.m_modes
    }

    /// Quadrature order used to build the matrix.
    pub fn quad_order(&self) -> usize {
        self.quad_order
    }

    pub fn get(&self, n: usize, m: usize) -> f64 {
        assert!(n < self.n_modes && m < self.m_modes, "coefficient index out of range");
        self.values[n * self.m_modes + m]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let m_modes = self.m_modes;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i / m_modes, i % m_modes, v))
    }
}

/// Basis values at every node of a rule, B[i][n] = p_n(x_i).
fn basis_table(rule: &QuadratureRule, n_max: usize) -> Vec<Vec<f64>> {
    rule.nodes()
        .iter()
        .map(|&x| eval_basis(n_max, x).expect("quadrature nodes lie inside [-1, 1]").values().to_vec())
        .collect()
}

/// Compute f̂(n, m) for n < n_modes, m < m_modes with the given rule.
///
/// The contraction is tensorized: first over the t-axis, then over the
/// s-axis, costing O(q²·M + q·N·M) instead of O(q²·N·M). Evaluations of `f`
/// must be finite; the rule order should be at least max(N, M) plus a margin
/// depending on the smoothness of `f` (a warning is logged below that floor).
pub fn coefficients(
    f: impl Fn(f64, f64) -> f64,
    n_modes: usize,
    m_modes: usize,
    rule: &QuadratureRule,
) -> Result<CoefficientMatrix> {
    if n_modes == 0 || m_modes == 0 {
        return Err(Error::Domain("mode counts must be at least 1".into()));
    }
    if rule.order() < n_modes.max(m_modes) {
        log::warn!(
            "quadrature order {} is below max mode count {}; coefficients will be under-resolved",
            rule.order(),
            n_modes.max(m_modes)
        );
    }
    let q = rule.order();
    let nodes = rule.nodes();
    let weights = rule.weights();
    let table = basis_table(rule, n_modes.max(m_modes) - 1);

    let mut samples = vec![0.0; q * q];
    for i in 0..q {
        for j in 0..q {
            let v = f(nodes[i], nodes[j]);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!(
                    "f({}, {}) = {v}",
                    nodes[i], nodes[j]
                )));
            }
            samples[i * q + j] = v;
        }
    }

    // First pass: G[i][m] = Σ_j w_j f(s_i, t_j) p_m(t_j).
    let mut partial = vec![0.0; q * m_modes];
    for i in 0..q {
        for m in 0..m_modes {
            let mut acc = 0.0;
            for j in 0..q {
                acc += weights[j] * samples[i * q + j] * table[j][m];
            }
            partial[i * m_modes + m] = acc;
        }
    }

    // Second pass: f̂(n, m) = Σ_i w_i p_n(s_i) G[i][m].
    let mut values = vec![0.0; n_modes * m_modes];
    for n in 0..n_modes {
        for m in 0..m_modes {
            let mut acc = 0.0;
            for i in 0..q {
                acc += weights[i] * table[i][n] * partial[i * m_modes + m];
            }
            values[n * m_modes + m] = acc;
        }
    }

    Ok(CoefficientMatrix { n_modes, m_modes, quad_order: q, values })
}

/// A partial-sum evaluation at one point.
#[derive(Debug, Clone, Copy)]
pub struct PartialSumResult {
    pub n_modes: usize,
    pub m_modes: usize,
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Evaluate the partial sum truncated at (n_modes, m_modes) directly from a
/// coefficient matrix. Summation runs n-major, ascending.
pub fn partial_sum(
    coeffs: &CoefficientMatrix,
    n_modes: usize,
    m_modes: usize,
    x: f64,
    y: f64,
) -> Result<PartialSumResult> {
    if n_modes > coeffs.n_modes || m_modes > coeffs.m_modes {
        return Err(Error::Index(format!(
            "truncation ({n_modes}, {m_modes}) exceeds stored modes ({}, {})",
            coeffs.n_modes, coeffs.m_modes
        )));
    }
    if n_modes == 0 || m_modes == 0 {
        return Err(Error::Domain("truncation orders must be at least 1".into()));
    }
    let bx = eval_basis(n_modes - 1, x)?;
    let by = eval_basis(m_modes - 1, y)?;
    let mut value = 0.0;
    for n in 0..n_modes {
        for m in 0..m_modes {
            value += coeffs.get(n, m) * bx.value(n) * by.value(m);
        }
    }
    Ok(PartialSumResult { n_modes, m_modes, x, y, value })
}

/// Evaluate the same truncation through the kernel representation, by tensor
/// quadrature of f(s, t) K_N(x, s) K_M(y, t).
pub fn partial_sum_kernel(
    f: impl Fn(f64, f64) -> f64,
    n_modes: usize,
    m_modes: usize,
    x: f64,
    y: f64,
    rule: &QuadratureRule,
) -> Result<PartialSumResult> {
    if n_modes == 0 || m_modes == 0 {
        return Err(Error::Domain("truncation orders must be at least 1".into()));
    }
    if rule.order() < n_modes.max(m_modes) {
        log::warn!(
            "quadrature order {} is below max mode count {}; kernel-path sum will be under-resolved",
            rule.order(),
            n_modes.max(m_modes)
        );
    }
    let q = rule.order();
    let nodes = rule.nodes();
    let weights = rule.weights();
    let kx: Vec<f64> = nodes
        .iter()
        .map(|&s| kernel(n_modes, x, s, default_diag_tol(n_modes)).map(|k| k.value))
        .collect::<Result<_>>()?;
    let ky: Vec<f64> = nodes
        .iter()
        .map(|&t| kernel(m_modes, y, t, default_diag_tol(m_modes)).map(|k| k.value))
        .collect::<Result<_>>()?;
    let mut value = 0.0;
    for i in 0..q {
        let mut inner = 0.0;
        for j in 0..q {
            let v = f(nodes[i], nodes[j]);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("f({}, {}) = {v}", nodes[i], nodes[j])));
            }
            inner += weights[j] * v * ky[j];
        }
        value += weights[i] * kx[i] * inner;
    }
    Ok(PartialSumResult { n_modes, m_modes, x, y, value })
}

/// Maximum of |S f - f| over a uniform lattice on [-1+eps, 1-eps]².
///
/// The lattice is `grid_points` points per axis including both endpoints.
/// Rows are evaluated in parallel; each lattice point is deterministic, and
/// the reduction is a plain maximum, so the result does not depend on the
/// thread count.
pub fn sup_error(
    f: impl Fn(f64, f64) -> f64 + Sync,
    coeffs: &CoefficientMatrix,
    n_modes: usize,
    m_modes: usize,
    eps: f64,
    grid_points: usize,
) -> Result<f64> {
    if !(0.0 < eps && eps < 1.0) {
        return Err(Error::Domain(format!("eps = {eps} must lie in (0, 1)")));
    }
    if grid_points < 2 {
        return Err(Error::Domain("grid_points must be at least 2".into()));
    }
    if n_modes > coeffs.n_modes || m_modes > coeffs.m_modes {
        return Err(Error::Index(format!(
            "truncation ({n_modes}, {m_modes}) exceeds stored modes ({}, {})",
            coeffs.n_modes, coeffs.m_modes
        )));
    }
    let lo = -1.0 + eps;
    let step = (2.0 - 2.0 * eps) / (grid_points - 1) as f64;
    let lattice: Vec<f64> = (0..grid_points).map(|k| lo + step * k as f64).collect();

    let row_max = |&x: &f64| -> Result<f64> {
        let bx = eval_basis(n_modes - 1, x)?;
        let mut worst = 0.0f64;
        for &y in &lattice {
            let by = eval_basis(m_modes - 1, y)?;
            let mut s = 0.0;
            for n in 0..n_modes {
                for m in 0..m_modes {
                    s += coeffs.get(n, m) * bx.value(n) * by.value(m);
                }
            }
            worst = worst.max((s - f(x, y)).abs());
        }
        Ok(worst)
    };

    let rows: Vec<f64> = lattice.par_iter().map(row_max).collect::<Result<_>>()?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}
