//! Orthonormal Legendre polynomials, Gauss-Legendre quadrature, and the
//! Christoffel-Darboux kernel on [-1, 1].
//!
//! The basis is normalized so that ∫_{-1}^{1} p_n(x) p_m(x) dx = δ_{nm}, i.e.
//!
//!   p_n(x) = sqrt((2n + 1) / 2) · P_n(x).
//!
//! Everything is evaluated through the orthonormal three-term recurrence
//!
//!   b_{k+1} p_{k+1}(x) = x p_k(x) - b_k p_{k-1}(x),
//!   b_k = k / sqrt(4k² - 1),
//!
//! whose values stay O(sqrt(n)) on [-1, 1], so there is no intermediate
//! overflow for the orders this crate targets (n ≤ 10⁴).
//!
//! The kernel K_n(x, t) = Σ_{k<n} p_k(x) p_k(t) is evaluated either as the
//! direct sum or through the Christoffel-Darboux quotient
//!
//!   K_n(x, t) = r_n · (p_{n-1}(t) p_n(x) - p_{n-1}(x) p_n(t)) / (x - t),
//!
//! where r_n is the ratio of leading coefficients of p_{n-1} and p_n. The
//! quotient loses precision near the diagonal, so below `diag_tol` the
//! evaluation falls back to the O(n) direct sum.

use crate::error::{Error, Result};

/// Ratio of leading coefficients of consecutive orthonormal polynomials,
/// which doubles as the recurrence coefficient b_n.
fn recurrence_coeff(n: usize) -> f64 {
    let nf = n as f64;
    nf / (4.0 * nf * nf - 1.0).sqrt()
}

/// Default near-diagonal cutoff for the quotient form of the kernel.
pub fn default_diag_tol(n: usize) -> f64 {
    1e-6 * n as f64
}

fn check_point(x: f64, what: &str) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("{what} = {x} lies outside [-1, 1]")));
    }
    Ok(())
}

/// Values p_0(x), ..., p_{n_max}(x) of the orthonormal basis at one point.
#[derive(Debug, Clone)]
pub struct BasisSlice {
    n_max: usize,
    point: f64,
    values: Vec<f64>,
}

impl BasisSlice {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn point(&self) -> f64 {
        self.point
    }

    /// p_k(x) for 0 ≤ k ≤ n_max.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Evaluate p_0..p_{n_max} at `x` by the orthonormal three-term recurrence.
pub fn eval_basis(n_max: usize, x: f64) -> Result<BasisSlice> {
    check_point(x, "x")?;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(std::f64::consts::FRAC_1_SQRT_2);
    if n_max >= 1 {
        values.push(x * 1.5f64.sqrt());
    }
    for k in 1..n_max {
        let next = (x * values[k] - recurrence_coeff(k) * values[k - 1]) / recurrence_coeff(k + 1);
        values.push(next);
    }
    Ok(BasisSlice { n_max, point: x, values })
}

/// Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree ≤ 2q - 1.
///
/// Nodes are strictly increasing, exactly symmetric about 0, and the weights
/// are positive with sum 2.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ w_i f(x_i) over [-1, 1].
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(*x);
        }
        acc
    }

    /// The rule mapped affinely onto [a, b].
    pub fn integrate_on(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Plain Legendre P_q and P_q' at `x`, used by the node solver.
fn legendre_p_and_deriv(q: usize, x: f64) -> (f64, f64) {
    if q == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..q {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // P_q'(x) = q (x P_q - P_{q-1}) / (x² - 1); nodes never sit at ±1.
    let dp = q as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Build the q-point Gauss-Legendre rule by Newton iteration on P_q with
/// cosine initial guesses (tolerance 1e-15, at most 100 steps).
pub fn gauss_rule(q: usize) -> Result<QuadratureRule> {
    if q == 0 {
        return Err(Error::Domain("quadrature order must be at least 1".into()));
    }
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let half = q.div_ceil(2);
    for i in 0..half {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_p_and_deriv(q, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= 1e-15 {
                break;
            }
        }
        if q % 2 == 1 && i == half - 1 {
            z = 0.0;
        }
        let (_, dp) = legendre_p_and_deriv(q, z);
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        // z is the (i+1)-th root from the right; mirror for exact symmetry.
        nodes[i] = -z;
        nodes[q - 1 - i] = z;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    debug_assert!({
        let sum: f64 = weights.iter().sum();
        (sum - 2.0).abs() <= 1e-13
    });
    Ok(QuadratureRule { nodes, weights })
}

/// Ratio of the leading coefficients of p_{n-1} and p_n: n / sqrt(4n² - 1).
///
/// Always in (1/2, 1]; validated against a polynomial-expansion oracle in the
/// tests before being relied on.
pub fn gamma_ratio(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("gamma_ratio requires n >= 1".into()));
    }
    Ok(recurrence_coeff(n))
}

/// One kernel evaluation K_n(x, t).
#[derive(Debug, Clone, Copy)]
pub struct KernelEval {
    pub n: usize,
    pub x: f64,
    pub t: f64,
    pub value: f64,
}

fn kernel_value(n: usize, x: f64, t: f64, diag_tol: f64) -> f64 {
    if (x - t).abs() > diag_tol {
        let bx = eval_basis_unchecked(n, x);
        let bt = eval_basis_unchecked(n, t);
        recurrence_coeff(n) * (bt[n - 1] * bx[n] - bx[n - 1] * bt[n]) / (x - t)
    } else {
        let bx = eval_basis_unchecked(n - 1, x);
        let bt = eval_basis_unchecked(n - 1, t);
        bx.iter().zip(&bt).map(|(a, b)| a * b).sum()
    }
}

fn eval_basis_unchecked(n_max: usize, x: f64) -> Vec<f64> {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(std::f64::consts::FRAC_1_SQRT_2);
    if n_max >= 1 {
        values.push(x * 1.5f64.sqrt());
    }
    for k in 1..n_max {
        let next = (x * values[k] - recurrence_coeff(k) * values[k - 1]) / recurrence_coeff(k + 1);
        values.push(next);
    }
    values
}

/// Evaluate K_n(x, t), using the quotient form away from the diagonal and the
/// direct sum within `diag_tol` of it.
pub fn kernel(n: usize, x: f64, t: f64, diag_tol: f64) -> Result<KernelEval> {
    if n == 0 {
        return Err(Error::Domain("kernel requires n >= 1".into()));
    }
    check_point(x, "x")?;
    check_point(t, "t")?;
    Ok(KernelEval { n, x, t, value: kernel_value(n, x, t, diag_tol) })
}

/// Which side of `x` a tail integral covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    /// ∫_{-1}^{s} K_n(x, t) dt with -1 ≤ s < x.
    Left,
    /// ∫_{s}^{1} K_n(x, t) dt with x < s ≤ 1.
    Right,
}

/// Integrate the kernel over [-1, s] or [s, 1] by mapping `rule` onto the
/// subinterval. The integrand is a degree n-1 polynomial in t, so any rule
/// with order ≥ n/2 integrates it exactly; callers conventionally pass
/// order ≥ n.
pub fn kernel_tail_integral(
    n: usize,
    x: f64,
    s: f64,
    side: TailSide,
    rule: &QuadratureRule,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("kernel_tail_integral requires n >= 1".into()));
    }
    if !(-1.0 < x && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} must lie in the open interval (-1, 1)")));
    }
    let tol = default_diag_tol(n);
    match side {
        TailSide::Left => {
            if !(-1.0..1.0).contains(&s) || s >= x {
                return Err(Error::Domain(format!(
                    "left tail requires -1 <= s < x, got s = {s}, x = {x}"
                )));
            }
            Ok(rule.integrate_on(-1.0, s, |t| kernel_value(n, x, t, tol)))
        }
        TailSide::Right => {
            if !(-1.0..=1.0).contains(&s) || s <= x {
                return Err(Error::Domain(format!(
                    "right tail requires x < s <= 1, got s = {s}, x = {x}"
                )));
            }
            Ok(rule.integrate_on(s, 1.0, |t| kernel_value(n, x, t, tol)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_3_HALVES: f64 = 1.224744871391589;

    #[test]
    fn basis_low_orders() {
        let b = eval_basis(0, 0.3).unwrap();
        assert_eq!(b.value(0), std::f64::consts::FRAC_1_SQRT_2);

        let b = eval_basis(1, 1.0).unwrap();
        assert!((b.value(1) - SQRT_3_HALVES).abs() < 1e-15);

        // p_2(x) = sqrt(5/2) (3x² - 1)/2
        let b = eval_basis(2, 0.0).unwrap();
        assert!((b.value(2) - (-(2.5f64).sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn basis_matches_scaled_plain_legendre() {
        for &x in &[-0.9, -0.33, 0.0, 0.511, 0.99] {
            let b = eval_basis(12, x).unwrap();
            for n in 0..=12 {
                let (p, _) = legendre_p_and_deriv(n, x);
                let scale = ((2 * n + 1) as f64 / 2.0).sqrt();
                assert!((b.value(n) - scale * p).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn basis_rejects_out_of_range_point() {
        assert!(eval_basis(3, 1.5).is_err());
        assert!(eval_basis(3, f64::NAN).is_err());
    }

    #[test]
    fn basis_high_order_stays_finite() {
        let b = eval_basis(10_000, 0.73).unwrap();
        assert!(b.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn basis_is_l2_normalized() {
        let rule = gauss_rule(40).unwrap();
        for k in 0..=10 {
            let norm = rule.integrate(|x| {
                let v = eval_basis_unchecked(k, x)[k];
                v * v
            });
            assert!((norm - 1.0).abs() < 1e-10, "k={k} norm={norm}");
        }
    }

    #[test]
    fn gauss_rule_low_orders() {
        let r = gauss_rule(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_eq!(r.weights(), &[2.0]);

        let r = gauss_rule(2).unwrap();
        let c = 1.0 / 3.0f64.sqrt();
        assert!((r.nodes()[0] + c).abs() < 1e-15);
        assert!((r.nodes()[1] - c).abs() < 1e-15);
        assert!((r.weights()[0] - 1.0).abs() < 1e-14);
        assert!((r.weights()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_rule_quartic_exact_with_three_points() {
        let r = gauss_rule(3).unwrap();
        let v = r.integrate(|x| x.powi(4));
        assert!((v - 0.4).abs() < 1e-13);
    }

    #[test]
    fn gauss_rule_structure() {
        for q in [1, 2, 3, 7, 16, 65, 128] {
            let r = gauss_rule(q).unwrap();
            assert_eq!(r.order(), q);
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(r.nodes().iter().all(|&x| -1.0 < x && x < 1.0) || q == 1);
            assert!(r.weights().iter().all(|&w| w > 0.0));
            let sum: f64 = r.weights().iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "q={q} sum={sum}");
            for i in 0..q {
                assert_eq!(r.nodes()[i], -r.nodes()[q - 1 - i], "symmetry q={q} i={i}");
            }
        }
    }

    #[test]
    fn gauss_rule_polynomial_exactness_degree() {
        // ∫ x^d over [-1,1] is 0 for odd d and 2/(d+1) for even d.
        for q in [2usize, 4, 9] {
            for d in 0..=(2 * q - 1) {
                let r = gauss_rule(q).unwrap();
                let v = r.integrate(|x| x.powi(d as i32));
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                assert!((v - exact).abs() < 1e-12, "q={q} d={d}");
            }
        }
    }

    #[test]
    fn gauss_rule_rejects_zero_order() {
        assert!(gauss_rule(0).is_err());
    }

    #[test]
    fn gamma_ratio_known_values() {
        assert!((gamma_ratio(1).unwrap() - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        assert!((gamma_ratio(2).unwrap() - 2.0 / 15.0f64.sqrt()).abs() < 1e-15);
        assert!(gamma_ratio(0).is_err());
    }

    /// Leading coefficient of p_n computed by expanding the plain recurrence
    /// on coefficient vectors, independent of the closed form.
    fn leading_coeff_oracle(n: usize) -> f64 {
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 1.0];
        if n == 0 {
            return ((2 * n + 1) as f64 / 2.0).sqrt();
        }
        for k in 1..n {
            let kf = k as f64;
            let mut next = vec![0.0; k + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += (2.0 * kf + 1.0) * c / (kf + 1.0);
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= kf * c / (kf + 1.0);
            }
            prev = cur;
            cur = next;
        }
        ((2 * n + 1) as f64 / 2.0).sqrt() * cur[n]
    }

    #[test]
    fn gamma_ratio_matches_polynomial_expansion_oracle() {
        for n in 1..=8 {
            let oracle = leading_coeff_oracle(n - 1) / leading_coeff_oracle(n);
            assert!(
                (gamma_ratio(n).unwrap() - oracle).abs() < 1e-13,
                "n={n} closed={} oracle={oracle}",
                gamma_ratio(n).unwrap()
            );
        }
    }

    #[test]
    fn gamma_ratio_in_unit_interval() {
        for n in 1..=64 {
            let r = gamma_ratio(n).unwrap();
            assert!(r > 0.0 && r <= 1.0, "n={n} r={r}");
        }
    }

    #[test]
    fn kernel_order_one_is_constant() {
        for &(x, t) in &[(0.0, 0.9), (-0.5, 0.5), (1.0, -1.0)] {
            let k = kernel(1, x, t, default_diag_tol(1)).unwrap();
            assert!((k.value - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn kernel_order_two_closed_form() {
        // K_2(x, t) = 1/2 + (3/2) x t
        let k = kernel(2, 1.0, 1.0, default_diag_tol(2)).unwrap();
        assert!((k.value - 2.0).abs() < 1e-12);
        let k = kernel(2, 0.5, -0.5, default_diag_tol(2)).unwrap();
        assert!((k.value - 0.125).abs() < 1e-12);
    }

    #[test]
    fn kernel_diagonal_matches_direct_sum() {
        for n in [1, 2, 5, 16, 33] {
            for &x in &[-0.7, 0.0, 0.41, 0.925] {
                let k = kernel(n, x, x, default_diag_tol(n)).unwrap();
                let b = eval_basis(n - 1, x).unwrap();
                let direct: f64 = b.values().iter().map(|v| v * v).sum();
                assert!((k.value - direct).abs() < 1e-10, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn kernel_paths_agree_off_diagonal() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for n in (2..=128).step_by(7) {
            for _ in 0..40 {
                let x = 2.0 * next() - 1.0;
                let t = 2.0 * next() - 1.0;
                if (x - t).abs() < 1e-3 {
                    continue;
                }
                let quotient = kernel(n, x, t, default_diag_tol(n)).unwrap().value;
                let direct = kernel(n, x, t, 2.1).unwrap().value;
                let scale = 1.0f64.max(direct.abs());
                assert!(
                    ((quotient - direct) / scale).abs() < 1e-8,
                    "n={n} x={x} t={t} q={quotient} d={direct}"
                );
            }
        }
    }

    #[test]
    fn tail_integrals_low_order() {
        let rule = gauss_rule(8).unwrap();
        let v = kernel_tail_integral(1, 0.5, -0.2, TailSide::Left, &rule).unwrap();
        assert!((v - 0.4).abs() < 1e-13);
        let v = kernel_tail_integral(1, 0.0, 0.6, TailSide::Right, &rule).unwrap();
        assert!((v - 0.2).abs() < 1e-13);
        // x = 0 kills the xt term of K_2.
        let v = kernel_tail_integral(2, 0.0, 0.5, TailSide::Right, &rule).unwrap();
        assert!((v - 0.25).abs() < 1e-13);
    }

    #[test]
    fn tail_integral_ordering_preconditions() {
        let rule = gauss_rule(8).unwrap();
        assert!(kernel_tail_integral(2, 0.0, 0.5, TailSide::Left, &rule).is_err());
        assert!(kernel_tail_integral(2, 0.0, -0.5, TailSide::Right, &rule).is_err());
        assert!(kernel_tail_integral(2, 1.0, 0.5, TailSide::Left, &rule).is_err());
    }

    #[test]
    fn tail_integral_complements_sum_to_full_integral() {
        // Only the k = 0 term of K_n survives integration over [-1, 1], so the
        // full integral is sqrt(2) · p_0(x) = 1 for every n and x.
        let rule = gauss_rule(40).unwrap();
        for n in [1, 3, 10, 32] {
            for &x in &[-0.6, 0.2, 0.83] {
                let left = kernel_tail_integral(n, x, x - 1e-12, TailSide::Left, &rule).unwrap();
                let right = kernel_tail_integral(n, x, x + 1e-12, TailSide::Right, &rule).unwrap();
                assert!((left + right - 1.0).abs() < 1e-9, "n={n} x={x}");
            }
        }
    }
}
