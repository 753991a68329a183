//! Empirical series diagnostics for weight sequences and grid functions.
//!
//! Two number series are summed directly:
//!
//!   * the weight series Σ λ_n / n², together with an empirical check that
//!     λ_n / n is nonincreasing over the horizon, and
//!   * when a grid function is supplied, the modulus series
//!     Σ sqrt(v_j(n)) / n^{3/2} per axis, built from the computed modulus of
//!     variation (constant beyond the last grid-resolvable interval count).
//!
//! Verdicts compare the partial-sum increase over the last decade of terms
//! with the decade before it and are labeled empirical over the horizon;
//! nothing here is a proof.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::variation::functionals::{modulus_of_variation, Axis};
use crate::variation::grid::GridFunction2D;
use crate::variation::weights::LambdaGenerator;

/// Trend of a partial-sum sequence over the tested horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trend {
    #[serde(rename = "convergent (empirical over horizon)")]
    Convergent,
    #[serde(rename = "divergent (empirical over horizon)")]
    Divergent,
}

/// A partial sum recorded at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub partial_sum: f64,
}

/// Summary of one directly summed series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTrend {
    pub checkpoints: Vec<Checkpoint>,
    /// S(horizon) - S(horizon/10).
    pub last_decade_increase: f64,
    /// S(horizon/10) - S(horizon/100).
    pub prev_decade_increase: f64,
    pub trend: Trend,
}

/// Report of the series conditions for a weight sequence and, optionally, a
/// grid function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub lambda: String,
    pub n_terms: usize,
    /// Σ λ_n / n².
    pub weight_series: SeriesTrend,
    /// λ_n / n nonincreasing over the horizon.
    pub weight_over_n_nonincreasing: bool,
    /// Σ sqrt(v_j(n)) / n^{3/2} for the two axes, when a function was given.
    pub modulus_series: Option<[SeriesTrend; 2]>,
}

fn classify(last: f64, prev: f64, scale: f64) -> Trend {
    if last <= 1e-15 * scale.max(1.0) {
        return Trend::Convergent;
    }
    if last < 0.95 * prev {
        Trend::Convergent
    } else {
        Trend::Divergent
    }
}

fn summed_trend(n_terms: usize, term: impl Fn(usize) -> f64) -> SeriesTrend {
    let mark_prev = (n_terms / 100).max(1);
    let mark_last = (n_terms / 10).max(1);
    let mut checkpoints = Vec::new();
    let mut sum = 0.0;
    let mut at_prev = 0.0;
    let mut at_last = 0.0;
    let mut next_pow = 10usize;
    for n in 1..=n_terms {
        sum += term(n);
        if n == mark_prev {
            at_prev = sum;
        }
        if n == mark_last {
            at_last = sum;
        }
        if n == next_pow || n == n_terms {
            checkpoints.push(Checkpoint { n, partial_sum: sum });
            if n == next_pow {
                next_pow = next_pow.saturating_mul(10);
            }
        }
    }
    let last_decade_increase = sum - at_last;
    let prev_decade_increase = at_last - at_prev;
    let trend = classify(last_decade_increase, prev_decade_increase, sum);
    SeriesTrend { checkpoints, last_decade_increase, prev_decade_increase, trend }
}

/// Sum the weight series (and, when `f` is given, the modulus series) over
/// `n_terms` terms and report the observed trends.
pub fn series_conditions(
    generator: &LambdaGenerator,
    f: Option<&GridFunction2D>,
    n_terms: usize,
) -> Result<SeriesReport> {
    if n_terms < 10 {
        return Err(Error::Domain("series check needs at least 10 terms".into()));
    }
    // materialize weights once; the generator is closed-form so this is cheap
    let mut nonincreasing = true;
    let mut prev_ratio = f64::INFINITY;
    let mut weight_terms = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        let lam = generator.raw(n)?;
        if !(lam > 0.0) || !lam.is_finite() {
            return Err(Error::InvalidParam(format!("weight λ_{n} = {lam} must be positive")));
        }
        let nf = n as f64;
        let ratio = lam / nf;
        if ratio > prev_ratio + 1e-15 {
            nonincreasing = false;
        }
        prev_ratio = ratio;
        weight_terms.push(lam / (nf * nf));
    }
    let weight_series = summed_trend(n_terms, |n| weight_terms[n - 1]);

    let modulus_series = match f {
        None => None,
        Some(grid) => {
            let mut per_axis = Vec::with_capacity(2);
            for axis in [Axis::First, Axis::Second] {
                let cap = match axis {
                    Axis::First => grid.xs().len() - 1,
                    Axis::Second => grid.ys().len() - 1,
                };
                let v = modulus_of_variation(grid, axis, cap.min(n_terms).max(1))?;
                per_axis.push(summed_trend(n_terms, |n| {
                    let vn = v[(n - 1).min(v.len() - 1)];
                    vn.sqrt() / (n as f64).powf(1.5)
                }));
            }
            let b: [SeriesTrend; 2] = [per_axis.remove(0), per_axis.remove(0)];
            Some(b)
        }
    };

    Ok(SeriesReport {
        lambda: generator.label(),
        n_terms,
        weight_series,
        weight_over_n_nonincreasing: nonincreasing,
        modulus_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_weight_series_diverges() {
        let r = series_conditions(&LambdaGenerator::Harmonic, None, 100_000).unwrap();
        assert_eq!(r.weight_series.trend, Trend::Divergent);
        assert!(r.weight_over_n_nonincreasing); // λ_n / n ≡ 1
        // decade increments of Σ 1/n are ln(10) each
        assert!((r.weight_series.last_decade_increase - 10f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn powerlog_weight_series_converges() {
        let r = series_conditions(&LambdaGenerator::PowerLog { delta: 1.0 }, None, 100_000).unwrap();
        assert_eq!(r.weight_series.trend, Trend::Convergent);
        assert!(r.weight_over_n_nonincreasing); // λ_n / n = 1/ln²(n+1) decreases
        assert!(r.weight_series.last_decade_increase < r.weight_series.prev_decade_increase);
    }

    #[test]
    fn constant_function_modulus_series_is_zero() {
        let f = GridFunction2D::sample_uniform(6, 6, |_, _| 2.0).unwrap();
        let r = series_conditions(&LambdaGenerator::Harmonic, Some(&f), 1000).unwrap();
        let m = r.modulus_series.unwrap();
        for axis in &m {
            assert_eq!(axis.trend, Trend::Convergent);
            assert_eq!(axis.checkpoints.last().unwrap().partial_sum, 0.0);
        }
    }

    #[test]
    fn kinked_function_modulus_series_converges() {
        // v(n) is bounded for a function of bounded line variation, so
        // Σ sqrt(v(n)) / n^{3/2} converges.
        let f = GridFunction2D::sample_uniform(9, 9, |x, y| x.abs() + y.abs()).unwrap();
        let r = series_conditions(&LambdaGenerator::Harmonic, Some(&f), 10_000).unwrap();
        let m = r.modulus_series.unwrap();
        assert_eq!(m[0].trend, Trend::Convergent);
        assert_eq!(m[1].trend, Trend::Convergent);
    }

    #[test]
    fn horizon_precondition() {
        assert!(series_conditions(&LambdaGenerator::Harmonic, None, 9).is_err());
    }
}
