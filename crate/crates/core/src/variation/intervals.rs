//! Collections of nonoverlapping index intervals on a grid line.
//!
//! Nonoverlapping means disjoint open interiors: consecutive intervals may
//! share an endpoint. That is the convention that maximizes attainable sums
//! and it is used by every enumerator and dynamic program in this module.

use crate::error::{Error, Result};

/// A sorted set of index intervals (a, b) with a < b and b_i ≤ a_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    pairs: Vec<(usize, usize)>,
}

impl IntervalSet {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        for &(a, b) in &pairs {
            if a >= b {
                return Err(Error::Domain(format!("interval ({a}, {b}) is empty")));
            }
        }
        for w in pairs.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::Domain(format!(
                    "intervals {:?} and {:?} overlap",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Every nonempty set of nonoverlapping intervals on `len` points.
///
/// Grows fast (28 656 sets at len = 12); callers enforce their own caps.
pub fn enumerate_interval_sets(len: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(
        start: usize,
        len: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        for a in start..len.saturating_sub(1) {
            for b in a + 1..len {
                cur.push((a, b));
                out.push(cur.clone());
                extend(b, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(0, len, &mut cur, &mut out);
    out
}

/// For k = 1..=n_max, the maximum of Σ score(a_i, b_i) over collections of at
/// most k nonoverlapping intervals on a line of `len` points.
///
/// Scores must be nonnegative, so "at most k" agrees with "exactly k"
/// whenever k intervals fit on the grid, and the result is nondecreasing
/// in k. O(len² · n_max).
pub fn max_disjoint_interval_scores(
    len: usize,
    n_max: usize,
    score: impl Fn(usize, usize) -> f64,
) -> Vec<f64> {
    if len < 2 || n_max == 0 {
        return vec![0.0; n_max];
    }
    let mut prev = vec![0.0; len]; // zero intervals
    let mut cur = vec![0.0; len];
    let mut out = Vec::with_capacity(n_max);
    for _ in 1..=n_max {
        for i in 0..len {
            let mut best = if i > 0 { cur[i - 1] } else { 0.0 };
            for a in 0..i {
                let v = prev[a] + score(a, i);
                if v > best {
                    best = v;
                }
            }
            cur[i] = best;
        }
        out.push(cur[len - 1]);
        std::mem::swap(&mut prev, &mut cur);
    }
    out
}

/// Linear-time variant for absolute increments (score = |g(b) - g(a)| only):
/// scans the difference sequence with a per-interval sign choice.
/// O(len · n_max); kept as a cross-check against the quadratic program.
pub fn max_disjoint_abs_increments_fast(values: &[f64], n_max: usize) -> Vec<f64> {
    let len = values.len();
    if len < 2 || n_max == 0 {
        return vec![0.0; n_max];
    }
    const NEG: f64 = f64::NEG_INFINITY;
    // closed[j]: j intervals at most, none open; open_p/open_m: one open
    // interval accumulating signed increments.
    let mut closed: Vec<f64> = vec![0.0; n_max + 1];
    let mut open_p = vec![NEG; n_max + 1];
    let mut open_m = vec![NEG; n_max + 1];
    for j in 1..=n_max {
        open_p[j] = 0.0;
        open_m[j] = 0.0;
    }
    for i in 1..len {
        let d = values[i] - values[i - 1];
        let mut closed_next = closed.clone();
        for j in 1..=n_max {
            closed_next[j] = closed_next[j]
                .max(open_p[j] + d)
                .max(open_m[j] - d)
                .max(closed_next[j - 1]);
        }
        let mut open_p_next = vec![NEG; n_max + 1];
        let mut open_m_next = vec![NEG; n_max + 1];
        for j in 1..=n_max {
            // extend the open interval, or open a fresh one at point i
            open_p_next[j] = (open_p[j] + d).max(closed_next[j - 1]);
            open_m_next[j] = (open_m[j] - d).max(closed_next[j - 1]);
        }
        closed = closed_next;
        open_p = open_p_next;
        open_m = open_m_next;
    }
    (1..=n_max).map(|j| closed[j]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_set_validation() {
        assert!(IntervalSet::new(vec![(0, 1), (1, 3)]).is_ok());
        assert!(IntervalSet::new(vec![(0, 2), (1, 3)]).is_err());
        assert!(IntervalSet::new(vec![(2, 2)]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // number of nonempty interval collections: 1, 4, 12, 33 for 2..=5 points
        assert_eq!(enumerate_interval_sets(2).len(), 1);
        assert_eq!(enumerate_interval_sets(3).len(), 4);
        assert_eq!(enumerate_interval_sets(4).len(), 12);
        assert_eq!(enumerate_interval_sets(5).len(), 33);
        for set in enumerate_interval_sets(5) {
            assert!(IntervalSet::new(set).is_ok());
        }
    }

    #[test]
    fn dp_matches_enumeration_on_small_lines() {
        let lines: Vec<Vec<f64>> = vec![
            vec![0.0, 1.0, 0.0, 1.0, 0.0],
            vec![0.0, 3.0, 1.0, 2.0],
            vec![1.0, -2.0, 0.5, 4.0, -1.0, 0.0],
            vec![2.0, 2.0, 2.0],
        ];
        for g in lines {
            let score = |a: usize, b: usize| (g[b] - g[a]).abs();
            let dp = max_disjoint_interval_scores(g.len(), 4, score);
            for n in 1..=4usize {
                let brute = enumerate_interval_sets(g.len())
                    .into_iter()
                    .filter(|s| s.len() <= n)
                    .map(|s| s.iter().map(|&(a, b)| score(a, b)).sum::<f64>())
                    .fold(0.0f64, f64::max);
                assert_eq!(dp[n - 1], brute, "line {g:?}, n = {n}");
            }
        }
    }

    #[test]
    fn alternating_line_values() {
        let g: [f64; 5] = [0.0, 1.0, 0.0, 1.0, 0.0];
        let dp = max_disjoint_interval_scores(g.len(), 4, |a, b| (g[b] - g[a]).abs());
        assert_eq!(dp, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn fast_dp_agrees_with_quadratic_dp() {
        let mut state = 2024u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for len in [2usize, 3, 5, 9, 17, 40] {
            let g: Vec<f64> = (0..len).map(|_| next()).collect();
            let slow = max_disjoint_interval_scores(len, 6, |a, b| (g[b] - g[a]).abs());
            let fast = max_disjoint_abs_increments_fast(&g, 6);
            for (s, f) in slow.iter().zip(&fast) {
                assert!((s - f).abs() < 1e-12, "len={len} slow={s} fast={f}");
            }
        }
    }

    #[test]
    fn scores_are_monotone_in_interval_budget() {
        let g: [f64; 6] = [0.3, -1.0, 0.4, 0.2, 0.9, -0.5];
        let dp = max_disjoint_interval_scores(g.len(), 6, |a, b| (g[b] - g[a]).abs());
        for w in dp.windows(2) {
            assert!(w[0] <= w[1]);
        }
        // v(n) ≤ n · v(1)
        for (i, v) in dp.iter().enumerate() {
            assert!(*v <= (i + 1) as f64 * dp[0] + 1e-12);
        }
    }
}
