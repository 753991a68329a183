//! Functions sampled on a rectangular grid over [-1, 1]², plus the pointwise
//! difference operators every variation functional is built from.
//!
//! For a grid function f, an x-interval Δ = (x_a, x_b) and a y-interval
//! J = (y_c, y_d), the increments are
//!
//!   f(Δ, y) = f(x_b, y) - f(x_a, y),
//!   f(x, J) = f(x, y_d) - f(x, y_c),
//!   f(Δ, J) = f(x_a, y_c) - f(x_a, y_d) - f(x_b, y_c) + f(x_b, y_d).
//!
//! All functionals computed from samples are grid-restricted: they bound the
//! continuum value from below, since only interval endpoints on the grid are
//! available.

use crate::error::{Error, Result};

/// A function sampled on a rectangular grid, values[i][j] = f(xs[i], ys[j]).
#[derive(Debug, Clone)]
pub struct GridFunction2D {
    xs: Vec<f64>,
    ys: Vec<f64>,
    values: Vec<f64>, // row-major in the x index
}

fn check_grid(axis: &str, g: &[f64]) -> Result<()> {
    if g.len() < 2 {
        return Err(Error::Domain(format!("{axis} grid needs at least 2 points")));
    }
    if !g.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain(format!("{axis} grid must be strictly increasing")));
    }
    if g[0] < -1.0 || *g.last().unwrap() > 1.0 || g.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("{axis} grid must lie inside [-1, 1]")));
    }
    Ok(())
}

impl GridFunction2D {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_grid("x", &xs)?;
        check_grid("y", &ys)?;
        if values.len() != xs.len() * ys.len() {
            return Err(Error::Domain(format!(
                "expected {} values, got {}",
                xs.len() * ys.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("grid function contains a non-finite sample".into()));
        }
        Ok(Self { xs, ys, values })
    }

    /// Sample `f` on the given grids.
    pub fn sample(xs: Vec<f64>, ys: Vec<f64>, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(xs.len() * ys.len());
        for &x in &xs {
            for &y in &ys {
                values.push(f(x, y));
            }
        }
        Self::new(xs, ys, values)
    }

    /// Sample `f` on a uniform gx × gy grid covering [-1, 1]².
    pub fn sample_uniform(gx: usize, gy: usize, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        Self::sample(uniform_grid(gx), uniform_grid(gy), f)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ys.len() + j]
    }

    /// The x-line at fixed y index j.
    pub fn x_line(&self, j: usize) -> Vec<f64> {
        (0..self.xs.len()).map(|i| self.value(i, j)).collect()
    }

    /// The y-line at fixed x index i.
    pub fn y_line(&self, i: usize) -> Vec<f64> {
        self.values[i * self.ys.len()..(i + 1) * self.ys.len()].to_vec()
    }

    pub(crate) fn rect_increment_unchecked(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.value(a, c) - self.value(a, d) - self.value(b, c) + self.value(b, d)
    }
}

/// `n` equally spaced points covering [-1, 1], endpoints included.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2, "uniform grid needs at least 2 points");
    let step = 2.0 / (n - 1) as f64;
    (0..n).map(|k| (-1.0 + step * k as f64).clamp(-1.0, 1.0)).collect()
}

/// Mixed second difference over the index rectangle (a, b) × (c, d).
pub fn rect_increment(f: &GridFunction2D, a: usize, b: usize, c: usize, d: usize) -> Result<f64> {
    if a >= b || b >= f.xs.len() {
        return Err(Error::Index(format!("x interval ({a}, {b}) invalid for {} points", f.xs.len())));
    }
    if c >= d || d >= f.ys.len() {
        return Err(Error::Index(format!("y interval ({c}, {d}) invalid for {} points", f.ys.len())));
    }
    Ok(f.rect_increment_unchecked(a, b, c, d))
}

/// Grid-restricted partial and mixed moduli of continuity at scales
/// (delta1, delta2): the largest |f(x, y) - f(s, y)| over |x - s| ≤ delta1,
/// the symmetric quantity in y, and the largest mixed difference over
/// rectangles with both side constraints.
pub fn moduli_of_continuity(
    f: &GridFunction2D,
    delta1: f64,
    delta2: f64,
) -> Result<(f64, f64, f64)> {
    if delta1 <= 0.0 || delta2 <= 0.0 {
        return Err(Error::Domain("moduli of continuity require positive deltas".into()));
    }
    let gx = f.xs.len();
    let gy = f.ys.len();

    let mut omega1 = 0.0f64;
    for i in 0..gx {
        for i2 in i + 1..gx {
            if f.xs[i2] - f.xs[i] > delta1 {
                break;
            }
            for j in 0..gy {
                omega1 = omega1.max((f.value(i2, j) - f.value(i, j)).abs());
            }
        }
    }

    let mut omega2 = 0.0f64;
    for j in 0..gy {
        for j2 in j + 1..gy {
            if f.ys[j2] - f.ys[j] > delta2 {
                break;
            }
            for i in 0..gx {
                omega2 = omega2.max((f.value(i, j2) - f.value(i, j)).abs());
            }
        }
    }

    let mut omega12 = 0.0f64;
    for i in 0..gx {
        for i2 in i + 1..gx {
            if f.xs[i2] - f.xs[i] > delta1 {
                break;
            }
            for j in 0..gy {
                for j2 in j + 1..gy {
                    if f.ys[j2] - f.ys[j] > delta2 {
                        break;
                    }
                    omega12 = omega12.max(f.rect_increment_unchecked(i, i2, j, j2).abs());
                }
            }
        }
    }

    Ok((omega1, omega2, omega12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridFunction2D::sample_uniform(5, 5, |x, y| x + y).is_ok());
        assert!(GridFunction2D::new(vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0; 4]).is_err());
        assert!(GridFunction2D::new(vec![-2.0, 0.0], vec![0.0, 1.0], vec![0.0; 4]).is_err());
        assert!(GridFunction2D::new(vec![0.0, 1.0], vec![0.0, 1.0], vec![f64::NAN; 4]).is_err());
    }

    #[test]
    fn rect_increment_annihilates_separable_sums() {
        let f = GridFunction2D::sample_uniform(6, 7, |x, y| x.exp() + y * y).unwrap();
        for (a, b, c, d) in [(0, 1, 0, 1), (0, 5, 2, 6), (1, 3, 4, 5)] {
            assert!(rect_increment(&f, a, b, c, d).unwrap().abs() < 1e-14);
        }
        let c = GridFunction2D::sample_uniform(4, 4, |_, _| 2.5).unwrap();
        assert_eq!(rect_increment(&c, 0, 3, 1, 2).unwrap(), 0.0);
    }

    #[test]
    fn rect_increment_of_product_on_unit_square() {
        let f = GridFunction2D::new(
            vec![0.0, 1.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0], // xy at (0,0),(0,1),(1,0),(1,1)
        )
        .unwrap();
        assert_eq!(rect_increment(&f, 0, 1, 0, 1).unwrap(), 1.0);
    }

    #[test]
    fn rect_increment_bounds() {
        let f = GridFunction2D::sample_uniform(3, 3, |x, y| x * y).unwrap();
        assert!(rect_increment(&f, 1, 1, 0, 2).is_err());
        assert!(rect_increment(&f, 0, 3, 0, 2).is_err());
    }

    #[test]
    fn moduli_of_constant_vanish() {
        let f = GridFunction2D::sample_uniform(8, 8, |_, _| 4.0).unwrap();
        let (o1, o2, o12) = moduli_of_continuity(&f, 0.5, 0.5).unwrap();
        assert_eq!((o1, o2, o12), (0.0, 0.0, 0.0));
    }

    #[test]
    fn modulus_of_linear_function_matches_scale() {
        // 5-point uniform grid has spacing 0.5, so delta = 0.5 is realized exactly.
        let f = GridFunction2D::sample_uniform(5, 5, |x, _| x).unwrap();
        let (o1, o2, _) = moduli_of_continuity(&f, 0.5, 0.5).unwrap();
        assert!((o1 - 0.5).abs() < 1e-15);
        assert_eq!(o2, 0.0);
    }

    #[test]
    fn mixed_modulus_vanishes_for_separable_sums() {
        let f = GridFunction2D::sample_uniform(9, 9, |x, y| x.sin() + y.abs()).unwrap();
        let (_, _, o12) = moduli_of_continuity(&f, 1.0, 1.0).unwrap();
        assert!(o12 < 1e-14);
    }
}
