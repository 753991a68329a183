//! Registry of test functions on [-1, 1]², each carrying class tags with a
//! one-line rationale. Tags are construction arguments, not machine proofs:
//! class membership over the continuum is not decidable from samples.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::harness::convergence::QuadPolicy;
use crate::harness::sampling::SplitMix64;
use crate::legendre::eval_basis;

/// A declared function-class tag, documentation level.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ClassTag {
    pub name: String,
    pub rationale: String,
}

/// A named test function with its declared classes and default quadrature
/// policy.
#[derive(Clone)]
pub struct TestFunction {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub classes: Vec<ClassTag>,
    pub quad_policy: QuadPolicy,
    eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("classes", &self.classes)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn evaluator(&self) -> Arc<dyn Fn(f64, f64) -> f64 + Send + Sync> {
        Arc::clone(&self.eval)
    }

    /// Echo of the effective parameters, e.g. `"c=3"`.
    pub fn params_label(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

/// Parameter lookup with defaults; rejects keys the function does not take.
struct Params<'a> {
    given: &'a [(String, f64)],
    allowed: &'a [&'a str],
}

impl<'a> Params<'a> {
    fn new(given: &'a [(String, f64)], allowed: &'a [&'a str]) -> Result<Self> {
        for (k, _) in given {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::InvalidParam(format!(
                    "unknown parameter `{k}` (expected one of: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(Self { given, allowed })
    }

    fn get(&self, key: &str, default: f64) -> f64 {
        debug_assert!(self.allowed.contains(&key));
        self.given
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .unwrap_or(default)
    }
}

fn tag(name: &str, rationale: &str) -> ClassTag {
    ClassTag { name: name.into(), rationale: rationale.into() }
}

/// Triangle wave: distance from t to the nearest integer, period 1.
fn tri(t: f64) -> f64 {
    (t - t.round()).abs()
}

/// Names accepted by [`corpus`].
pub fn corpus_names() -> &'static [&'static str] {
    &["constant", "polynomial", "abs_sum", "oscillatory", "pbv_p", "radial_kink"]
}

/// Look up a test function by name with explicit parameters.
pub fn corpus(name: &str, params: &[(String, f64)]) -> Result<TestFunction> {
    match name {
        "constant" => {
            let p = Params::new(params, &["c"])?;
            let c = p.get("c", 1.0);
            Ok(TestFunction {
                name: name.into(),
                params: vec![("c".into(), c)],
                classes: vec![tag("BV", "constants have zero variation of every kind")],
                quad_policy: QuadPolicy::Smooth,
                eval: Arc::new(move |_, _| c),
            })
        }
        "polynomial" => {
            let p = Params::new(params, &["degx", "degy", "seed"])?;
            let degx = p.get("degx", 2.0) as usize;
            let degy = p.get("degy", 2.0) as usize;
            let seed = p.get("seed", 1.0) as u64;
            if degx > 64 || degy > 64 {
                return Err(Error::InvalidParam("polynomial degree capped at 64".into()));
            }
            let mut mix = SplitMix64(seed.wrapping_add(0x5eed));
            let coeffs: Vec<f64> =
                (0..(degx + 1) * (degy + 1)).map(|_| 2.0 * mix.next_f64() - 1.0).collect();
            let eval = move |x: f64, y: f64| {
                let bx = eval_basis(degx, x).expect("corpus points lie in [-1, 1]");
                let by = eval_basis(degy, y).expect("corpus points lie in [-1, 1]");
                let mut acc = 0.0;
                for n in 0..=degx {
                    for m in 0..=degy {
                        acc += coeffs[n * (degy + 1) + m] * bx.value(n) * by.value(m);
                    }
                }
                acc
            };
            Ok(TestFunction {
                name: name.into(),
                params: vec![
                    ("degx".into(), degx as f64),
                    ("degy".into(), degy as f64),
                    ("seed".into(), seed as f64),
                ],
                classes: vec![tag(
                    "BV",
                    "polynomials are smooth with bounded mixed derivatives on the square",
                )],
                quad_policy: QuadPolicy::Smooth,
                eval: Arc::new(eval),
            })
        }
        "abs_sum" => {
            Params::new(params, &[])?;
            Ok(TestFunction {
                name: name.into(),
                params: vec![],
                classes: vec![
                    tag("BV", "|x| + |y| is monotone per variable on each half of the square"),
                    tag("PBV", "marginal variations are finite; the mixed differences vanish"),
                    tag("HBV", "finite plain variation implies finite harmonic-weighted variation"),
                ],
                quad_policy: QuadPolicy::Kinked,
                eval: Arc::new(|x, y| x.abs() + y.abs()),
            })
        }
        "oscillatory" => {
            let p = Params::new(params, &["a"])?;
            let a = p.get("a", 0.05);
            if a <= 0.0 {
                return Err(Error::InvalidParam(format!("oscillatory offset a = {a} must be > 0")));
            }
            Ok(TestFunction {
                name: name.into(),
                params: vec![("a".into(), a)],
                classes: vec![
                    tag("BV", "smooth for a > 0, with derivative bounds scaling like 1/a^2"),
                    tag("HBV", "finite plain variation implies finite harmonic-weighted variation"),
                ],
                quad_policy: QuadPolicy::Smooth,
                eval: Arc::new(move |x, y| x * y * (1.0 / (x * x + y * y + a)).sin()),
            })
        }
        "pbv_p" => {
            let p = Params::new(params, &["p", "levels"])?;
            let pexp = p.get("p", 2.0);
            let levels = p.get("levels", 8.0) as usize;
            if pexp < 1.0 {
                return Err(Error::InvalidParam(format!("exponent p = {pexp} must be >= 1")));
            }
            if levels == 0 || levels > 24 {
                return Err(Error::InvalidParam("levels must lie in 1..=24".into()));
            }
            let u = move |x: f64| {
                let xi = 0.5 * (x + 1.0);
                (0..levels)
                    .map(|j| 2f64.powf(-(j as f64) / pexp) * tri(2f64.powi(j as i32) * xi))
                    .sum::<f64>()
            };
            Ok(TestFunction {
                name: name.into(),
                params: vec![("p".into(), pexp), ("levels".into(), levels as f64)],
                classes: vec![
                    tag(
                        "PBV_p",
                        "triangle-wave levels with weights 2^(-j/p) keep the p-th-power increment sums bounded uniformly in the level count",
                    ),
                    tag("BV", "any finite-level partial sum is piecewise linear"),
                ],
                quad_policy: QuadPolicy::Kinked,
                eval: Arc::new(move |x, y| u(x) + u(y)),
            })
        }
        "radial_kink" => {
            let p = Params::new(params, &["alpha"])?;
            let alpha = p.get("alpha", 0.5);
            if !(0.0 < alpha && alpha <= 1.0) {
                return Err(Error::InvalidParam(format!("alpha = {alpha} must lie in (0, 1]")));
            }
            Ok(TestFunction {
                name: name.into(),
                params: vec![("alpha".into(), alpha)],
                classes: vec![tag(
                    "modulus O(k^alpha)",
                    "each line section is monotone on two pieces, so the modulus of variation is bounded and in particular O(k^alpha)",
                )],
                quad_policy: QuadPolicy::Kinked,
                eval: Arc::new(move |x, y| (x * y).abs().powf(alpha)),
            })
        }
        _ => Err(Error::UnknownFunction(name.into())),
    }
}

/// The function under its default parameters.
pub fn corpus_default(name: &str) -> Result<TestFunction> {
    corpus(name, &[])
}
