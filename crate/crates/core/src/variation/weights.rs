//! Weight sequences λ = {λ_k} for Λ-variation functionals, with shifted
//! tails λ_{k+n} used as decay diagnostics.

use crate::error::{Error, Result};

/// Closed-form weight sequences, indexed from k = 1.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaGenerator {
    /// λ_k = k (harmonic variation).
    Harmonic,
    /// λ_k = 1 (plain bounded variation).
    Constant,
    /// λ_k = k / ln^{1+δ}(k+1), δ > 0. Eventually increasing, but dips for
    /// small k, which is why monotonicity is only checked on demand.
    PowerLog { delta: f64 },
    /// Explicit table, λ_k = table[k-1].
    Custom(Vec<f64>),
}

impl LambdaGenerator {
    pub fn raw(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("weight index starts at 1".into()));
        }
        match self {
            LambdaGenerator::Harmonic => Ok(k as f64),
            LambdaGenerator::Constant => Ok(1.0),
            LambdaGenerator::PowerLog { delta } => {
                let kf = k as f64;
                Ok(kf / (kf + 1.0).ln().powf(1.0 + delta))
            }
            LambdaGenerator::Custom(table) => table.get(k - 1).copied().ok_or_else(|| {
                Error::InvalidParam(format!("custom weight table has no entry for k = {k}"))
            }),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LambdaGenerator::Harmonic => "harmonic".into(),
            LambdaGenerator::Constant => "constant".into(),
            LambdaGenerator::PowerLog { delta } => format!("powerlog:{delta}"),
            LambdaGenerator::Custom(t) => format!("custom[{}]", t.len()),
        }
    }
}

/// A weight sequence together with a tail offset: weight(k) = λ_{k + offset}.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaWeights {
    pub generator: LambdaGenerator,
    pub offset: usize,
}

impl LambdaWeights {
    pub fn new(generator: LambdaGenerator) -> Self {
        Self { generator, offset: 0 }
    }

    pub fn with_offset(generator: LambdaGenerator, offset: usize) -> Self {
        Self { generator, offset }
    }

    /// The same sequence shifted by `n` more places.
    pub fn shifted(&self, n: usize) -> Self {
        Self { generator: self.generator.clone(), offset: self.offset + n }
    }

    pub fn weight(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("weight index starts at 1".into()));
        }
        self.generator.raw(k + self.offset)
    }

    /// weight(1) ..= weight(k_max), validated positive.
    pub fn weights_upto(&self, k_max: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            let w = self.weight(k)?;
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidParam(format!("weight λ_{} = {w} must be positive", k + self.offset)));
            }
            out.push(w);
        }
        Ok(out)
    }

    /// On-demand invariant check over 1..=horizon: λ_1 ≥ 1 and nondecreasing.
    pub fn validate(&self, horizon: usize) -> Result<()> {
        let w = self.weights_upto(horizon)?;
        if w[0] < 1.0 {
            return Err(Error::InvalidParam(format!("λ_1 = {} is below 1", w[0])));
        }
        for k in 1..w.len() {
            if w[k] < w[k - 1] {
                return Err(Error::InvalidParam(format!(
                    "weights decrease at k = {}: {} -> {}",
                    k + 1 + self.offset,
                    w[k - 1],
                    w[k]
                )));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        if self.offset == 0 {
            self.generator.label()
        } else {
            format!("{}+{}", self.generator.label(), self.offset)
        }
    }
}
