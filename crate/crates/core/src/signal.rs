//! Finite complex sequences indexed symmetrically around zero.
//!
//! A signal of length `N` holds samples for `n ∈ {⌈-N/2⌉, …, ⌈N/2⌉ - 1}`:
//! `-N/2 … N/2 - 1` for even `N` and `-(N-1)/2 … (N-1)/2` for odd `N`.
//! Storage is in ascending `n`, so slot `i` holds index `i - ⌊N/2⌋`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LctError, Result};

/// Smallest centered index for a length-`n` signal.
#[inline]
pub fn centered_start(n: usize) -> i64 {
    -((n / 2) as i64)
}

/// The centered index range `[start, end)` for length `n`.
pub fn centered_range(n: usize) -> std::ops::Range<i64> {
    let start = centered_start(n);
    start..start + n as i64
}

/// Storage slot of centered index `k`, wrapping modulo `n`.
#[inline]
pub fn slot_of(k: i64, n: usize) -> usize {
    (k - centered_start(n)).rem_euclid(n as i64) as usize
}

/// Complex samples with a sampling period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signal {
    samples: Vec<Complex64>,
    delta: f64,
}

impl Signal {
    /// Wraps samples with the default period `sqrt(1/N)`.
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(LctError::EmptySignal);
        }
        let delta = (1.0 / samples.len() as f64).sqrt();
        Signal::with_delta(samples, delta)
    }

    pub fn with_delta(samples: Vec<Complex64>, delta: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(LctError::EmptySignal);
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(LctError::InvalidArgument(format!(
                "sampling period must be positive and finite, got {delta}"
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LctError::NonFinite { what: "signal samples" });
        }
        Ok(Signal { samples, delta })
    }

    /// Evaluates `f(n)` on the centered grid.
    pub fn from_fn(len: usize, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        Signal::new(centered_range(len).map(f).collect())
    }

    /// Evaluates `f(n · delta)` on the centered grid with the given period.
    pub fn sampled(len: usize, delta: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = centered_range(len).map(|n| f(n as f64 * delta)).collect();
        Signal::with_delta(samples, delta)
    }

    /// Single unit sample at `n = 0`.
    pub fn impulse(len: usize) -> Result<Self> {
        Signal::from_fn(len, |n| if n == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; signals hold at least one sample.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Centered indices in storage order.
    pub fn indices(&self) -> std::ops::Range<i64> {
        centered_range(self.len())
    }

    /// Sample at centered index `n` (taken modulo `N`).
    pub fn at(&self, n: i64) -> Complex64 {
        self.samples[slot_of(n, self.len())]
    }

    /// Replaces the samples and keeps the period. Used by the transforms,
    /// which never change length.
    pub(crate) fn replaced(&self, samples: Vec<Complex64>) -> Signal {
        debug_assert_eq!(samples.len(), self.samples.len());
        Signal { samples, delta: self.delta }
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.energy().sqrt()
    }

    /// Multiplies every sample by `k`.
    pub fn scaled(&self, k: Complex64) -> Signal {
        self.replaced(self.samples.iter().map(|z| z * k).collect())
    }

    /// `alpha·self + beta·other`.
    pub fn linear_combination(&self, alpha: Complex64, other: &Signal, beta: Complex64) -> Result<Signal> {
        if self.len() != other.len() {
            return Err(LctError::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(self.replaced(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        ))
    }
}
