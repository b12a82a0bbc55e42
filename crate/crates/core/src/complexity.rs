//! Operation counts and wall-clock timing of the fast and direct DLCT.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::error::{LctError, Result};
use crate::kernels::direct_dlct;
use crate::params::LctParams;
use crate::signal::Signal;
use crate::transform::dlct;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Chirp multiplication and FFT based DLCT.
    Fast,
    /// O(N²) direct summation.
    Direct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fast => "fast",
            Method::Direct => "direct",
        })
    }
}

impl FromStr for Method {
    type Err = LctError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Method::Fast),
            "direct" => Ok(Method::Direct),
            other => Err(LctError::InvalidArgument(format!("unknown method: {other}"))),
        }
    }
}

/// Real multiplications of the direct sum: `4N²`.
pub fn direct_real_mults(n: usize) -> f64 {
    4.0 * (n as f64).powi(2)
}

/// Real multiplications of the fast DLCT with `B ≠ 0`:
/// `12N + 4N·log₂N`.
pub fn fast_real_mults(n: usize) -> f64 {
    let n = n as f64;
    12.0 * n + 4.0 * n * n.log2()
}

/// Real multiplications of the fast DLCT with `B = 0`:
/// `12N + 6N·log₂N`.
pub fn fast_zero_b_real_mults(n: usize) -> f64 {
    let n = n as f64;
    12.0 * n + 6.0 * n * n.log2()
}

/// Fixed matrix and input used for timing.
pub fn bench_input(n: usize) -> Result<(Signal, LctParams)> {
    let m = LctParams::new(0.6, 0.8, -0.5, 1.0)?;
    let x = Signal::from_fn(n, |k| {
        let t = k as f64 / n as f64;
        Complex64::new((7.0 * t).cos(), (3.0 * t * t).sin())
    })?;
    Ok((x, m))
}

/// Minimum wall time over `reps` runs (at least one).
pub fn time_method(method: Method, x: &Signal, m: &LctParams, reps: usize) -> Result<Duration> {
    let mut best = Duration::MAX;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let y = match method {
            Method::Fast => dlct(x, m)?,
            Method::Direct => direct_dlct(x, m)?,
        };
        let elapsed = start.elapsed();
        std::hint::black_box(y);
        best = best.min(elapsed);
    }
    Ok(best)
}

/// Least-squares slope of `log(y)` against `log(x)`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(LctError::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.len() < 2 || xs.iter().chain(ys).any(|v| v.is_nan() || *v <= 0.0) {
        return Err(LctError::InvalidArgument("need at least two positive points".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LctError::InvalidArgument("x values must not all be equal".into()));
    }
    Ok(sxy / sxx)
}
