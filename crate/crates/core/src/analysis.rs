//! Reference values, error metrics, test signals and the randomized
//! experiment protocols (accuracy, additivity, reversibility).
//!
//! Every protocol run is a list of independent records. Record `i` draws its
//! random matrices from a ChaCha stream selected by `(seed, i)`, so the report
//! is identical no matter how many worker threads computed it.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LctError, Result};
use crate::params::LctParams;
use crate::signal::Signal;
use crate::transform::{dlct, idlct};

/// Continuous LCT of `g_s(t) = e^{-2πst²}` evaluated at `u` (`b ≠ 0`):
///
/// `√(1/(a + j2bs)) · exp( (ad − 1 + j2sbd) / (2πsb² − jπab) · π²u² )`
/// with the principal square root.
pub fn gaussian_lct(s: f64, m: &LctParams, u: f64) -> Result<Complex64> {
    m.require_nonzero_b()?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(LctError::InvalidArgument(format!("Gaussian width must be positive, got {s}")));
    }
    let (a, b, d) = (m.a(), m.b(), m.d());
    let amp = Complex64::new(a, 2.0 * b * s).inv().sqrt();
    let num = Complex64::new(a * d - 1.0, 2.0 * s * b * d);
    let den = Complex64::new(2.0 * PI * s * b * b, -PI * a * b);
    Ok(amp * (num / den * (PI * PI * u * u)).exp())
}

/// [`gaussian_lct`] at `u = k·delta`.
pub fn gaussian_lct_closed_form(s: f64, m: &LctParams, k: i64, delta: f64) -> Result<Complex64> {
    gaussian_lct(s, m, k as f64 * delta)
}

/// Normalised mean-square error `Σ|ref − est|² / Σ|ref|²`.
pub fn nmse(reference: &Signal, estimate: &Signal) -> Result<f64> {
    nmse_slices(reference.samples(), estimate.samples())
}

pub fn nmse_slices(reference: &[Complex64], estimate: &[Complex64]) -> Result<f64> {
    if reference.len() != estimate.len() {
        return Err(LctError::LengthMismatch { left: reference.len(), right: estimate.len() });
    }
    let den: f64 = reference.iter().map(|z| z.norm_sqr()).sum();
    if den == 0.0 {
        return Err(LctError::ZeroReference);
    }
    let num: f64 = reference.iter().zip(estimate).map(|(r, e)| (r - e).norm_sqr()).sum();
    Ok(num / den)
}

/// Seed of the fixed binary sequence `h3`.
pub const H3_SEED: u64 = 0x5EED_0003;

/// The named test inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TestSignal {
    /// `e^{-πn²/N - jπn²/N}`, `N = 128`.
    H1,
    /// `[2cos(2πn/√N) + j·sin(π(n/√N − 1))]·e^{-n²/N}`, `N = 101`.
    H2,
    /// Fixed pseudo-random `{0, 1}` sequence, `N = 280`.
    H3,
    /// Trapezoid, `N = 201`: 81-sample plateau at 1 with 60-sample linear
    /// ramps down to 0 on each side.
    H4,
    /// Sampled Gaussian `g_s[n] = e^{-2πsn²/N}` (period `√(1/N)`).
    Gauss { s: f64, n: usize },
}

impl TestSignal {
    /// Number of samples the signal is generated with.
    pub fn sample_count(&self) -> usize {
        match self {
            TestSignal::H1 => 128,
            TestSignal::H2 => 101,
            TestSignal::H3 => 280,
            TestSignal::H4 => 201,
            TestSignal::Gauss { n, .. } => *n,
        }
    }

    pub fn generate(&self) -> Result<Signal> {
        let len = self.sample_count();
        let nf = len as f64;
        match *self {
            TestSignal::H1 => Signal::from_fn(len, |n| {
                let q = PI * (n * n) as f64 / nf;
                Complex64::new(-q, -q).exp()
            }),
            TestSignal::H2 => Signal::from_fn(len, |n| {
                let t = n as f64 / nf.sqrt();
                let env = (-((n * n) as f64) / nf).exp();
                Complex64::new(2.0 * (2.0 * PI * t).cos(), (PI * (t - 1.0)).sin()) * env
            }),
            TestSignal::H3 => {
                let mut rng = ChaCha8Rng::seed_from_u64(H3_SEED);
                Signal::new(
                    (0..len)
                        .map(|_| Complex64::new((rng.next_u32() & 1) as f64, 0.0))
                        .collect(),
                )
            }
            TestSignal::H4 => Signal::from_fn(len, |n| {
                let k = n.abs();
                let v = if k <= 40 { 1.0 } else { (100 - k) as f64 / 60.0 };
                Complex64::new(v, 0.0)
            }),
            TestSignal::Gauss { s, n } => {
                if n == 0 || !(s > 0.0 && s.is_finite()) {
                    return Err(LctError::UnknownSignal(self.to_string()));
                }
                let nf = n as f64;
                Signal::from_fn(n, |k| Complex64::new((-2.0 * PI * s * (k * k) as f64 / nf).exp(), 0.0))
            }
        }
    }
}

impl fmt::Display for TestSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestSignal::H1 => f.write_str("h1"),
            TestSignal::H2 => f.write_str("h2"),
            TestSignal::H3 => f.write_str("h3"),
            TestSignal::H4 => f.write_str("h4"),
            TestSignal::Gauss { s, n } => write!(f, "gauss:{s}:{n}"),
        }
    }
}

impl FromStr for TestSignal {
    type Err = LctError;

    /// Accepts `h1`..`h4`, `gauss:<s>:<N>` and `gauss(<s>,<N>)`.
    fn from_str(name: &str) -> Result<Self> {
        let unknown = || LctError::UnknownSignal(name.to_string());
        match name.trim().to_ascii_lowercase().as_str() {
            "h1" => Ok(TestSignal::H1),
            "h2" => Ok(TestSignal::H2),
            "h3" => Ok(TestSignal::H3),
            "h4" => Ok(TestSignal::H4),
            other => {
                let body = other
                    .strip_prefix("gauss:")
                    .map(|b| b.replace(':', ","))
                    .or_else(|| other.strip_prefix("gauss(").and_then(|b| b.strip_suffix(')')).map(str::to_string))
                    .ok_or_else(unknown)?;
                let mut parts = body.split(',').map(str::trim);
                let s: f64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(unknown)?;
                let n: usize = parts.next().and_then(|v| v.parse().ok()).ok_or_else(unknown)?;
                if parts.next().is_some() || n == 0 || !(s > 0.0 && s.is_finite()) {
                    return Err(unknown());
                }
                Ok(TestSignal::Gauss { s, n })
            }
        }
    }
}

/// Generates a named test signal.
pub fn make_test_signal(name: &str) -> Result<Signal> {
    name.parse::<TestSignal>()?.generate()
}

/// Draws `a, b, c` uniformly on `(-2, 2)`, rejecting `|a| < 0.05` and
/// `|b| < 0.05`, and sets `d = (1 + bc)/a`.
pub fn random_params_with<R: Rng + ?Sized>(rng: &mut R) -> LctParams {
    let draw = |rng: &mut R| loop {
        let v: f64 = rng.random_range(-2.0..2.0);
        if v > -2.0 {
            return v;
        }
    };
    loop {
        let a = draw(rng);
        let b = draw(rng);
        let c = draw(rng);
        if a.abs() < 0.05 || b.abs() < 0.05 {
            continue;
        }
        let d = (1.0 + b * c) / a;
        if let Ok(m) = LctParams::new(a, b, c, d) {
            return m;
        }
    }
}

/// [`random_params_with`] from a fresh generator seeded with `seed`.
pub fn random_params(seed: u64) -> LctParams {
    random_params_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Draws a matrix whose three CM-CC-CM chirp rates are uniform on
/// `[-limit, limit]` (the middle one kept away from zero).
pub fn random_chirp_limited_with<R: Rng + ?Sized>(rng: &mut R, limit: f64) -> LctParams {
    loop {
        let first = rng.random_range(-limit..=limit);
        let middle = rng.random_range(-limit..=limit);
        let last = rng.random_range(-limit..=limit);
        if middle.abs() < 1e-3 * limit {
            continue;
        }
        if let Ok(m) = LctParams::from_chirp_rates(first, middle, last) {
            return m;
        }
    }
}

fn chirp_rates_within(m: &LctParams, limit: f64) -> bool {
    match m.chirp_rates() {
        Ok((x1, x2, x3)) => x1.abs() <= limit && x2.abs() <= limit && x3.abs() <= limit,
        Err(_) => false,
    }
}

/// Draws `(M1, M2)` such that every chirp rate of `M1`, `M2` and `M1·M2` lies
/// in `[-limit, limit]`, by rejection.
pub fn random_chirp_limited_pair_with<R: Rng + ?Sized>(rng: &mut R, limit: f64) -> (LctParams, LctParams) {
    loop {
        let m1 = random_chirp_limited_with(rng, limit);
        let m2 = random_chirp_limited_with(rng, limit);
        if chirp_rates_within(&m1.compose(&m2), limit) {
            return (m1, m2);
        }
    }
}

/// NMSE of sampled `dlct(g_s)` against the closed form, both on the grid
/// `Δ = √(1/N)` where the discrete and continuous matrices coincide.
pub fn accuracy_experiment(s: f64, n: usize, m: &LctParams) -> Result<f64> {
    m.require_nonzero_b()?;
    let input = TestSignal::Gauss { s, n }.generate()?;
    let output = dlct(&input, m)?;
    let delta = input.delta();
    let reference = input
        .indices()
        .map(|k| gaussian_lct_closed_form(s, m, k, delta))
        .collect::<Result<Vec<_>>>()?;
    nmse_slices(&reference, output.samples())
}

/// NMSE between `dlct(x, M1·M2)` and `dlct(dlct(x, M2), M1)`, relative to the
/// former.
pub fn additivity_experiment(x: &Signal, m1: &LctParams, m2: &LctParams) -> Result<f64> {
    let composed = dlct(x, &m1.compose(m2))?;
    let cascaded = dlct(&dlct(x, m2)?, m1)?;
    nmse(&composed, &cascaded)
}

/// NMSE between `x` and `idlct(dlct(x, M), M)`.
pub fn reversibility_experiment(x: &Signal, m: &LctParams) -> Result<f64> {
    let back = idlct(&dlct(x, m)?, m)?;
    nmse(x, &back)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Accuracy,
    Additivity,
    Reversibility,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Accuracy => "accuracy",
            Protocol::Additivity => "additivity",
            Protocol::Reversibility => "reversibility",
        })
    }
}

impl FromStr for Protocol {
    type Err = LctError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accuracy" => Ok(Protocol::Accuracy),
            "additivity" => Ok(Protocol::Additivity),
            "reversibility" => Ok(Protocol::Reversibility),
            other => Err(LctError::InvalidArgument(format!("unknown experiment suite: {other}"))),
        }
    }
}

/// One run: the drawn matrix (or pair) and its NMSE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    /// Draw index; the record's position before sorting.
    pub index: usize,
    pub params: LctParams,
    /// `M2` for additivity records; `params` is then `M1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<LctParams>,
    pub nmse: f64,
}

/// Records of one protocol run plus the metadata needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub protocol: Protocol,
    pub signal: String,
    pub n: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chirp_limit: Option<f64>,
    pub records: Vec<ExperimentRecord>,
}

/// Min / median / max NMSE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub runs: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl ExperimentReport {
    /// Sorts records by ascending NMSE (ties keep draw order).
    pub fn sort_by_nmse(&mut self) {
        self.records.sort_by(|x, y| x.nmse.total_cmp(&y.nmse).then(x.index.cmp(&y.index)));
    }

    pub fn nmse_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.nmse).collect()
    }

    /// `None` for an empty report. The median of an even count is the mean
    /// of the two middle values.
    pub fn summary(&self) -> Option<Summary> {
        let mut v = self.nmse_values();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        Some(Summary { runs: v.len(), min: v[0], median: median_sorted(&v), max: v[v.len() - 1] })
    }
}

pub(crate) fn median_sorted(v: &[f64]) -> f64 {
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// Settings for a protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub protocol: Protocol,
    pub signal: TestSignal,
    pub runs: usize,
    pub seed: u64,
    /// Use the chirp-rate-limited draw instead of the `(-2, 2)` entry draw.
    pub chirp_limit: Option<f64>,
}

/// Generator for record `index`: ChaCha stream `index` under `seed`.
pub fn record_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Worker count from `LCT_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("LCT_THREADS").ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

fn run_indexed<T: Send>(runs: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    let job = || (0..runs).into_par_iter().map(&f).collect::<Result<Vec<T>>>();
    match thread_cap() {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| LctError::InvalidArgument(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    }
}

/// Runs a protocol. Records come back in draw order; sort them with
/// [`ExperimentReport::sort_by_nmse`] if needed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if let Some(limit) = cfg.chirp_limit {
        if !(limit > 0.0 && limit.is_finite()) {
            return Err(LctError::InvalidArgument(format!("chirp limit must be positive, got {limit}")));
        }
    }
    let input = cfg.signal.generate()?;
    let draw = |rng: &mut ChaCha8Rng| match cfg.chirp_limit {
        Some(limit) => random_chirp_limited_with(rng, limit),
        None => random_params_with(rng),
    };
    let records = run_indexed(cfg.runs, |index| {
        let mut rng = record_rng(cfg.seed, index);
        match cfg.protocol {
            Protocol::Accuracy => {
                let TestSignal::Gauss { s, n } = cfg.signal else {
                    return Err(LctError::InvalidArgument(
                        "the accuracy suite needs a gauss:<s>:<N> signal".into(),
                    ));
                };
                let params = draw(&mut rng);
                Ok(ExperimentRecord { index, params, second: None, nmse: accuracy_experiment(s, n, &params)? })
            }
            Protocol::Additivity => {
                let (m1, m2) = match cfg.chirp_limit {
                    Some(limit) => random_chirp_limited_pair_with(&mut rng, limit),
                    None => (random_params_with(&mut rng), random_params_with(&mut rng)),
                };
                Ok(ExperimentRecord {
                    index,
                    params: m1,
                    second: Some(m2),
                    nmse: additivity_experiment(&input, &m1, &m2)?,
                })
            }
            Protocol::Reversibility => {
                let params = draw(&mut rng);
                Ok(ExperimentRecord { index, params, second: None, nmse: reversibility_experiment(&input, &params)? })
            }
        }
    })?;
    Ok(ExperimentReport {
        protocol: cfg.protocol,
        signal: cfg.signal.to_string(),
        n: input.len(),
        seed: cfg.seed,
        chirp_limit: cfg.chirp_limit,
        records,
    })
}
