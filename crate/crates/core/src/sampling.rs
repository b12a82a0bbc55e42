//! Sampling period and sample-count bounds for approximating the continuous
//! LCT with the DLCT.
//!
//! Each stage of the CM-CC-CM decomposition shears the input's time-frequency
//! support. For an input of duration `T` and bandwidth `F`:
//!
//! * the first chirp multiplication widens the bandwidth to `|a-1|/|b|·T + F`,
//! * the chirp convolution stretches the duration to `|a|T + |b|F`,
//! * the last chirp multiplication sets the output bandwidth to `|c|T + |d|F`.
//!
//! The sampling rate `1/Δ` must cover the first bandwidth (and the output and
//! input bandwidths too, if both ends must be reconstructible), and `NΔ` must
//! cover both durations.
//!
//! When the support is a tilted parallelogram, it is first mapped to an
//! axis-aligned rectangle by an LCT `M0 = (1, b0; c0, b0c0 + 1)`, and the same
//! bounds are evaluated for `M·M0` on the rectangle.

use serde::{Deserialize, Serialize};

use crate::error::{LctError, Result};
use crate::params::LctParams;

/// Duration `T` and bandwidth `F` of the input's time-frequency support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeFreqBox {
    duration: f64,
    bandwidth: f64,
}

impl TimeFreqBox {
    pub fn new(duration: f64, bandwidth: f64) -> Result<Self> {
        if !(duration > 0.0 && duration.is_finite() && bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(LctError::InvalidArgument(format!(
                "duration and bandwidth must be positive, got T = {duration}, F = {bandwidth}"
            )));
        }
        Ok(TimeFreqBox { duration, bandwidth })
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }
}

/// Two vertices of the support parallelogram: `p1` is the rightmost vertex
/// and `p2` the vertex reached from it along the lower-left edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramSpec {
    pub p1: (f64, f64),
    pub p2: (f64, f64),
}

/// Rectangle obtained from a parallelogram, plus the shear that produces it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParallelogram {
    pub t0: f64,
    pub f0: f64,
    pub b0: f64,
    pub c0: f64,
}

impl ReducedParallelogram {
    /// `M0 = (1, b0; c0, b0·c0 + 1)`.
    pub fn m0(&self) -> LctParams {
        LctParams::new(1.0, self.b0, self.c0, self.b0 * self.c0 + 1.0)
            .expect("M0 has unit determinant by construction")
    }

    /// Bounding box of the original parallelogram:
    /// `T = T0 + |b0|F0`, `F = |c0|T0 + |b0c0 + 1|F0`.
    pub fn bounding_box(&self) -> Result<TimeFreqBox> {
        TimeFreqBox::new(
            self.t0 + self.b0.abs() * self.f0,
            self.c0.abs() * self.t0 + (self.b0 * self.c0 + 1.0).abs() * self.f0,
        )
    }
}

/// Maps a parallelogram to its rectangle `(T0, F0)` and shear `(b0, c0)`.
pub fn parallelogram_reduce(spec: &ParallelogramSpec) -> Result<ReducedParallelogram> {
    let (t1, f1) = spec.p1;
    let (t2, f2) = spec.p2;
    if ![t1, f1, t2, f2].iter().all(|v| v.is_finite()) {
        return Err(LctError::NonFinite { what: "parallelogram vertices" });
    }
    let t0 = t1 - t2;
    if t0 <= 0.0 {
        return Err(LctError::DegenerateParallelogram { t0, f0: f64::NAN });
    }
    let c0 = (f1 - f2) / t0;
    let f0 = f1 + f2 - c0 * (t1 + t2);
    if f0 <= 0.0 {
        return Err(LctError::DegenerateParallelogram { t0, f0 });
    }
    let b0 = (t1 + t2) / f0;
    Ok(ReducedParallelogram { t0, f0, b0, c0 })
}

pub fn box_from_parallelogram(spec: &ParallelogramSpec) -> Result<TimeFreqBox> {
    parallelogram_reduce(spec)?.bounding_box()
}

/// Bandwidth after the first chirp multiplication: `|a-1|/|b|·T + F`.
fn sheared_bandwidth(m: &LctParams, t: f64, f: f64) -> Result<f64> {
    m.require_nonzero_b()?;
    Ok((m.a() - 1.0).abs() / m.b().abs() * t + f)
}

/// Output bandwidth `|c|T + |d|F`.
fn output_bandwidth(m: &LctParams, t: f64, f: f64) -> f64 {
    m.c().abs() * t + m.d().abs() * f
}

/// Duration after the chirp convolution: `|a|T + |b|F`.
fn sheared_duration(m: &LctParams, t: f64, f: f64) -> f64 {
    m.a().abs() * t + m.b().abs() * f
}

/// Lower bound on `1/Δ` so the chirp-multiplied input is not aliased.
pub fn min_rate_basic(bx: &TimeFreqBox, m: &LctParams) -> Result<f64> {
    sheared_bandwidth(m, bx.duration, bx.bandwidth)
}

/// Lower bound on `1/Δ` when the continuous input and output must also be
/// recoverable from their samples.
pub fn min_rate_recoverable(bx: &TimeFreqBox, m: &LctParams) -> Result<f64> {
    let basic = sheared_bandwidth(m, bx.duration, bx.bandwidth)?;
    Ok(basic.max(output_bandwidth(m, bx.duration, bx.bandwidth)))
}

/// Rounds up, ignoring excess below one part in 1e12 so that bounds such as
/// `12 · 8` computed through `1/(1/12)` do not jump to the next integer.
fn ceil_count(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-12 * x.abs().max(1.0) {
        r.max(1.0) as usize
    } else {
        x.ceil().max(1.0) as usize
    }
}

/// Smallest `N` with `NΔ ≥ max{T, |a|T + |b|F}`.
pub fn min_samples(delta: f64, bx: &TimeFreqBox, m: &LctParams) -> Result<usize> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(LctError::InvalidArgument(format!("sampling period must be positive, got {delta}")));
    }
    let span = bx.duration.max(sheared_duration(m, bx.duration, bx.bandwidth));
    Ok(ceil_count(span / delta))
}

/// Result of sampling planning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Largest admissible sampling period.
    pub delta_max: f64,
    /// Smallest admissible number of samples at `delta_max`.
    pub n_min: usize,
    /// Matrix to pass to the DLCT for `(n_min, delta_max)`.
    pub discrete_params: LctParams,
    /// True when `delta_max` is finer than `1/F`, i.e. the input sampled at
    /// its own Nyquist rate would need oversampling.
    pub oversampling_required: bool,
}

/// Bandwidths reached inside the transform: after the first chirp
/// multiplication and at the output.
struct Stages {
    first: f64,
    output: f64,
    span: f64,
}

fn stages(m: &LctParams, t: f64, f: f64, duration: f64) -> Result<Stages> {
    Ok(Stages {
        first: sheared_bandwidth(m, t, f)?,
        output: output_bandwidth(m, t, f),
        span: duration.max(sheared_duration(m, t, f)),
    })
}

fn finish_plan(s: &Stages, input_bandwidth: f64, recoverable: bool, m: &LctParams) -> Result<SamplingPlan> {
    let rate = if recoverable { s.first.max(s.output).max(input_bandwidth) } else { s.first };
    let delta_max = 1.0 / rate;
    let n_min = ceil_count(rate * s.span);
    Ok(SamplingPlan {
        delta_max,
        n_min,
        discrete_params: m.to_discrete(n_min, delta_max)?,
        oversampling_required: s.first > input_bandwidth || s.output > input_bandwidth,
    })
}

/// Plan for an input with rectangular support.
pub fn plan_box(bx: &TimeFreqBox, m: &LctParams, recoverable: bool) -> Result<SamplingPlan> {
    let s = stages(m, bx.duration, bx.bandwidth, bx.duration)?;
    finish_plan(&s, bx.bandwidth, recoverable, m)
}

/// Plan for an input whose support is a parallelogram. Bounds are evaluated
/// on the rectangle `(T0, F0)` with `M1 = M·M0`; `F` and `T` are the
/// bounding-box bandwidth and duration of the parallelogram.
pub fn plan_refined(spec: &ParallelogramSpec, m: &LctParams, recoverable: bool) -> Result<SamplingPlan> {
    let reduced = parallelogram_reduce(spec)?;
    let bx = reduced.bounding_box()?;
    let m1 = m.compose(&reduced.m0());
    let s = stages(&m1, reduced.t0, reduced.f0, bx.duration)?;
    finish_plan(&s, bx.bandwidth, recoverable, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(t: f64, f: f64) -> TimeFreqBox {
        TimeFreqBox::new(t, f).unwrap()
    }

    #[test]
    fn basic_rate_examples() {
        let m = LctParams::new(1.0, 2.0, 0.5, 2.0).unwrap();
        assert_eq!(min_rate_basic(&bx(8.0, 4.0), &m).unwrap(), 4.0);
        assert_eq!(min_rate_basic(&bx(8.0, 4.0), &LctParams::FOURIER).unwrap(), 12.0);
        assert!(matches!(
            min_rate_basic(&bx(1.0, 1.0), &LctParams::IDENTITY),
            Err(LctError::ZeroB { .. })
        ));
    }

    #[test]
    fn recoverable_rate_examples() {
        assert_eq!(min_rate_recoverable(&bx(8.0, 4.0), &LctParams::FOURIER).unwrap(), 12.0);
        assert_eq!(min_rate_recoverable(&bx(8.0, 4.0), &LctParams::shear(0.3)).unwrap(), 4.0);
    }

    #[test]
    fn sample_count_examples() {
        assert_eq!(min_samples(1.0 / 12.0, &bx(8.0, 4.0), &LctParams::FOURIER).unwrap(), 96);
        // 1/Δ doubled → bound doubled
        assert_eq!(min_samples(1.0 / 24.0, &bx(8.0, 4.0), &LctParams::FOURIER).unwrap(), 192);
        let tiny_b = LctParams::new(1.0, 1e-9, 0.0, 1.0).unwrap();
        // excess well above round-off still rounds up
        assert_eq!(min_samples(0.5, &bx(8.0, 4.0), &tiny_b).unwrap(), 17);
    }

    #[test]
    fn reduce_rectangle() {
        let r = parallelogram_reduce(&ParallelogramSpec { p1: (2.0, 1.0), p2: (-2.0, 1.0) }).unwrap();
        assert_eq!(r, ReducedParallelogram { t0: 4.0, f0: 2.0, b0: 0.0, c0: 0.0 });
        let b = r.bounding_box().unwrap();
        assert_eq!((b.duration(), b.bandwidth()), (4.0, 2.0));
    }

    #[test]
    fn reduce_degenerate() {
        let e = parallelogram_reduce(&ParallelogramSpec { p1: (3.0, 2.0), p2: (1.0, 0.0) }).unwrap_err();
        assert_eq!(e, LctError::DegenerateParallelogram { t0: 2.0, f0: -2.0 });
        assert!(parallelogram_reduce(&ParallelogramSpec { p1: (1.0, 2.0), p2: (1.0, 0.0) }).is_err());
    }

    #[test]
    fn sheared_box() {
        // c0 = 0.5, b0 = 0, T0 = 4, F0 = 2
        let spec = ParallelogramSpec { p1: (2.0, 2.0), p2: (-2.0, 0.0) };
        let r = parallelogram_reduce(&spec).unwrap();
        assert_eq!(r, ReducedParallelogram { t0: 4.0, f0: 2.0, b0: 0.0, c0: 0.5 });
        let b = box_from_parallelogram(&spec).unwrap();
        assert_eq!((b.duration(), b.bandwidth()), (4.0, 4.0));
    }

    #[test]
    fn box_plan_fourier() {
        let p = plan_box(&bx(8.0, 4.0), &LctParams::FOURIER, true).unwrap();
        assert!((p.delta_max - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(p.n_min, 96);
        assert!(p.oversampling_required);
        assert!((p.discrete_params.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_a_needs_no_oversampling() {
        let p = plan_box(&bx(8.0, 4.0), &LctParams::shear(0.5), true).unwrap();
        assert!(!p.oversampling_required);
        assert_eq!(p.delta_max, 0.25);
    }

    #[test]
    fn rectangle_refined_matches_box() {
        let spec = ParallelogramSpec { p1: (4.0, 2.0), p2: (-4.0, 2.0) };
        for m in [LctParams::FOURIER, LctParams::new(0.6, 0.8, -0.5, 1.0).unwrap(), LctParams::shear(-1.5)] {
            for recoverable in [false, true] {
                assert_eq!(
                    plan_refined(&spec, &m, recoverable).unwrap(),
                    plan_box(&bx(8.0, 4.0), &m, recoverable).unwrap()
                );
            }
        }
    }

    #[test]
    fn sheared_support_plan() {
        // M1 = (0,1;-1,0)(1,0;0.5,1) = (0.5,1;-1,0) on T0 = 4, F0 = 2
        let spec = ParallelogramSpec { p1: (2.0, 2.0), p2: (-2.0, 0.0) };
        let refined = plan_refined(&spec, &LctParams::FOURIER, false).unwrap();
        assert_eq!(refined.delta_max, 0.25);
        assert_eq!(refined.n_min, 16);
        assert!(!refined.oversampling_required);
        let coarse = plan_box(&box_from_parallelogram(&spec).unwrap(), &LctParams::FOURIER, false).unwrap();
        assert_eq!(coarse.delta_max, 0.125);
        assert_eq!(coarse.n_min, 32);
        let strict = plan_refined(&spec, &LctParams::FOURIER, true).unwrap();
        assert!(strict.delta_max <= refined.delta_max);
    }
}
