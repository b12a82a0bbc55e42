//! Primitive operators: discrete chirp multiplication, the centered DFT pair,
//! and the O(N²) direct-summation DLCT.
//!
//! The centered DFT sums over the symmetric index range. Because
//! `e^{-j2πmn/N}` only depends on `mn mod N`, it equals a standard FFT applied
//! after rotating the input by `⌊N/2⌋` slots, with the output rotated back.
//! No phase ramps are involved, so the two are bit-for-bit the same transform.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::Result;
use crate::params::{ChirpRate, LctParams};
use crate::signal::{centered_range, centered_start, Signal};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Phase `π·ξ·n²/N` of the chirp `e^{jπξn²/N}`.
#[inline]
pub fn chirp_phase(xi: f64, n: i64, len: usize) -> f64 {
    PI * xi * (n * n) as f64 / len as f64
}

/// In-place `buf[n] *= e^{jπξn²/N}` over centered indices.
pub(crate) fn apply_chirp(buf: &mut [Complex64], xi: f64) {
    if xi == 0.0 {
        return;
    }
    let len = buf.len();
    for (z, n) in buf.iter_mut().zip(centered_range(len)) {
        *z *= Complex64::cis(chirp_phase(xi, n, len));
    }
}

fn fft_rotated(buf: &mut [Complex64], inverse: bool) {
    let len = buf.len();
    let h = (-centered_start(len)) as usize;
    buf.rotate_left(h);
    let fft = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    });
    fft.process(buf);
    buf.rotate_right(h);
}

/// Unnormalised centered DFT, in place.
pub(crate) fn dft_in_place(buf: &mut [Complex64]) {
    fft_rotated(buf, false);
}

/// Centered IDFT with the `1/N` factor, in place.
pub(crate) fn idft_in_place(buf: &mut [Complex64]) {
    fft_rotated(buf, true);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
}

/// Unitary centered DFT (`1/√N`), in place.
pub(crate) fn unitary_dft_in_place(buf: &mut [Complex64]) {
    fft_rotated(buf, false);
    let scale = 1.0 / (buf.len() as f64).sqrt();
    buf.iter_mut().for_each(|z| *z *= scale);
}

/// Unitary centered IDFT (`1/√N`), in place.
pub(crate) fn unitary_idft_in_place(buf: &mut [Complex64]) {
    fft_rotated(buf, true);
    let scale = 1.0 / (buf.len() as f64).sqrt();
    buf.iter_mut().for_each(|z| *z *= scale);
}

/// Discrete chirp multiplication `C_ξ`.
pub fn chirp_mul(x: &Signal, xi: ChirpRate) -> Signal {
    let mut buf = x.samples().to_vec();
    apply_chirp(&mut buf, xi.value());
    x.replaced(buf)
}

/// `X[m] = Σ_n x[n] e^{-j2πmn/N}` with `n, m` over the centered range.
pub fn centered_dft(x: &Signal) -> Signal {
    let mut buf = x.samples().to_vec();
    dft_in_place(&mut buf);
    x.replaced(buf)
}

/// `x[k] = (1/N) Σ_m X[m] e^{+j2πmk/N}` with `m, k` over the centered range.
pub fn centered_idft(x: &Signal) -> Signal {
    let mut buf = x.samples().to_vec();
    idft_in_place(&mut buf);
    x.replaced(buf)
}

/// Principal square root of `1/(j·v)`.
pub(crate) fn sqrt_inv_j(v: f64) -> Complex64 {
    Complex64::new(0.0, v).inv().sqrt()
}

/// DLCT by direct summation of the discrete kernel:
///
/// `X[k] = √(1/(jBN)) Σ_n e^{j(2π/N)(D k²/(2B) − k n/B + A n²/(2B))} x[n]`.
///
/// O(N²). Not reversible in general; this is the reference and the
/// complexity baseline, not the transform to use.
pub fn direct_dlct(x: &Signal, m: &LctParams) -> Result<Signal> {
    m.require_nonzero_b()?;
    let len = x.len();
    let nf = len as f64;
    let (a, b, d) = (m.a(), m.b(), m.d());
    let gain = sqrt_inv_j(b * nf);
    let w = 2.0 * PI / nf;
    let out = centered_range(len)
        .map(|k| {
            let kf = k as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for (xn, n) in x.samples().iter().zip(centered_range(len)) {
                let nf = n as f64;
                let phase = w * (d / (2.0 * b) * kf * kf - kf * nf / b + a / (2.0 * b) * nf * nf);
                acc += Complex64::cis(phase) * xn;
            }
            gain * acc
        })
        .collect();
    Ok(x.replaced(out))
}
