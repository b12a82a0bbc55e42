//! Literal-loop reference implementations shared by the integration tests.
//! Nothing here calls into the crate's transform code; inputs and outputs are
//! plain vectors in ascending centered-index order.
#![allow(dead_code)]

use std::f64::consts::PI;

use dlct::{LctParams, Signal};
use num_complex::Complex64;

pub type C = Complex64;

/// Lowest centered index, `⌈-N/2⌉`.
pub fn lo(len: usize) -> i64 {
    (-(len as f64) / 2.0).ceil() as i64
}

pub fn indices(len: usize) -> Vec<i64> {
    (0..len as i64).map(|i| lo(len) + i).collect()
}

/// Same expression as the library's chirp phase, so rounding agrees bit-for-bit.
pub fn chirp(x: &[C], xi: f64) -> Vec<C> {
    let len = x.len();
    x.iter()
        .zip(indices(len))
        .map(|(z, n)| z * C::cis(PI * xi * (n * n) as f64 / len as f64))
        .collect()
}

/// `Σ_n x[n] e^{-j2πmn/N}`.
pub fn dft_sum(x: &[C]) -> Vec<C> {
    let len = x.len();
    let idx = indices(len);
    idx.iter()
        .map(|&m| {
            idx.iter()
                .zip(x)
                .map(|(&n, z)| z * C::cis(-2.0 * PI * (m * n) as f64 / len as f64))
                .sum()
        })
        .collect()
}

/// `(1/N) Σ_m X[m] e^{+j2πmk/N}`.
pub fn idft_sum(x: &[C]) -> Vec<C> {
    let len = x.len();
    let idx = indices(len);
    idx.iter()
        .map(|&k| {
            let s: C = idx
                .iter()
                .zip(x)
                .map(|(&m, z)| z * C::cis(2.0 * PI * (m * k) as f64 / len as f64))
                .sum();
            s / len as f64
        })
        .collect()
}

pub fn udft(x: &[C]) -> Vec<C> {
    let s = 1.0 / (x.len() as f64).sqrt();
    dft_sum(x).into_iter().map(|z| z * s).collect()
}

pub fn uidft(x: &[C]) -> Vec<C> {
    let s = (x.len() as f64).sqrt();
    idft_sum(x).into_iter().map(|z| z * s).collect()
}

pub fn times(x: &[C], k: C) -> Vec<C> {
    x.iter().map(|z| z * k).collect()
}

/// The three CM / CC / CM steps written out as sums (`B ≠ 0`).
pub fn three_step(x: &[C], m: &LctParams) -> Vec<C> {
    let (a, b, d) = (m.a(), m.b(), m.d());
    let len = x.len();
    let idx = indices(len);
    let x1 = chirp(x, (a - 1.0) / b);
    let x2: Vec<C> = idx
        .iter()
        .map(|&k| {
            let outer: C = idx
                .iter()
                .map(|&mm| {
                    let inner: C = idx
                        .iter()
                        .zip(&x1)
                        .map(|(&n, z)| z * C::cis(-2.0 * PI * (mm * n) as f64 / len as f64))
                        .sum();
                    inner
                        * C::cis(PI * -b * (mm * mm) as f64 / len as f64)
                        * C::cis(2.0 * PI * (mm * k) as f64 / len as f64)
                })
                .sum();
            outer / len as f64
        })
        .collect();
    chirp(&x2, (d - 1.0) / b)
}

/// The `B = 0` factor sequences, applied right to left.
pub fn zero_b(x: &[C], m: &LctParams) -> Vec<C> {
    let (a, c, d) = (m.a(), m.c(), m.d());
    if a.abs() > d.abs() {
        let y = chirp(x, (c + 1.0) / d);
        let y = udft(&y);
        let y = chirp(&y, d);
        let y = uidft(&y);
        let y = chirp(&y, 1.0 / d);
        let y = udft(&y);
        times(&y, C::cis(-PI / 4.0))
    } else if a.abs() < d.abs() {
        let y = uidft(x);
        let y = chirp(&y, -1.0 / a);
        let y = udft(&y);
        let y = chirp(&y, -a);
        let y = uidft(&y);
        let y = chirp(&y, (c - 1.0) / a);
        times(&y, C::cis(PI / 4.0))
    } else if a > 0.0 {
        chirp(x, c)
    } else {
        let len = x.len();
        let l = lo(len);
        let rev: Vec<C> = indices(len)
            .iter()
            .map(|&k| x[((-k - l).rem_euclid(len as i64)) as usize])
            .collect();
        chirp(&rev, -c)
    }
}

pub fn dlct_oracle(x: &[C], m: &LctParams) -> Vec<C> {
    if m.b().abs() < 1e-12 * m.a().abs().max(m.d().abs()).max(1.0) {
        zero_b(x, m)
    } else {
        three_step(x, m)
    }
}

/// Direct kernel sum with the principal `√(1/(jBN))`.
pub fn kernel_sum(x: &[C], m: &LctParams) -> Vec<C> {
    let (a, b, d) = (m.a(), m.b(), m.d());
    let len = x.len();
    let nf = len as f64;
    let gain = C::new(0.0, b * nf).inv().sqrt();
    let idx = indices(len);
    idx.iter()
        .map(|&k| {
            let kf = k as f64;
            let s: C = idx
                .iter()
                .zip(x)
                .map(|(&n, z)| {
                    let t = n as f64;
                    z * C::cis(2.0 * PI / nf * (d * kf * kf / (2.0 * b) - kf * t / b + a * t * t / (2.0 * b)))
                })
                .sum();
            gain * s
        })
        .collect()
}

pub fn rel_l2(estimate: &[C], reference: &[C]) -> f64 {
    assert_eq!(estimate.len(), reference.len());
    let num: f64 = estimate.iter().zip(reference).map(|(e, r)| (e - r).norm_sqr()).sum();
    let den: f64 = reference.iter().map(|r| r.norm_sqr()).sum();
    (num / den).sqrt()
}

pub fn nmse_vec(reference: &[C], estimate: &[C]) -> f64 {
    rel_l2(estimate, reference).powi(2)
}

/// Deterministic pseudo-random test vector.
pub fn test_vector(len: usize, salt: u64) -> Vec<C> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE ^ salt.wrapping_mul(0x9E37_79B9));
    (0..len)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn signal(v: Vec<C>) -> Signal {
    Signal::new(v).expect("non-empty finite samples")
}
