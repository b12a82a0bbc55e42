//! The fast DLCT.
//!
//! For `B ≠ 0` the matrix factors into chirp multiplication, chirp
//! convolution, chirp multiplication:
//!
//! ```text
//! (A, B; C, D) = (1, 0; (D-1)/B, 1) · (1, B; 0, 1) · (1, 0; (A-1)/B, 1)
//! ```
//!
//! and the chirp convolution is an IDFT / chirp / DFT sandwich, giving
//! `X = C_{(D-1)/B} F† C_{-B} F C_{(A-1)/B} x`. Each factor is inverted exactly
//! by the matching factor of `M⁻¹`, so `idlct(dlct(x))` reproduces `x` to
//! round-off.
//!
//! For `B = 0` there are two factorisations with three Fourier steps. The
//! forward and inverse transforms must use different ones for the inner
//! factors to cancel, so the form is chosen by comparing `|A|` with `|D|`;
//! `M` and `M⁻¹` swap those entries and therefore always take opposite forms.

use std::f64::consts::FRAC_PI_4;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::kernels::{
    apply_chirp, dft_in_place, idft_in_place, unitary_dft_in_place, unitary_idft_in_place,
};
use crate::params::LctParams;
use crate::signal::{centered_range, slot_of, Signal};

/// Which factorisation `dlct` uses for a parameter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `B ≠ 0`: CM, DFT, CM, IDFT, CM.
    ChirpConvolution,
    /// `B = 0`, `|A| > |D|`: `√(-j) F C_{1/D} F† C_D F C_{(C+1)/D}`.
    ZeroBForward,
    /// `B = 0`, `|A| < |D|`: `√j C_{(C-1)/A} F† C_{-A} F C_{-1/A} F†`.
    ZeroBBackward,
    /// `B = 0`, `A = D = 1`: a single chirp multiplication `C_C`.
    ChirpOnly,
    /// `B = 0`, `A = D = -1`: index reversal followed by `C_{-C}`.
    Reversal,
}

impl Branch {
    pub fn select(m: &LctParams) -> Branch {
        if !m.is_b_zero() {
            return Branch::ChirpConvolution;
        }
        let (a, d) = (m.a().abs(), m.d().abs());
        if a > d {
            Branch::ZeroBForward
        } else if a < d {
            Branch::ZeroBBackward
        } else if m.a() > 0.0 {
            Branch::ChirpOnly
        } else {
            Branch::Reversal
        }
    }
}

/// Forward DLCT with discrete parameter matrix `m`. Length and period are
/// preserved and the operator is unitary.
pub fn dlct(x: &Signal, m: &LctParams) -> Result<Signal> {
    let mut buf = x.samples().to_vec();
    apply_dlct(&mut buf, m);
    Ok(x.replaced(buf))
}

/// Inverse DLCT: the forward DLCT with `M⁻¹`.
pub fn idlct(x: &Signal, m: &LctParams) -> Result<Signal> {
    dlct(x, &m.inverse())
}

pub(crate) fn apply_dlct(buf: &mut [Complex64], m: &LctParams) {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    match Branch::select(m) {
        Branch::ChirpConvolution => {
            if m.is_b_near_zero() {
                log::warn!("b = {b:e} is close to zero; chirp rates are ill-conditioned");
            }
            apply_chirp(buf, (a - 1.0) / b);
            dft_in_place(buf);
            apply_chirp(buf, -b);
            idft_in_place(buf);
            apply_chirp(buf, (d - 1.0) / b);
        }
        Branch::ZeroBForward => {
            apply_chirp(buf, (c + 1.0) / d);
            unitary_dft_in_place(buf);
            apply_chirp(buf, d);
            unitary_idft_in_place(buf);
            apply_chirp(buf, 1.0 / d);
            unitary_dft_in_place(buf);
            scale(buf, Complex64::cis(-FRAC_PI_4));
        }
        Branch::ZeroBBackward => {
            unitary_idft_in_place(buf);
            apply_chirp(buf, -1.0 / a);
            unitary_dft_in_place(buf);
            apply_chirp(buf, -a);
            unitary_idft_in_place(buf);
            apply_chirp(buf, (c - 1.0) / a);
            scale(buf, Complex64::cis(FRAC_PI_4));
        }
        Branch::ChirpOnly => apply_chirp(buf, c),
        Branch::Reversal => {
            reverse_indices(buf);
            apply_chirp(buf, -c);
        }
    }
}

fn scale(buf: &mut [Complex64], k: Complex64) {
    buf.iter_mut().for_each(|z| *z *= k);
}

/// `buf[k] ← buf[-k]` with `-k` taken modulo `N` (for even `N`, `-N/2` maps to itself).
fn reverse_indices(buf: &mut [Complex64]) {
    let len = buf.len();
    let src = buf.to_vec();
    for k in centered_range(len) {
        buf[slot_of(k, len)] = src[slot_of(-k, len)];
    }
}

/// Reduces an angle to `(-π, π]`.
fn reduce_angle(alpha: f64) -> f64 {
    let r = alpha.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Discrete fractional Fourier transform of angle `alpha` (radians):
/// `e^{jα/2} · dlct(x, (cos α, sin α; -sin α, cos α))`.
///
/// The angle is reduced to `(-π, π]` first, so the result is 2π-periodic in
/// `alpha`. Multiples of 2π give the identity and odd multiples of π give the
/// index reversal `x[-k]`.
pub fn dfrft(x: &Signal, alpha: f64) -> Result<Signal> {
    if !alpha.is_finite() {
        return Err(crate::error::LctError::NonFinite { what: "fractional angle" });
    }
    let alpha = reduce_angle(alpha);
    let m = LctParams::rotation(alpha);
    let mut buf = x.samples().to_vec();
    if m.is_b_zero() {
        if m.a() < 0.0 {
            reverse_indices(&mut buf);
        }
        return Ok(x.replaced(buf));
    }
    apply_dlct(&mut buf, &m);
    scale(&mut buf, Complex64::cis(alpha / 2.0));
    Ok(x.replaced(buf))
}

/// Discrete Fresnel transform, wavelength `lambda` and distance `z`:
/// `e^{jπz/λ} F† C_{-λz} F x`.
pub fn dfresnel(x: &Signal, lambda: f64, z: f64) -> Result<Signal> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(crate::error::LctError::InvalidArgument(format!(
            "wavelength must be positive, got {lambda}"
        )));
    }
    if !z.is_finite() {
        return Err(crate::error::LctError::NonFinite { what: "propagation distance" });
    }
    let mut buf = x.samples().to_vec();
    dft_in_place(&mut buf);
    apply_chirp(&mut buf, -lambda * z);
    idft_in_place(&mut buf);
    scale(&mut buf, Complex64::cis(PI * z / lambda));
    Ok(x.replaced(buf))
}

/// Discrete scaling by `sigma`, i.e. the DLCT with `(σ, 0; 0, 1/σ)`.
pub fn dscale(x: &Signal, sigma: f64) -> Result<Signal> {
    dlct(x, &LctParams::scaling(sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::centered_dft;

    fn nmse(reference: &Signal, est: &Signal) -> f64 {
        let num: f64 = reference
            .samples()
            .iter()
            .zip(est.samples())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum();
        num / reference.energy()
    }

    fn sig(len: usize) -> Signal {
        Signal::from_fn(len, |n| {
            let t = n as f64;
            Complex64::new((0.37 * t).cos() + 0.2, (0.11 * t * t).sin())
        })
        .unwrap()
    }

    #[test]
    fn branch_dispatch() {
        let fwd = LctParams::new(2.0, 0.0, 1.0, 0.5).unwrap();
        assert_eq!(Branch::select(&fwd), Branch::ZeroBForward);
        assert_eq!(Branch::select(&fwd.inverse()), Branch::ZeroBBackward);
        assert_eq!(Branch::select(&LctParams::chirp(0.4)), Branch::ChirpOnly);
        assert_eq!(
            Branch::select(&LctParams::new(-1.0, 0.0, 0.3, -1.0).unwrap()),
            Branch::Reversal
        );
        assert_eq!(Branch::select(&LctParams::FOURIER), Branch::ChirpConvolution);
    }

    #[test]
    fn shear_has_no_outer_chirps() {
        let x = sig(16);
        let m = LctParams::shear(0.7);
        let y = dlct(&x, &m).unwrap();
        let mut buf = x.samples().to_vec();
        dft_in_place(&mut buf);
        apply_chirp(&mut buf, -0.7);
        idft_in_place(&mut buf);
        assert!(nmse(&x.replaced(buf), &y) < 1e-28);
    }

    #[test]
    fn zero_b_worked_pair() {
        let x = sig(33);
        let m = LctParams::new(2.0, 0.0, 1.0, 0.5).unwrap();
        let back = idlct(&dlct(&x, &m).unwrap(), &m).unwrap();
        assert!(nmse(&x, &back) < 1e-25);
    }

    #[test]
    fn reversal_branch_is_reversible() {
        for len in [8usize, 9] {
            let x = sig(len);
            let m = LctParams::new(-1.0, 0.0, 0.8, -1.0).unwrap();
            let y = dlct(&x, &m).unwrap();
            assert!((y.norm() - x.norm()).abs() < 1e-12);
            let back = idlct(&y, &m).unwrap();
            assert!(nmse(&x, &back) < 1e-28);
        }
    }

    #[test]
    fn dfrft_identity_and_reversal() {
        let x = sig(10);
        assert_eq!(dfrft(&x, 0.0).unwrap(), x);
        let y = dfrft(&x, 2.0 * PI).unwrap();
        assert!(nmse(&x, &y) < 1e-30);
        let r = dfrft(&x, PI).unwrap();
        for k in x.indices() {
            assert_eq!(r.at(k), x.at(-k));
        }
    }

    #[test]
    fn dfrft_quarter_turn_is_unitary_dft() {
        let len = 64;
        let x = Signal::from_fn(len, |n| Complex64::new((-PI * (n * n) as f64 / len as f64).exp(), 0.0)).unwrap();
        let want = centered_dft(&x).scaled(Complex64::new(1.0 / (len as f64).sqrt(), 0.0));
        let got = dfrft(&x, PI / 2.0).unwrap();
        assert!(nmse(&want, &got) < 1e-10);
    }

    #[test]
    fn dfresnel_zero_distance_and_reverse() {
        let x = sig(16);
        assert!(nmse(&x, &dfresnel(&x, 0.5, 0.0).unwrap()) < 1e-30);
        let y = dfresnel(&dfresnel(&x, 0.5, 1.4).unwrap(), 0.5, -1.4).unwrap();
        assert!(nmse(&x, &y) < 1e-28);
        assert!(dfresnel(&x, 0.0, 1.0).is_err());
    }

    #[test]
    fn dscale_examples() {
        let x = sig(16);
        assert_eq!(dscale(&x, 1.0).unwrap(), x);
        let y = dscale(&dscale(&x, 2.0).unwrap(), 0.5).unwrap();
        assert!(nmse(&x, &y) < 1e-28);
        assert!(dscale(&x, 0.0).is_err());
    }
}
