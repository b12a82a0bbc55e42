//! Parameter-matrix algebra.
//!
//! An LCT is identified by a real 2x2 matrix `(a, b; c, d)` with unit
//! determinant. Cascading transforms multiplies their matrices, and the
//! inverse transform uses the matrix inverse `(d, -b; -c, a)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LctError, Result};

/// Maximum allowed `|ad - bc - 1|`.
pub const DET_TOLERANCE: f64 = 1e-9;

/// Relative threshold below which `b` is treated as exactly zero.
pub const ZERO_B_RELATIVE: f64 = 1e-12;

/// Relative band above the zero threshold in which chirp rates get large
/// enough that a warning is logged.
pub const NEAR_ZERO_B_RELATIVE: f64 = 1e-6;

/// Unit-determinant parameter matrix `(a, b; c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LctParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TryFrom<RawParams> for LctParams {
    type Error = LctError;

    fn try_from(r: RawParams) -> Result<Self> {
        LctParams::new(r.a, r.b, r.c, r.d)
    }
}

impl LctParams {
    /// The Fourier transform matrix `(0, 1; -1, 0)`.
    pub const FOURIER: LctParams = LctParams { a: 0.0, b: 1.0, c: -1.0, d: 0.0 };

    pub const IDENTITY: LctParams = LctParams { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds a parameter matrix, checking finiteness and the determinant.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(LctError::NonFinite { what: "parameter matrix" });
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOLERANCE {
            return Err(LctError::Determinant { det, tol: DET_TOLERANCE });
        }
        Ok(LctParams { a, b, c, d })
    }

    /// Rotation matrix `(cos α, sin α; -sin α, cos α)`; the fractional Fourier
    /// transform of angle `alpha`.
    pub fn rotation(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        LctParams { a: c, b: s, c: -s, d: c }
    }

    /// Chirp multiplication `(1, 0; ξ, 1)`.
    pub fn chirp(xi: f64) -> Self {
        LctParams { a: 1.0, b: 0.0, c: xi, d: 1.0 }
    }

    /// Chirp convolution / Fresnel propagation `(1, b; 0, 1)`.
    pub fn shear(b: f64) -> Self {
        LctParams { a: 1.0, b, c: 0.0, d: 1.0 }
    }

    /// Scaling `(σ, 0; 0, 1/σ)`.
    pub fn scaling(sigma: f64) -> Result<Self> {
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(LctError::InvalidArgument(format!(
                "scaling parameter must be finite and nonzero, got {sigma}"
            )));
        }
        Ok(LctParams { a: sigma, b: 0.0, c: 0.0, d: sigma.recip() })
    }

    /// Builds the matrix whose CM-CC-CM decomposition has the given three
    /// chirp rates: `(A-1)/B`, `-B`, `(D-1)/B` (applied in that order).
    pub fn from_chirp_rates(first: f64, middle: f64, last: f64) -> Result<Self> {
        if middle == 0.0 {
            return Err(LctError::ZeroB { b: 0.0 });
        }
        let b = -middle;
        let a = 1.0 + first * b;
        let d = 1.0 + last * b;
        let c = (a * d - 1.0) / b;
        LctParams::new(a, b, c, d)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// `(d, -b; -c, a)`.
    pub fn inverse(&self) -> Self {
        LctParams { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Matrix product `self × rhs`. As an operator this applies `rhs` first.
    pub fn compose(&self, rhs: &LctParams) -> Self {
        LctParams {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Whether `b` counts as zero: `|b| < 1e-12 · max(|a|, |d|, 1)`.
    pub fn is_b_zero(&self) -> bool {
        self.b.abs() < ZERO_B_RELATIVE * self.b_scale()
    }

    /// Nonzero but small enough that `(a-1)/b` style chirp rates are huge.
    pub fn is_b_near_zero(&self) -> bool {
        !self.is_b_zero() && self.b.abs() < NEAR_ZERO_B_RELATIVE * self.b_scale()
    }

    fn b_scale(&self) -> f64 {
        self.a.abs().max(self.d.abs()).max(1.0)
    }

    pub(crate) fn require_nonzero_b(&self) -> Result<()> {
        if self.is_b_zero() {
            Err(LctError::ZeroB { b: self.b })
        } else {
            Ok(())
        }
    }

    /// Chirp rates `((A-1)/B, -B, (D-1)/B)` of the CM-CC-CM factorisation.
    pub fn chirp_rates(&self) -> Result<(f64, f64, f64)> {
        self.require_nonzero_b()?;
        Ok(((self.a - 1.0) / self.b, -self.b, (self.d - 1.0) / self.b))
    }

    /// Maps a continuous matrix `(a, b; c, d)` to the discrete matrix used
    /// with `n` samples at period `delta`: `(a, b/(NΔ²); cNΔ², d)`.
    ///
    /// With `delta = sqrt(1/n)` the two coincide.
    pub fn to_discrete(&self, n: usize, delta: f64) -> Result<Self> {
        if n == 0 {
            return Err(LctError::InvalidArgument("sample count must be positive".into()));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(LctError::InvalidArgument(format!(
                "sampling period must be positive, got {delta}"
            )));
        }
        let s = n as f64 * delta * delta;
        Ok(LctParams { a: self.a, b: self.b / s, c: self.c * s, d: self.d })
    }
}

impl fmt::Display for LctParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Chirp rate `ξ` of the diagonal operator `e^{jπξn²/N}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ChirpRate(f64);

impl ChirpRate {
    pub fn new(xi: f64) -> Result<Self> {
        if xi.is_finite() {
            Ok(ChirpRate(xi))
        } else {
            Err(LctError::NonFinite { what: "chirp rate" })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::ops::Neg for ChirpRate {
    type Output = ChirpRate;

    fn neg(self) -> ChirpRate {
        ChirpRate(-self.0)
    }
}
