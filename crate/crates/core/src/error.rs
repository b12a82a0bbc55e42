use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LctError {
    /// `ad - bc` is not within tolerance of 1.
    #[error("parameter matrix determinant is {det}, expected 1 (tolerance {tol:e})")]
    Determinant { det: f64, tol: f64 },

    /// The operation needs `b != 0` but got a zero (or numerically zero) `b`.
    #[error("operation requires b != 0 (got b = {b})")]
    ZeroB { b: f64 },

    /// A real parameter was NaN or infinite.
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    /// An argument was outside its domain (non-positive period, zero scale, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("signal must have at least one sample")]
    EmptySignal,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// NMSE reference has zero energy.
    #[error("reference signal has zero energy")]
    ZeroReference,

    /// The parallelogram vertices describe zero area or the wrong orientation.
    #[error("degenerate parallelogram: T0 = {t0}, F0 = {f0}")]
    DegenerateParallelogram { t0: f64, f0: f64 },

    #[error("unknown signal name: {0}")]
    UnknownSignal(String),

    /// Malformed signal or report file.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl LctError {
    /// True for errors that come from the mathematics (bad matrix, zero `b`)
    /// rather than from malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            LctError::Determinant { .. } | LctError::ZeroB { .. } | LctError::NonFinite { .. }
        )
    }
}

impl From<std::io::Error> for LctError {
    fn from(e: std::io::Error) -> Self {
        LctError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LctError>;
