//! Fast discrete linear canonical transform (DLCT).
//!
//! A DLCT with parameter matrix `(a, b; c, d)`, `ad − bc = 1`, is computed
//! in O(N log N) from chirp multiplications and centered FFTs. The result is
//! unitary, additive up to round-off, and exactly invertible by the DLCT
//! with the inverse matrix.
//!
//! ```
//! use dlct::{dlct, idlct, nmse, LctParams, Signal};
//! use num_complex::Complex64;
//!
//! let x = Signal::from_fn(64, |n| Complex64::new((-(n * n) as f64 / 64.0).exp(), 0.0))?;
//! let m = LctParams::new(0.6, 0.8, -0.5, 1.0)?;
//! let y = dlct(&x, &m)?;
//! assert!((y.norm() - x.norm()).abs() < 1e-12);
//! assert!(nmse(&x, &idlct(&y, &m)?)? < 1e-25);
//! # Ok::<(), dlct::LctError>(())
//! ```
//!
//! Modules:
//! - [`params`]: parameter matrices and their continuous-to-discrete mapping.
//! - [`kernels`]: chirp multiplication, centered DFT, direct O(N²) DLCT.
//! - [`transform`]: the fast DLCT and the fractional Fourier, Fresnel and
//!   scaling special cases.
//! - [`sampling`]: sampling-period and length planning.
//! - [`analysis`]: closed-form references, NMSE, test signals, experiments.
//! - [`io`]: CSV and JSON formats for signals and reports.
//! - [`complexity`]: operation counts and timing.

pub mod analysis;
pub mod complexity;
pub mod error;
pub mod io;
pub mod kernels;
pub mod params;
pub mod sampling;
pub mod signal;
pub mod transform;

pub use analysis::{
    accuracy_experiment, additivity_experiment, gaussian_lct, gaussian_lct_closed_form, make_test_signal, nmse,
    random_params, reversibility_experiment, run_experiment, ExperimentConfig, ExperimentRecord, ExperimentReport,
    Protocol, TestSignal,
};
pub use complexity::Method;
pub use error::{LctError, Result};
pub use kernels::{centered_dft, centered_idft, chirp_mul, direct_dlct};
pub use params::{ChirpRate, LctParams};
pub use sampling::{
    box_from_parallelogram, min_rate_basic, min_rate_recoverable, min_samples, parallelogram_reduce, plan_box,
    plan_refined, ParallelogramSpec, ReducedParallelogram, SamplingPlan, TimeFreqBox,
};
pub use signal::Signal;
pub use transform::{dfresnel, dfrft, dlct, dscale, idlct, Branch};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/parameters.md")]
    mod parameters {}
    #[doc = include_str!("../../../book/src/transform.md")]
    mod transform {}
    #[doc = include_str!("../../../book/src/special-cases.md")]
    mod special_cases {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
