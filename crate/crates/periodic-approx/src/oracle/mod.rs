//! Brute-force checks that do not reuse the series formulas.
//!
//! A kernel is synthesized on a uniform grid from its Fourier
//! coefficients, its best `L1` approximation by `T_n` is computed with a
//! small simplex solver, and the sign certificate `φ_*(K - T*) = |K - T*|`
//! is tested on the grid. For a kernel that satisfies the certificate the
//! extremal value `(1/2π)∫ φ_*(K - T*)` equals `E_n(K)_1 / 2π`.

mod certificate;
mod kernel;
mod lp;
mod samples;

pub use certificate::{
    certificate_residual, default_t_star, extremal_value, extremal_value_with, positivity_check,
    sign_condition_check, SignMode, SignReport, TStar,
};
pub use kernel::{synthesize_kernel, ClosedForm, CoeffFn, KernelSpec, TailFn};
pub use lp::{l1_best_approx, L1Fit};
pub use samples::PeriodicSamples;
