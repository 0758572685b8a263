//! Exact approximation values of the classes `W^{r,β}_{p,n}` as rapidly
//! convergent series, with certified tail bounds and a verdict on which
//! known result makes the formal series equal to the approximation value.
//!
//! Every value here uses the normalisation of the convolution operator
//! `f ↦ (1/2π)∫f(x-t)g(t)dt`, so it equals `E_n(K)_1 / (2π)` for the
//! corresponding kernel `K`.

mod applicability;
mod cesaro;
mod engine;
mod types;

pub use applicability::{check_applicability, positive_definite};
pub use cesaro::{cesaro_mixing_identity, cesaro_value, fejer_constant, q_means_value, QScale};
pub use engine::{
    approx_value, approx_value_with_form, en_from_cosine_coeffs, en_from_sine_coeffs, odd_sum_tail,
    SeriesForm, TailBound,
};
pub use types::{ApproximationResult, ClassParams, Justification, Norm, OperatorParams, SeriesSum};

/// Neumaier compensated summation that also tracks `Σ|x|`.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Conservative rounding error of the accumulated sum.
    pub(crate) fn rounding(&self) -> f64 {
        4.0 * f64::EPSILON * self.abs
    }
}
