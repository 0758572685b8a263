//! Exact approximation values of the periodic classes `W^{r,β}_{p,n}` by
//! convolution operators, together with the numerical machinery needed to
//! check and reproduce them.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`] provides Γ, digamma, the Hurwitz zeta function and its
//!   alternating counterpart, and Cesàro numbers.
//! * [`multipliers`] models the multiplier functions `h` and the quantities
//!   derived from them.
//! * [`series`] evaluates the closed-form approximation series and decides
//!   which theorem justifies a value.
//! * [`asymptotics`] builds the small-`δ` expansions.
//! * [`oracle`] synthesises kernels and computes best `L1` approximations
//!   directly, independent of the series formulas.

pub mod asymptotics;
pub mod error;
pub mod multipliers;
pub mod oracle;
pub mod series;
pub mod special;

pub use error::{Error, Result};
