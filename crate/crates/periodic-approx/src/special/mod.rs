//! Special functions used throughout the crate.

mod cesaro;
mod gamma;
mod zeta;

pub use cesaro::cesaro_number;
pub use gamma::{digamma, gamma, ln_gamma_signed, log_gamma};
pub use zeta::{
    hurwitz_zeta, hurwitz_zeta_alternating, hurwitz_zeta_alternating_scaled, hurwitz_zeta_scaled,
    Scaled, BERNOULLI_EVEN,
};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_1;
