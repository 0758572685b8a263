//! Multiplier functions `h` and the quantities the theorems test.

mod family;
mod monotone;
mod quantities;

pub use family::{Envelope, MultiplierFamily, QForm, QTerm};
pub use monotone::{
    check_lambda_conditions, check_mm_membership, check_mm_membership_fn, GridSpec,
    LambdaReport, MonotoneReport,
};
pub use quantities::{gamma_m, lambda_rho_gamma, m_of_h, m_of_h_numeric, LambdaParams};
