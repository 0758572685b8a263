use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument {x} outside the sampled range [{lo}, {hi}]")]
    OutOfHull { x: f64, lo: f64, hi: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("divergent series: {0}")]
    Divergence(String),
    #[error("coefficients decay too slowly: {0}")]
    SlowDecay(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
