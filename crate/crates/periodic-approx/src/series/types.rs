use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Norm of the class; the values do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    One,
    Infinity,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::One => "1",
            Norm::Infinity => "inf",
        })
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "one" => Ok(Norm::One),
            "inf" | "infinity" => Ok(Norm::Infinity),
            _ => Err(Error::Domain(format!("norm must be 1 or inf, got {s:?}"))),
        }
    }
}

/// Parameters of the class `W^{r,β}_{p,n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    pub r: f64,
    pub beta: i64,
    pub n: u32,
    pub p: Norm,
}

impl ClassParams {
    pub fn new(r: f64, beta: i64, n: u32, p: Norm) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("r must be positive, got {r}")));
        }
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        Ok(ClassParams { r, beta, n, p })
    }

    /// Odd `β` gives sine kernels and a non-alternating series.
    pub fn beta_odd(&self) -> bool {
        self.beta.rem_euclid(2) == 1
    }
}

/// Parameters of the operator with multipliers `(1 + γ|k|^α δ) h(|k|^α δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    pub rho: f64,
}

impl OperatorParams {
    pub fn new(alpha: f64, delta: f64, gamma: f64, rho: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::Domain(format!("delta must be positive, got {delta}")));
        }
        if !gamma.is_finite() {
            return Err(Error::Domain(format!("gamma must be finite, got {gamma}")));
        }
        if !(rho >= 1.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("rho must be at least 1, got {rho}")));
        }
        Ok(OperatorParams { alpha, delta, gamma, rho })
    }
}

/// Which known result guarantees that the series is the approximation value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    LambdaConvexOdd,
    LambdaConvexEven,
    LambdaConvexEvenStrong,
    MhOdd,
    MhEven,
    WeightedOddSmallAlpha,
    WeightedOddLargeAlpha,
    WeightedEvenSmallAlpha,
    WeightedEvenLargeAlpha,
    WeightedEvenStrong,
    PositiveDefinite,
    CesaroOdd,
    CesaroEven,
    PolynomialOdd,
    PolynomialEven,
    Unverified,
}

impl Justification {
    pub const ALL: [Justification; 16] = [
        Justification::LambdaConvexOdd,
        Justification::LambdaConvexEven,
        Justification::LambdaConvexEvenStrong,
        Justification::MhOdd,
        Justification::MhEven,
        Justification::WeightedOddSmallAlpha,
        Justification::WeightedOddLargeAlpha,
        Justification::WeightedEvenSmallAlpha,
        Justification::WeightedEvenLargeAlpha,
        Justification::WeightedEvenStrong,
        Justification::PositiveDefinite,
        Justification::CesaroOdd,
        Justification::CesaroEven,
        Justification::PolynomialOdd,
        Justification::PolynomialEven,
        Justification::Unverified,
    ];

    /// Stable tag used in reports.
    pub fn as_str(&self) -> &'static str {
        match self {
            Justification::LambdaConvexOdd => "thZast1-case1",
            Justification::LambdaConvexEven => "thZast1-case2",
            Justification::LambdaConvexEvenStrong => "thZast1-case2-strong",
            Justification::MhOdd => "thZast-case1",
            Justification::MhEven => "thZast-case2",
            Justification::WeightedOddSmallAlpha => "thZast3-1i",
            Justification::WeightedOddLargeAlpha => "thZast3-1ii",
            Justification::WeightedEvenSmallAlpha => "thZast3-2i",
            Justification::WeightedEvenLargeAlpha => "thZast3-2ii",
            Justification::WeightedEvenStrong => "thZast3-strong",
            Justification::PositiveDefinite => "thZast4",
            Justification::CesaroOdd => "thChezaro-1",
            Justification::CesaroEven => "thChezaro-2",
            Justification::PolynomialOdd => "thPolinom-1",
            Justification::PolynomialEven => "thPolinom-2",
            Justification::Unverified => "unverified",
        }
    }

    pub fn is_verified(&self) -> bool {
        *self != Justification::Unverified
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Justification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Justification::ALL
            .iter()
            .find(|j| j.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("unknown justification tag {s:?}")))
    }
}

/// A series value with its certified truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationResult {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
    pub justification: Justification,
}
