use std::fmt;
use std::str::FromStr;

use super::lp::l1_best_approx;
use super::samples::{check_grid, poly_on_grid, PeriodicSamples, TrigTable};
use crate::error::{Error, Result};

/// Which sign pattern `φ_*` is tested: `sign(sin nt)` or `sign(cos nt)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    Sine,
    Cosine,
}

impl fmt::Display for SignMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignMode::Sine => "sine",
            SignMode::Cosine => "cosine",
        })
    }
}

impl FromStr for SignMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sine" => Ok(SignMode::Sine),
            "cosine" => Ok(SignMode::Cosine),
            _ => Err(Error::Domain(format!("unknown sign mode '{s}'"))),
        }
    }
}

impl SignMode {
    /// Sine for odd `β`, cosine for even.
    pub fn for_beta(beta: i64) -> Self {
        if beta.rem_euclid(2) == 1 {
            SignMode::Sine
        } else {
            SignMode::Cosine
        }
    }
}

/// The polynomial `T*` of a sign certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum TStar {
    Constant(f64),
    /// Coefficients on `1, cos t, sin t, cos 2t, …`.
    Poly(Vec<f64>),
}

impl TStar {
    fn on_grid(&self, table: &TrigTable, n: usize) -> Vec<f64> {
        match self {
            TStar::Constant(c) => vec![*c; n],
            TStar::Poly(coeffs) => poly_on_grid(table, coeffs),
        }
    }
}

/// Outcome of a grid scan for a sign or positivity condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignReport {
    pub min: f64,
    /// Node at which the minimum is attained.
    pub argmin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn scan(samples: &PeriodicSamples, product: impl Fn(usize) -> f64, tolerance: f64) -> SignReport {
    let (mut min, mut at) = (f64::INFINITY, 0usize);
    for j in 0..samples.grid_size() {
        let v = product(j);
        if v < min {
            min = v;
            at = j;
        }
    }
    SignReport { min, argmin: samples.node(at), tolerance, passed: min >= -tolerance }
}

/// `min_j φ_*(t_j)(K(t_j) - T*(t_j))`, passing when it is at least
/// `-1e-9 (1 + max|K|)`.
pub fn sign_condition_check(samples: &PeriodicSamples, n: u32, mode: SignMode, t_star: &TStar) -> SignReport {
    let big_n = samples.grid_size();
    let table = TrigTable::new(big_n);
    let t = t_star.on_grid(&table, big_n);
    let k = samples.values();
    let cosine = mode == SignMode::Cosine;
    let tolerance = 1e-9 * (1.0 + samples.max_abs());
    scan(samples, |j| table.sign(n as u64, j, cosine) * (k[j] - t[j]), tolerance)
}

/// `T*` used by [`extremal_value`]. For `n = 1` it is zero in sine mode and
/// `K(π/2)` in cosine mode; for larger `n` it is the `L1` best polynomial.
pub fn default_t_star(samples: &PeriodicSamples, n: u32, mode: SignMode) -> Result<TStar> {
    match (mode, n) {
        (SignMode::Sine, 1) => Ok(TStar::Constant(0.0)),
        (SignMode::Cosine, 1) => Ok(TStar::Constant(samples.values()[3 * samples.grid_size() / 4])),
        _ => Ok(TStar::Poly(l1_best_approx(samples, n)?.coeffs)),
    }
}

/// `(1/2π) Σ w_j φ_*(t_j)(K(t_j) - T*(t_j))` with the default `T*`.
///
/// At the nodes where `φ_*` vanishes the integrand `|K - T*|` is replaced
/// by the mean of its two neighbours.
pub fn extremal_value(samples: &PeriodicSamples, n: u32, mode: SignMode) -> Result<f64> {
    let t_star = default_t_star(samples, n, mode)?;
    extremal_value_with(samples, n, mode, &t_star)
}

/// As [`extremal_value`] with an explicit `T*`; the sign condition must hold.
pub fn extremal_value_with(samples: &PeriodicSamples, n: u32, mode: SignMode, t_star: &TStar) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let report = sign_condition_check(samples, n, mode, t_star);
    if !report.passed {
        return Err(Error::Precondition(format!(
            "{mode} sign condition fails: min {:.3e} at t = {:.6}",
            report.min, report.argmin
        )));
    }
    let big_n = samples.grid_size();
    let table = TrigTable::new(big_n);
    let t = t_star.on_grid(&table, big_n);
    let cosine = mode == SignMode::Cosine;
    let k = samples.values();
    let product = |j: usize| table.sign(n as u64, j, cosine) * (k[j] - t[j]);
    // On the zeros of φ_* the integrand is taken as the mean of its neighbours,
    // which keeps the quadrature second order across jumps of K there.
    let sum: f64 = (0..big_n)
        .map(|j| {
            if table.sign(n as u64, j, cosine) == 0.0 {
                0.5 * (product((j + big_n - 1) % big_n) + product((j + 1) % big_n))
            } else {
                product(j)
            }
        })
        .sum();
    Ok(sum / big_n as f64)
}

/// `2π·extremal - LP value`: how far the certificate is from the discrete
/// optimum. Zero up to rounding when `T*` is exactly optimal.
pub fn certificate_residual(samples: &PeriodicSamples, n: u32, mode: SignMode) -> Result<f64> {
    let ext = extremal_value(samples, n, mode)?;
    let lp = l1_best_approx(samples, n)?;
    Ok(2.0 * std::f64::consts::PI * ext - lp.value)
}

/// Minimum over the grid of the Fejér mean `ν_0/2 + Σ_{k=1}^{M} (1 - k/M) ν_k cos kt`.
pub fn positivity_check(nu: &[f64], grid_size: usize, m_terms: usize) -> Result<SignReport> {
    check_grid(grid_size)?;
    if m_terms == 0 {
        return Err(Error::Domain("the Fejér mean needs at least one term".into()));
    }
    if let Some(k) = nu.iter().position(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("coefficient {k} is not finite")));
    }
    let table = TrigTable::new(grid_size);
    let top = nu.len().saturating_sub(1).min(m_terms);
    let values: Vec<f64> = (0..grid_size)
        .map(|j| {
            let tail: f64 = (1..=top)
                .map(|k| (1.0 - k as f64 / m_terms as f64) * nu[k] * table.cos(k as u64, j))
                .sum();
            nu.first().copied().unwrap_or(0.0) / 2.0 + tail
        })
        .collect();
    let samples = PeriodicSamples::new(values)?;
    let tolerance = 1e-9 * (1.0 + nu.iter().take(top + 1).map(|v| v.abs()).sum::<f64>());
    let v = samples.values().to_vec();
    Ok(scan(&samples, |j| v[j], tolerance))
}
