use std::f64::consts::{LN_2, PI};

use super::applicability::{cesaro_applicability, polynomial_applicability};
use super::engine::{approx_value, odd_sum_tail};
use super::types::{ApproximationResult, ClassParams, OperatorParams};
use super::CompensatedSum;
use crate::error::{Error, Result};
use crate::multipliers::{MultiplierFamily, QForm, QTerm};
use crate::special::{cesaro_number, hurwitz_zeta, hurwitz_zeta_alternating};

/// Value for the Cesàro means `σ_m^α` of order `α ≥ 1`.
///
/// The bracket `1 - A_{m-j}^α / A_m^α` equals 1 once `j > m`, so the series
/// is a finite head plus an exact zeta tail.
pub fn cesaro_value(class: &ClassParams, m: u64, alpha: f64, tol: f64) -> Result<ApproximationResult> {
    if class.n != 1 {
        return Err(Error::Domain(format!("Cesàro means need n = 1, got {}", class.n)));
    }
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("Cesàro order must be at least 1, got {alpha}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let odd = class.beta_odd();
    let r = class.r;
    let m_i = m as i64;
    let a_m = cesaro_number(m_i, alpha);
    let head = m.div_ceil(2);
    let mut sum = CompensatedSum::default();
    for k in 0..head {
        let j = 2 * k + 1;
        let bracket = 1.0 - cesaro_number(m_i - j as i64, alpha) / a_m;
        let sign = if odd || k % 2 == 0 { 1.0 } else { -1.0 };
        sum.add(sign * bracket * (-(r + 1.0) * (j as f64).ln()).exp());
    }
    sum.add(odd_sum_tail(odd, r + 1.0, head)?);
    let prefactor = 4.0 / PI;
    Ok(ApproximationResult {
        value: prefactor * sum.value(),
        tail_bound: prefactor * sum.rounding(),
        terms_used: head,
        justification: cesaro_applicability(class, alpha),
    })
}

/// Both sides of the identity expressing `σ_m^α` through the means of
/// order `γ`: `E(σ_m^α) = (1/A_m^α) Σ_k A_{m-k}^{α-γ-1} A_k^γ E(σ_k^γ)`.
pub fn cesaro_mixing_identity(
    class: &ClassParams,
    m: u64,
    alpha: f64,
    gamma_order: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(gamma_order >= 1.0) {
        return Err(Error::Domain(format!("inner order must be at least 1, got {gamma_order}")));
    }
    let lhs = cesaro_value(class, m, alpha, tol)?.value;
    let a_m = cesaro_number(m as i64, alpha);
    let mut sum = CompensatedSum::default();
    for k in 0..=m {
        let w = cesaro_number((m - k) as i64, alpha - gamma_order - 1.0)
            * cesaro_number(k as i64, gamma_order);
        if w != 0.0 {
            sum.add(w * cesaro_value(class, k, gamma_order, tol)?.value);
        }
    }
    Ok((lhs, sum.value() / a_m))
}

/// Scaling of the polynomial means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QScale {
    /// Bracket `Q((u - (2k+1)^α)_+) / Q(u)`.
    Shift(f64),
    /// Bracket `Q((1 - (2k+1)^α δ)_+) / Q(1)`.
    Delta(f64),
}

/// Value for the means generated by the polynomial `Q(x) = Σ a_k x^{μ_k}`.
pub fn q_means_value(
    class: &ClassParams,
    terms: &[QTerm],
    alpha: f64,
    scale: QScale,
    tol: f64,
) -> Result<ApproximationResult> {
    if class.n != 1 {
        return Err(Error::Domain(format!("polynomial means need n = 1, got {}", class.n)));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if let Some(t) = terms.iter().find(|t| !(t.a > 0.0 && t.mu >= 1.0)) {
        return Err(Error::Domain(format!(
            "need a_k > 0 and mu_k >= 1, got a = {}, mu = {}",
            t.a, t.mu
        )));
    }
    let (form, delta) = match scale {
        QScale::Shift(u) => (QForm::Shifted { u }, 1.0),
        QScale::Delta(d) => (QForm::Unit, d),
    };
    let family = MultiplierFamily::q_polynomial(terms.to_vec(), form)?;
    let op = OperatorParams::new(alpha, delta, 0.0, 1.0)?;
    let mut result = approx_value(class, &op, &family, tol)?;
    result.justification = polynomial_applicability(class, &op, &family);
    Ok(result)
}

/// `K^{r,β} = (4/π) Σ (-1)^{k(β+1)} / (2k+1)^r`.
pub fn fejer_constant(r: f64, beta: i64) -> Result<f64> {
    let odd = beta.rem_euclid(2) == 1;
    let scale = 4.0 / PI * (-r * LN_2).exp();
    if odd {
        if !(r > 1.0) {
            return Err(Error::Divergence(format!("the constant needs r > 1 for odd beta, got {r}")));
        }
        Ok(scale * hurwitz_zeta(r, 0.5)?)
    } else {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("the constant needs r > 0, got {r}")));
        }
        Ok(scale * hurwitz_zeta_alternating(r, 0.5)?)
    }
}
