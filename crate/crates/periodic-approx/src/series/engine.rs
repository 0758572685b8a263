use std::f64::consts::{FRAC_2_PI, LN_2, PI};

use super::applicability::check_applicability;
use super::types::{ApproximationResult, ClassParams, OperatorParams, SeriesSum};
use super::CompensatedSum;
use crate::error::{Error, Result};
use crate::multipliers::{Envelope, MultiplierFamily};
use crate::special::{hurwitz_zeta, hurwitz_zeta_alternating};

const TERM_CAP: u64 = 10_000_000;
const DENSE_CHECKS: u64 = 16;

/// Which coefficient formula the engine evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesForm {
    /// `1 - h(x)`.
    Plain,
    /// `1 - (1 + γx) h(x)`.
    Weighted,
}

/// `Σ_{j≥k} σ_j (2j+1)^{-s}` with `σ_j = 1` (odd) or `(-1)^j` (even).
pub fn odd_sum_tail(odd: bool, s: f64, k: u64) -> Result<f64> {
    let a = k as f64 + 0.5;
    let scale = (-s * LN_2).exp();
    if odd {
        if s <= 1.0 {
            return Err(Error::Divergence(format!("sum of (2k+1)^-{s} diverges")));
        }
        Ok(scale * hurwitz_zeta(s, a)?)
    } else {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * scale * hurwitz_zeta_alternating(s, a)?)
    }
}

fn next_checkpoint(k: u64) -> u64 {
    if k < DENSE_CHECKS {
        k + 1
    } else {
        k + (k / 4).max(1)
    }
}

/// Bound on `Σ_{j≥k} |(1+γx_j) h(x_j)| / (2j+1)^{r+1}`, or `None` while the
/// envelope is not yet valid.
fn envelope_tail(env: Envelope, r: f64, alpha: f64, scale: f64, k: u64) -> Result<Option<f64>> {
    let x = ((2 * k + 1) as f64).powf(alpha) * scale;
    match env {
        Envelope::Vanishing { from } => Ok((x >= from).then_some(0.0)),
        Envelope::Power { coeff, decay, from } => {
            if x < from {
                return Ok(None);
            }
            let s = r + 1.0 + alpha * decay;
            Ok(Some(coeff * scale.powf(-decay) * odd_sum_tail(true, s, k)?))
        }
        Envelope::Exponential { gamma_abs, from } => {
            if x < from {
                return Ok(None);
            }
            let head = (1.0 + gamma_abs * x) * (-x).exp();
            Ok(Some(head * odd_sum_tail(true, r + 1.0, k)?))
        }
    }
}

/// Approximation value with the formula chosen from `γ`.
pub fn approx_value(
    class: &ClassParams,
    op: &OperatorParams,
    family: &MultiplierFamily,
    tol: f64,
) -> Result<ApproximationResult> {
    let form = if op.gamma == 0.0 { SeriesForm::Plain } else { SeriesForm::Weighted };
    approx_value_with_form(class, op, family, tol, form)
}

/// `(4/(π n^r)) Σ σ_k c_k / (2k+1)^{r+1}` with `x_k = (2k+1)^α n^α δ`.
///
/// The part of the series that does not involve `h` is summed exactly with
/// the Hurwitz zeta functions; only the `h`-dependent remainder is
/// truncated, and its tail is bounded through the family envelope.
pub fn approx_value_with_form(
    class: &ClassParams,
    op: &OperatorParams,
    family: &MultiplierFamily,
    tol: f64,
    form: SeriesForm,
) -> Result<ApproximationResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let gamma = match form {
        SeriesForm::Plain => 0.0,
        SeriesForm::Weighted => op.gamma,
    };
    let env = family.envelope(gamma)?;
    let (r, alpha) = (class.r, op.alpha);
    if let Envelope::Power { decay, .. } = env {
        if r + alpha * decay <= 0.0 {
            return Err(Error::Divergence(format!(
                "coefficients may grow like (2k+1)^{}; no tail bound",
                -alpha * decay
            )));
        }
    }
    let odd = class.beta_odd();
    let n = class.n as f64;
    let scale = n.powf(alpha) * op.delta;
    let prefactor = 4.0 / (PI * n.powf(r));
    let target = tol / prefactor;

    let mut sum = CompensatedSum::default();
    let mut k = 0u64;
    let mut check = 0u64;
    let tail = loop {
        if k == check {
            if let Some(bound) = envelope_tail(env, r, alpha, scale, k)? {
                if bound <= target || bound <= sum.rounding() {
                    break bound;
                }
            }
            check = next_checkpoint(k);
        }
        if k >= TERM_CAP {
            return Err(Error::NonConvergence(format!(
                "tail bound above {tol} after {TERM_CAP} terms"
            )));
        }
        let j = (2 * k + 1) as f64;
        let x = j.powf(alpha) * scale;
        let coeff = match form {
            SeriesForm::Plain => family.one_minus_h(x)?,
            SeriesForm::Weighted => family.one_minus_h(x)? - gamma * x * family.eval_h(x)?,
        };
        let sign = if odd || k % 2 == 0 { 1.0 } else { -1.0 };
        sum.add(sign * coeff * (-(r + 1.0) * j.ln()).exp());
        k += 1;
    };
    let rest = odd_sum_tail(odd, r + 1.0, k)?;
    sum.add(rest);
    Ok(ApproximationResult {
        value: prefactor * sum.value(),
        tail_bound: prefactor * (tail + sum.rounding()),
        terms_used: k,
        justification: check_applicability(class, op, family),
    })
}

/// How a caller certifies the remainder of a coefficient series.
pub enum TailBound<'a> {
    /// `f(K)` bounds `Σ_{k≥K} |c_{(2k+1)n}| / (2k+1)`.
    Dominating(&'a dyn Fn(u64) -> f64),
    /// The terms `c_{(2k+1)n}/(2k+1)` are nonnegative and nonincreasing for
    /// `k` at or beyond the given index, so an alternating remainder applies.
    MonotoneFrom(u64),
}

fn coefficient_series(
    coeff: &dyn Fn(u64) -> f64,
    n: u64,
    tol: f64,
    tail: TailBound<'_>,
    alternating: bool,
) -> Result<SeriesSum> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let term = |k: u64| {
        let j = 2 * k + 1;
        coeff(j * n) / j as f64
    };
    let mut sum = CompensatedSum::default();
    for k in 0..=TERM_CAP {
        let bound = match &tail {
            TailBound::Dominating(f) => Some(f(k)),
            TailBound::MonotoneFrom(k0) if k >= *k0 => Some(term(k).abs()),
            TailBound::MonotoneFrom(_) => None,
        };
        if let Some(b) = bound {
            let total = FRAC_2_PI * (b + sum.rounding());
            if total <= tol || b <= sum.rounding() {
                return Ok(SeriesSum { value: FRAC_2_PI * sum.value(), tail_bound: total, terms_used: k });
            }
        }
        let sign = if !alternating || k % 2 == 0 { 1.0 } else { -1.0 };
        sum.add(sign * term(k));
    }
    Err(Error::NonConvergence(format!("tail bound above {tol} after {TERM_CAP} terms")))
}

/// `(2/π) Σ λ_{(2k+1)n} / (2k+1)`.
pub fn en_from_sine_coeffs(
    lambda: impl Fn(u64) -> f64,
    n: u64,
    tol: f64,
    tail: TailBound<'_>,
) -> Result<SeriesSum> {
    if let TailBound::MonotoneFrom(_) = tail {
        return Err(Error::Precondition(
            "the sine series does not alternate; supply a dominating tail bound".into(),
        ));
    }
    coefficient_series(&lambda, n, tol, tail, false)
}

/// `(2/π) Σ (-1)^k μ_{(2k+1)n} / (2k+1)`.
pub fn en_from_cosine_coeffs(
    mu: impl Fn(u64) -> f64,
    n: u64,
    tol: f64,
    tail: TailBound<'_>,
) -> Result<SeriesSum> {
    coefficient_series(&mu, n, tol, tail, true)
}
