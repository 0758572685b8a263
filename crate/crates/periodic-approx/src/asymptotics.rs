//! Small-`δ` expansions of the approximation values for the exponential
//! and inverse-power multipliers.
//!
//! With `F(y) = 1 - h(y)` the plain series is
//! `S(δ) = Σ_{k≥0} F(δ(2k+1)^α) / (2k+1)^{r+1}`, and its alternating twin
//! carries `(-1)^k`. Both expand into integer powers `δ^k` with Hurwitz
//! zeta coefficients, plus one term at `δ^{r/α}` in the plain case, which
//! picks up a logarithm when `r/α` is an integer. Expansions are scaled by
//! `4/π`, so evaluating one reproduces the `n = 1` approximation value.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::series::CompensatedSum;
use crate::special::{
    digamma, gamma, hurwitz_zeta_alternating_scaled, hurwitz_zeta_scaled, ln_gamma_signed, log_gamma,
};

const INTEGER_TOL: f64 = 1e-12;
const SUM_CAP: u32 = 2000;
const SUM_REL_TOL: f64 = 1e-15;
const QUIET_RUN: u32 = 6;

/// One term `δ^e (c + ℓ ln δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub exponent: f64,
    pub coefficient: f64,
    pub has_log: bool,
    /// `ℓ`; zero unless `has_log`.
    pub log_coefficient: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub prefactor: f64,
    /// Sorted by increasing exponent.
    pub terms: Vec<ExpansionTerm>,
    pub truncation_order: u32,
    /// Open interval of `δ` on which the full expansion converges to the value.
    pub equality_region: Option<(f64, f64)>,
}

/// Which series is expanded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpansionKind {
    Abel,
    AbelAlternating,
    InversePower { mu: f64, alternating: bool },
}

impl ExpansionKind {
    fn alternating(&self) -> bool {
        matches!(
            self,
            ExpansionKind::AbelAlternating | ExpansionKind::InversePower { alternating: true, .. }
        )
    }

    fn mu(&self) -> Option<f64> {
        match self {
            ExpansionKind::InversePower { mu, .. } => Some(*mu),
            _ => None,
        }
    }
}

/// Generator of the coefficients for one `(kind, r, α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionSeries {
    pub kind: ExpansionKind,
    pub r: f64,
    pub alpha: f64,
}

fn integer_ratio(s: f64) -> Option<u32> {
    let p = s.round();
    (p >= 1.0 && (s - p).abs() <= INTEGER_TOL * s.max(1.0)).then_some(p as u32)
}

impl ExpansionSeries {
    pub fn new(kind: ExpansionKind, r: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        let min_r = if kind.alternating() { -1.0 } else { 0.0 };
        if !(r > min_r) || !r.is_finite() {
            return Err(Error::Domain(format!("r must exceed {min_r}, got {r}")));
        }
        if let Some(mu) = kind.mu() {
            if !(mu > 0.0) || !mu.is_finite() {
                return Err(Error::Domain(format!("mu must be positive, got {mu}")));
            }
        }
        Ok(ExpansionSeries { kind, r, alpha })
    }

    /// `(ln|a_k|, sign a_k)` for the coefficient `a_k` of `δ^k`.
    ///
    /// Returns `None` for the plain integer case `k = r/α`, which is
    /// absorbed into the logarithmic term.
    pub fn integer_coefficient(&self, k: u32) -> Result<Option<(f64, f64)>> {
        let alternating = self.kind.alternating();
        if !alternating && integer_ratio(self.r / self.alpha) == Some(k) {
            return Ok(None);
        }
        let kf = k as f64;
        let s = self.r + 1.0 - self.alpha * kf;
        let z = if alternating {
            hurwitz_zeta_alternating_scaled(s, 0.5)?
        } else {
            match hurwitz_zeta_scaled(s, 0.5) {
                Err(Error::Pole(_)) => {
                    return Err(Error::Pole(format!(
                        "unexpected zeta pole at k = {k} (r = {}, alpha = {})",
                        self.r, self.alpha
                    )))
                }
                other => other?,
            }
        };
        if z.mantissa == 0.0 {
            return Ok(Some((f64::NEG_INFINITY, 0.0)));
        }
        let mut ln = (self.alpha * kf - self.r - 1.0) * LN_2 - log_gamma(kf + 1.0)? + z.ln_abs();
        if let Some(mu) = self.kind.mu() {
            ln += log_gamma(mu + kf)? - log_gamma(mu)?;
        }
        let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
        Ok(Some((ln, -parity * z.signum())))
    }

    /// Term at `δ^{r/α}` of the plain expansions, if any.
    pub fn special_term(&self) -> Result<Option<ExpansionTerm>> {
        if self.kind.alternating() {
            return Ok(None);
        }
        let s = self.r / self.alpha;
        let ratio = |x: f64| -> Result<f64> {
            match self.kind.mu() {
                Some(mu) => {
                    let (a, sa) = ln_gamma_signed(mu + x)?;
                    Ok(sa * (a - log_gamma(mu)?).exp())
                }
                None => Ok(1.0),
            }
        };
        if let Some(p) = integer_ratio(s) {
            let pf = p as f64;
            let parity = if p % 2 == 0 { 1.0 } else { -1.0 };
            let c = -parity / (2.0 * log_gamma(pf + 1.0)?.exp()) * ratio(pf)?;
            let mut bracket = -LN_2 + digamma(pf + 1.0)? / self.alpha - digamma(0.5)?;
            if let Some(mu) = self.kind.mu() {
                bracket -= digamma(mu + pf)? / self.alpha;
            }
            return Ok(Some(ExpansionTerm {
                exponent: pf,
                coefficient: c * bracket,
                has_log: true,
                log_coefficient: -c / self.alpha,
            }));
        }
        let coefficient = -gamma(-s)? / (2.0 * self.alpha) * ratio(s)?;
        Ok(Some(ExpansionTerm { exponent: s, coefficient, has_log: false, log_coefficient: 0.0 }))
    }

    pub fn equality_region(&self) -> Option<(f64, f64)> {
        if matches!(self.kind, ExpansionKind::InversePower { .. }) {
            return None;
        }
        if self.alpha < 1.0 {
            Some((0.0, f64::INFINITY))
        } else if self.alpha == 1.0 {
            Some((0.0, if self.kind.alternating() { PI / 2.0 } else { PI }))
        } else {
            None
        }
    }

    /// Terms through `δ^order`, with the special exponent kept when it is
    /// below `order + 1`.
    pub fn build(&self, order: u32) -> Result<Expansion> {
        if order == 0 {
            return Err(Error::Domain("expansion order must be at least 1".into()));
        }
        let mut terms = Vec::new();
        for k in 1..=order {
            if let Some((ln, sign)) = self.integer_coefficient(k)? {
                terms.push(ExpansionTerm {
                    exponent: k as f64,
                    coefficient: sign * ln.exp(),
                    has_log: false,
                    log_coefficient: 0.0,
                });
            }
        }
        if let Some(t) = self.special_term()? {
            if t.exponent < order as f64 + 1.0 {
                terms.push(t);
            }
        }
        terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
        Ok(Expansion {
            prefactor: 4.0 / PI,
            terms,
            truncation_order: order,
            equality_region: self.equality_region(),
        })
    }

    /// Sums the whole expansion at `δ` until the terms fall below the
    /// rounding level of the partial sum.
    pub fn sum(&self, delta: f64) -> Result<ConvergedSum> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::Domain(format!("delta must be positive, got {delta}")));
        }
        let mut warnings = Vec::new();
        match self.equality_region() {
            None => warnings.push("no equality region: the expansion is asymptotic only".to_string()),
            Some((_, hi)) if delta >= hi => warnings.push(format!(
                "delta = {delta} lies outside the equality region (0, {hi})"
            )),
            Some((_, hi)) if hi.is_finite() && delta > 0.9 * hi => warnings.push(format!(
                "delta = {delta} is close to {hi}; convergence is slow"
            )),
            _ => {}
        }
        let ln_delta = delta.ln();
        let mut sum = CompensatedSum::default();
        if let Some(t) = self.special_term()? {
            sum.add(delta.powf(t.exponent) * (t.coefficient + t.log_coefficient * ln_delta));
        }
        let mut quiet = 0;
        for k in 1..=SUM_CAP {
            if let Some((ln, sign)) = self.integer_coefficient(k)? {
                let term = sign * (ln + k as f64 * ln_delta).exp();
                sum.add(term);
                if term.abs() <= SUM_REL_TOL * sum.value().abs() {
                    quiet += 1;
                } else {
                    quiet = 0;
                }
            } else {
                quiet = 0;
            }
            if quiet >= QUIET_RUN {
                return Ok(ConvergedSum { value: 4.0 / PI * sum.value(), terms_used: k, warnings });
            }
        }
        Err(Error::NonConvergence(format!(
            "expansion terms still significant after {SUM_CAP} terms at delta = {delta}"
        )))
    }
}

/// A fully summed expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergedSum {
    pub value: f64,
    pub terms_used: u32,
    pub warnings: Vec<String>,
}

/// Expansion of the plain series for `h(t) = e^{-t}`.
pub fn abel_expansion(r: f64, alpha: f64, order: u32) -> Result<Expansion> {
    ExpansionSeries::new(ExpansionKind::Abel, r, alpha)?.build(order)
}

/// Expansion of the alternating series for `h(t) = e^{-t}`.
pub fn abel_alternating_expansion(r: f64, alpha: f64, order: u32) -> Result<Expansion> {
    ExpansionSeries::new(ExpansionKind::AbelAlternating, r, alpha)?.build(order)
}

/// Expansion for `h(t) = (1 + t)^{-μ}`.
pub fn inverse_power_expansion(
    r: f64,
    alpha: f64,
    mu: f64,
    alternating: bool,
    order: u32,
) -> Result<Expansion> {
    ExpansionSeries::new(ExpansionKind::InversePower { mu, alternating }, r, alpha)?.build(order)
}

/// `prefactor · Σ δ^e (c + ℓ ln δ)`, taken as 0 at `δ = 0`.
pub fn evaluate_expansion(exp: &Expansion, delta: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let ln_delta = delta.ln();
    let mut sum = CompensatedSum::default();
    for t in &exp.terms {
        let log_part = if t.has_log { t.log_coefficient * ln_delta } else { 0.0 };
        sum.add(delta.powf(t.exponent) * (t.coefficient + log_part));
    }
    exp.prefactor * sum.value()
}
