use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::samples::{check_grid, node, PeriodicSamples};
use crate::error::{Error, Result};
use crate::multipliers::{Envelope, MultiplierFamily};
use crate::special::hurwitz_zeta;

/// Coefficient sequence `k ↦ c_k` for `k ≥ 1`.
pub type CoeffFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Bound on `Σ_{k>M} (|μ_k| + |λ_k|)` as a function of `M`; `None` when
/// no bound is available at that `M`.
pub type TailFn = Arc<dyn Fn(u64) -> Result<Option<f64>> + Send + Sync>;

const MAX_TERMS: u64 = 1 << 24;

/// Kernel with a known closed form, added to the coefficient series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// `ψ_{r,β}(t) = Σ_{k≥1} 2 cos(kt - βπ/2) / k^r`, for `r ≥ 1`.
    Weyl { r: f64, beta: i64 },
}

/// `K(t) = [closed form] + Σ_{k≥1} μ_k cos kt + λ_k sin kt`.
#[derive(Clone)]
pub struct KernelSpec {
    pub cosine_coeffs: CoeffFn,
    pub sine_coeffs: CoeffFn,
    /// `|μ_k| + |λ_k| ≤ 2 k^{-r_eff}` when no explicit tail bound is given.
    pub decay_exponent: f64,
    pub closed_form: Option<ClosedForm>,
    pub tail_bound: Option<TailFn>,
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelSpec")
            .field("decay_exponent", &self.decay_exponent)
            .field("closed_form", &self.closed_form)
            .field("tail_bound", &self.tail_bound.is_some())
            .finish_non_exhaustive()
    }
}

/// `(cos(βπ/2), sin(βπ/2))` without rounding.
pub(crate) fn quarter_turn(beta: i64) -> (f64, f64) {
    match beta.rem_euclid(4) {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

impl KernelSpec {
    pub fn from_coeffs(cosine: CoeffFn, sine: CoeffFn, decay_exponent: f64) -> Self {
        KernelSpec { cosine_coeffs: cosine, sine_coeffs: sine, decay_exponent, closed_form: None, tail_bound: None }
    }

    pub fn zero() -> Self {
        Self::from_coeffs(Arc::new(|_| 0.0), Arc::new(|_| 0.0), f64::INFINITY)
            .with_tail_bound(Arc::new(|_| Ok(Some(0.0))))
    }

    /// The Weyl kernel `ψ_{r,β}`.
    pub fn weyl(r: f64, beta: i64) -> Self {
        let mut spec = Self::zero();
        spec.closed_form = Some(ClosedForm::Weyl { r, beta });
        spec
    }

    pub fn with_tail_bound(mut self, tail: TailFn) -> Self {
        self.tail_bound = Some(tail);
        self
    }

    /// `Σ_{k≥1} 2 (1 - ĝ(k)) cos(kt - βπ/2) / k^r` with
    /// `ĝ(k) = (1 + γδk^α) h(δk^α)`.
    pub fn approximation(
        family: &MultiplierFamily,
        r: f64,
        beta: i64,
        alpha: f64,
        delta: f64,
        gamma: f64,
    ) -> Result<Self> {
        for (name, v) in [("r", r), ("alpha", alpha), ("delta", delta)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        let envelope = family.envelope(gamma)?;
        let (cb, sb) = quarter_turn(beta);
        let g = {
            let family = family.clone();
            move |k: u64| -> f64 {
                let x = delta * (k as f64).powf(alpha);
                let h = family.eval_h(x).unwrap_or(f64::NAN);
                let weight = if gamma == 0.0 { 1.0 } else { 1.0 + gamma * x };
                2.0 * weight * h * (-r * (k as f64).ln()).exp()
            }
        };
        let g = Arc::new(g);
        let gc = g.clone();
        let cosine: CoeffFn = Arc::new(move |k| if cb == 0.0 { 0.0 } else { -cb * gc(k) });
        let sine: CoeffFn = Arc::new(move |k| if sb == 0.0 { 0.0 } else { -sb * g(k) });
        let tail: TailFn = Arc::new(move |m| remainder_tail(envelope, r, alpha, delta, m));
        Ok(KernelSpec {
            cosine_coeffs: cosine,
            sine_coeffs: sine,
            decay_exponent: r,
            closed_form: Some(ClosedForm::Weyl { r, beta }),
            tail_bound: Some(tail),
        })
    }

    fn truncation(&self, tol: f64) -> Result<u64> {
        if let Some(tail) = &self.tail_bound {
            let mut m = 16u64;
            loop {
                if let Some(b) = tail(m)? {
                    if b <= tol {
                        return Ok(m);
                    }
                }
                if m >= MAX_TERMS {
                    return Err(Error::NonConvergence(format!(
                        "coefficient tail above {tol} after {MAX_TERMS} terms"
                    )));
                }
                m *= 2;
            }
        }
        let r = self.decay_exponent;
        if !(r > 1.0) {
            return Err(Error::SlowDecay(format!("decay exponent {r} <= 1 without a closed form")));
        }
        // 2 M^{1-r} / (r - 1) ≤ tol
        let m = (2.0 / (tol * (r - 1.0))).powf(1.0 / (r - 1.0)).ceil();
        if m > MAX_TERMS as f64 {
            return Err(Error::NonConvergence(format!(
                "decay exponent {r} needs more than {MAX_TERMS} terms for tolerance {tol}"
            )));
        }
        Ok((m as u64).max(1))
    }
}

/// `Σ_{k>M} 2|ĝ(k)| k^{-r}` from the multiplier envelope at `x = δk^α`.
fn remainder_tail(env: Envelope, r: f64, alpha: f64, delta: f64, m: u64) -> Result<Option<f64>> {
    let mf = m as f64;
    let x_next = delta * (mf + 1.0).powf(alpha);
    match env {
        Envelope::Vanishing { from } => Ok((x_next >= from).then_some(0.0)),
        Envelope::Power { coeff, decay, from } => {
            if x_next < from {
                return Ok(None);
            }
            let s = r + alpha * decay;
            if !(s > 1.0) {
                return Err(Error::SlowDecay(format!("remainder coefficients decay like k^-{s}")));
            }
            Ok(Some(2.0 * coeff * delta.powf(-decay) * hurwitz_zeta(s, mf + 1.0)?))
        }
        Envelope::Exponential { gamma_abs, from } => {
            // Integral comparison with u = δk^α, k^{-r} ≤ M^{-r}.
            let u0 = delta * mf.powf(alpha);
            if u0 < from.max(1.0) {
                return Ok(None);
            }
            let a = 1.0 / alpha;
            let (Some(g0), Some(g1)) = (upper_gamma_bound(a, u0), upper_gamma_bound(a + 1.0, u0)) else {
                return Ok(None);
            };
            Ok(Some(2.0 * mf.powf(-r) * a * delta.powf(-a) * (g0 + gamma_abs * g1)))
        }
    }
}

/// Upper bound for `Γ(a, u)`.
fn upper_gamma_bound(a: f64, u: f64) -> Option<f64> {
    let base = ((a - 1.0) * u.ln() - u).exp();
    if a <= 1.0 {
        Some(base)
    } else if u > 2.0 * (a - 1.0) {
        Some(2.0 * base)
    } else {
        None
    }
}

/// Samples of `K` on the `N`-point grid, accurate to `tol` pointwise.
///
/// Coefficients are folded modulo `N` and transformed with one FFT, which
/// reproduces the point values exactly apart from the truncated tail.
pub fn synthesize_kernel(spec: &KernelSpec, grid_size: usize, tol: f64) -> Result<PeriodicSamples> {
    check_grid(grid_size)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let n = grid_size;
    let m = spec.truncation(tol)?;
    let mut bins = vec![Complex64::new(0.0, 0.0); n];
    for k in 1..=m {
        let mu = (spec.cosine_coeffs)(k);
        let lambda = (spec.sine_coeffs)(k);
        if !mu.is_finite() || !lambda.is_finite() {
            return Err(Error::Domain(format!("coefficient {k} is not finite")));
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        bins[(k % n as u64) as usize] += Complex64::new(sign * mu, -sign * lambda);
    }
    let mut base = None;
    if let Some(ClosedForm::Weyl { r, beta }) = spec.closed_form {
        if r > 1.0 {
            let scale = 2.0 * (n as f64).powf(-r);
            let (cb, sb) = quarter_turn(beta);
            let phase = Complex64::new(cb, -sb);
            for (b, bin) in bins.iter_mut().enumerate() {
                let a = if b == 0 { 1.0 } else { b as f64 / n as f64 };
                let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
                *bin += phase * (sign * scale * hurwitz_zeta(r, a)?);
            }
        } else if r == 1.0 {
            base = Some(weyl_one(beta, n));
        } else {
            return Err(Error::SlowDecay(format!("the Weyl kernel needs r >= 1, got {r}")));
        }
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut bins);
    let mut values: Vec<f64> = bins.iter().map(|c| c.re).collect();
    if let Some(base) = base {
        for (v, b) in values.iter_mut().zip(base) {
            *v += b;
        }
    }
    PeriodicSamples::new(values)
}

/// `ψ_{1,β}(t) = -2cos(βπ/2) ln|2 sin(t/2)| + sin(βπ/2) S(t)` with the
/// sawtooth `S(t) = sign(t)π - t`; the logarithm is replaced by its cell
/// average at `t = 0`.
fn weyl_one(beta: i64, n: usize) -> Vec<f64> {
    let (cb, sb) = quarter_turn(beta);
    (0..n)
        .map(|j| {
            if 2 * j == n {
                return -2.0 * cb * ((PI / n as f64).ln() - 1.0);
            }
            let t = node(n, j);
            let log = if cb == 0.0 { 0.0 } else { -2.0 * cb * (2.0 * (t / 2.0).sin().abs()).ln() };
            let saw = if j == 0 { 0.0 } else { t.signum() * PI - t };
            log + sb * saw
        })
        .collect()
}
