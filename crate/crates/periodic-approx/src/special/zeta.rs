//! Hurwitz zeta `ζ(s,a)` and the alternating function `ζ̃(s,a)`.
//!
//! For `s ≥ -4` both are evaluated by summation formulas (Euler–Maclaurin
//! for `ζ`, Euler–Boole for `ζ̃`) with the number of direct terms chosen so
//! that the first omitted correction is negligible. For `s < -4` these
//! formulas cancel catastrophically, so the Hurwitz functional equation is
//! used instead, which converges absolutely and quickly there.

use std::f64::consts::PI;

use super::gamma::ln_gamma_signed;
use crate::error::{Error, Result};

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_26`.
pub const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// Order of the Bernoulli correction.
const M: usize = 12;

/// Threshold below which the functional equation replaces summation.
const FE_THRESHOLD: f64 = -4.0;

/// A value stored as `mantissa · exp(ln_scale)`, for magnitudes outside the
/// range of `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn plain(v: f64) -> Self {
        Scaled { mantissa: v, ln_scale: 0.0 }
    }

    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * self.ln_scale.exp()
        }
    }

    /// `ln |value|`, or `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |p, k| p * k as f64)
}

/// `ln |s (s+1) ... (s+len-1)|`, or `None` when the product vanishes.
fn ln_rising(s: f64, len: usize) -> Option<f64> {
    let mut acc = 0.0;
    for i in 0..len {
        let f = s + i as f64;
        if f == 0.0 {
            return None;
        }
        acc += f.abs().ln();
    }
    Some(acc)
}

fn check_args(s: f64, a: f64) -> Result<()> {
    if s.is_nan() || a.is_nan() {
        return Err(Error::Domain("NaN argument".into()));
    }
    if a <= 0.0 {
        return Err(Error::Domain(format!("parameter a must be positive, got {a}")));
    }
    Ok(())
}

/// Hurwitz zeta `ζ(s,a) = Σ_{k≥0} (k+a)^{-s}`, analytically continued to
/// `s ≠ 1`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    check_args(s, a)?;
    if s == 1.0 {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    if s < FE_THRESHOLD {
        return functional_zeta(s, a).map(|v| v.value());
    }
    if s < 0.0 {
        if let Some(v) = rational_zeta(s, a)? {
            return Ok(v);
        }
    }
    Ok(euler_maclaurin(s, a))
}

/// As [`hurwitz_zeta`], but keeps a separate logarithmic scale so that
/// values for very negative `s` do not overflow.
pub fn hurwitz_zeta_scaled(s: f64, a: f64) -> Result<Scaled> {
    check_args(s, a)?;
    if s == 1.0 {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    if s < FE_THRESHOLD {
        return functional_zeta(s, a);
    }
    hurwitz_zeta(s, a).map(Scaled::plain)
}

fn euler_maclaurin(s: f64, a: f64) -> f64 {
    let n = em_terms(s, a);
    let mut direct = 0.0;
    let mut comp = 0.0;
    for k in 0..n {
        let t = (k as f64 + a).powf(-s);
        let y = t - comp;
        let sum = direct + y;
        comp = (sum - direct) - y;
        direct = sum;
    }
    let x = n as f64 + a;
    let x_s = x.powf(-s);
    let mut corr = x * x_s / (s - 1.0) + 0.5 * x_s;
    let mut rising = s;
    let mut pow = x_s / x;
    let inv2 = 1.0 / (x * x);
    for (j, b) in BERNOULLI_EVEN.iter().take(M).enumerate() {
        let j = j + 1;
        corr += b / factorial(2 * j) * rising * pow;
        rising *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        pow *= inv2;
    }
    direct + corr
}

/// Smallest number of direct terms for which the first omitted
/// Euler–Maclaurin correction is below `1e-17` of the leading term.
fn em_terms(s: f64, a: f64) -> usize {
    let Some(ln_r) = ln_rising(s, 2 * M + 1) else {
        return 0;
    };
    let ln_c = BERNOULLI_EVEN[M].abs().ln() - factorial(2 * M + 2).ln() + ln_r;
    let ln_tol = (1e-17f64).ln();
    let mut n = 0usize;
    loop {
        let x = n as f64 + a;
        let lead = (x / (s - 1.0).abs()).max(1.0).ln();
        if ln_c - (2 * M + 1) as f64 * x.ln() <= ln_tol + lead || n > 100_000 {
            return n;
        }
        n += 1;
    }
}

/// `Σ_{n≥1} w(n) cos(2π(phase0 - n·step)) / n^σ` summed to absolute
/// accuracy `1e-17` relative to the first term; `w` selects the indices.
fn cosine_series(sigma: f64, phase0: f64, step: f64, odd_only: bool) -> f64 {
    let tail_limit = 1e-18;
    let mut sum = 0.0;
    let mut n = 1u64;
    loop {
        if !odd_only || n % 2 == 1 {
            let turns = (phase0 - n as f64 * step).rem_euclid(1.0);
            sum += (2.0 * PI * turns).cos() / (n as f64).powf(sigma);
        }
        let tail = (n as f64).powf(1.0 - sigma) / (sigma - 1.0);
        if tail < tail_limit || n > 50_000_000 {
            return sum;
        }
        n += 1;
    }
}

/// Splits `a` into `x ∈ (0, 1]` and a shift `m` with `a = x + m`.
fn reduce(a: f64) -> (f64, u64) {
    if a <= 1.0 {
        return (a, 0);
    }
    let mut m = a.floor();
    let mut x = a - m;
    if x == 0.0 {
        x = 1.0;
        m -= 1.0;
    }
    (x, m as u64)
}

fn functional_zeta(s: f64, a: f64) -> Result<Scaled> {
    let sigma = 1.0 - s;
    let (x, m) = reduce(a);
    let (lg, _) = ln_gamma_signed(sigma)?;
    let ln_scale = 2f64.ln() + lg - sigma * (2.0 * PI).ln();
    // cos(πσ/2 - 2πnx) in turns: σ/4 - n x
    let sum = cosine_series(sigma, sigma / 4.0, x, false);
    let base = Scaled { mantissa: sum, ln_scale };
    if m == 0 {
        return Ok(base);
    }
    // ζ(s, x+m) = ζ(s, x) - Σ_{j<m} (x+j)^{-s}
    let mut shift = 0.0;
    for j in 0..m {
        shift += (x + j as f64).powf(-s);
    }
    Ok(Scaled::plain(base.value() - shift))
}

/// Largest denominator for which rational parameters use the exact
/// residue-class form of the functional equation.
const MAX_DENOMINATOR: u64 = 32;

/// Detects `x = p/q` with `q ≤ MAX_DENOMINATOR`.
fn as_rational(x: f64) -> Option<(u64, u64)> {
    for q in 1..=MAX_DENOMINATOR {
        let xq = x * q as f64;
        let p = xq.round();
        if p >= 1.0 && (xq - p).abs() <= 1e-14 * xq {
            return Some((p as u64, q));
        }
    }
    None
}

/// Functional equation for rational `x = p/q ∈ (0,1]` and `s < 1`:
/// splitting `n` by residue mod `q` turns the trigonometric series into
/// `q` Hurwitz values at `σ = 1 - s > 1`, which converge absolutely.
fn rational_zeta_reduced(s: f64, p: u64, q: u64) -> Result<f64> {
    let sigma = 1.0 - s;
    let (lg, _) = ln_gamma_signed(sigma)?;
    let mut sum = 0.0;
    for r in 1..=q {
        let turns = (sigma / 4.0 - ((r * p) % q) as f64 / q as f64).rem_euclid(1.0);
        let c = (2.0 * PI * turns).cos();
        if c != 0.0 {
            sum += c * euler_maclaurin(sigma, r as f64 / q as f64);
        }
    }
    let ln_scale = 2f64.ln() + lg - sigma * (2.0 * PI).ln() - sigma * (q as f64).ln();
    Ok(sum * ln_scale.exp())
}

fn rational_zeta(s: f64, a: f64) -> Result<Option<f64>> {
    let (x, m) = reduce(a);
    let Some((p, q)) = as_rational(x) else {
        return Ok(None);
    };
    let mut v = rational_zeta_reduced(s, p, q)?;
    for j in 0..m {
        v -= (x + j as f64).powf(-s);
    }
    Ok(Some(v))
}

/// Alternating Hurwitz function `ζ̃(s,a) = Σ_{k≥0} (-1)^k (k+a)^{-s}`,
/// continued to an entire function of `s`.
pub fn hurwitz_zeta_alternating(s: f64, a: f64) -> Result<f64> {
    hurwitz_zeta_alternating_scaled(s, a).map(|v| v.value())
}

/// As [`hurwitz_zeta_alternating`] with a separate logarithmic scale.
pub fn hurwitz_zeta_alternating_scaled(s: f64, a: f64) -> Result<Scaled> {
    check_args(s, a)?;
    let (x, m) = reduce(a);
    let rational = as_rational(x).filter(|&(_, q)| 2 * q <= MAX_DENOMINATOR);
    if s >= 0.0 || (s >= FE_THRESHOLD && rational.is_none()) {
        return Ok(Scaled::plain(euler_boole(s, a)));
    }
    let base = if s < FE_THRESHOLD {
        let sigma = 1.0 - s;
        let (lg, _) = ln_gamma_signed(sigma)?;
        // 2^{-s}[ζ(s,x/2) - ζ(s,(x+1)/2)] collapses onto odd frequencies:
        // 2Γ(σ)π^{-σ} Σ_{n odd} cos(πσ/2 - πnx)/n^σ
        let ln_scale = 2f64.ln() + lg - sigma * PI.ln();
        let sum = cosine_series(sigma, sigma / 4.0, x / 2.0, true);
        Scaled { mantissa: sum, ln_scale }
    } else {
        let (p, q) = rational.unwrap_or((1, 1));
        let lo = rational_zeta_reduced(s, p, 2 * q)?;
        let hi = rational_zeta_reduced(s, p + q, 2 * q)?;
        Scaled::plain(2f64.powf(-s) * (lo - hi))
    };
    if m == 0 {
        return Ok(base);
    }
    // ζ̃(s, x+m) = (-1)^m [ζ̃(s,x) - Σ_{j<m} (-1)^j (x+j)^{-s}]
    let mut shift = 0.0;
    for j in 0..m {
        let t = (x + j as f64).powf(-s);
        shift += if j % 2 == 0 { t } else { -t };
    }
    let v = base.value() - shift;
    Ok(Scaled::plain(if m % 2 == 0 { v } else { -v }))
}

/// Euler number polynomial values `E_j(0)/j!` for odd `j`, from
/// `E_j(0) = -2 (2^{j+1} - 1) B_{j+1} / (j+1)`.
fn euler_zero_over_factorial(j: usize) -> f64 {
    let b = BERNOULLI_EVEN[(j + 1) / 2 - 1];
    let p = 2f64.powi(j as i32 + 1) - 1.0;
    -2.0 * p * b / (j as f64 + 1.0) / factorial(j)
}

fn euler_boole(s: f64, a: f64) -> f64 {
    let pairs = eb_pairs(s, a);
    let mut direct = 0.0;
    let mut comp = 0.0;
    for k in 0..2 * pairs {
        let t = (k as f64 + a).powf(-s);
        let t = if k % 2 == 0 { t } else { -t };
        let y = t - comp;
        let sum = direct + y;
        comp = (sum - direct) - y;
        direct = sum;
    }
    let x = (2 * pairs) as f64 + a;
    let x_s = x.powf(-s);
    // (1/2) Σ_j E_j(0)/j! (-1)^j (s)_j x^{-s-j}
    let mut corr = 0.5 * x_s;
    let mut rising = 1.0;
    let mut pow = x_s;
    for j in 1..=(2 * M - 1) {
        rising *= s + (j - 1) as f64;
        pow /= x;
        if j % 2 == 1 {
            corr -= 0.5 * euler_zero_over_factorial(j) * rising * pow;
        }
    }
    direct + corr
}

fn eb_pairs(s: f64, a: f64) -> usize {
    let j = 2 * M + 1;
    let Some(ln_r) = ln_rising(s, j) else {
        return 0;
    };
    let ln_c = euler_zero_over_factorial(j).abs().ln() + ln_r;
    let ln_tol = (1e-17f64).ln();
    let mut n = 0usize;
    loop {
        let x = (2 * n) as f64 + a;
        if ln_c - j as f64 * x.ln() <= ln_tol || n > 100_000 {
            return n;
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_numbers() {
        // E_1(0) = -1/2, E_3(0) = 1/4, E_5(0) = -1/2
        assert!((euler_zero_over_factorial(1) + 0.5).abs() < 1e-16);
        assert!((euler_zero_over_factorial(3) * 6.0 - 0.25).abs() < 1e-15);
        assert!((euler_zero_over_factorial(5) * 120.0 + 0.5).abs() < 1e-14);
    }

    #[test]
    fn pole_and_domain() {
        assert!(matches!(hurwitz_zeta(1.0, 0.5), Err(Error::Pole(_))));
        assert!(matches!(hurwitz_zeta(2.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta_alternating(2.0, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_at_half() {
        assert!(hurwitz_zeta(0.0, 0.5).unwrap().abs() < 1e-15);
        assert!((hurwitz_zeta_alternating(0.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_near_threshold() {
        for &a in &[0.3, 0.5, 1.0, 2.5] {
            let s = -4.0;
            let em = euler_maclaurin(s, a);
            let fe = functional_zeta(s, a).unwrap().value();
            assert!((em - fe).abs() < 1e-12 * (1.0 + em.abs()), "a={a}: {em} vs {fe}");
            let eb = euler_boole(s, a);
            let two = hurwitz_zeta_alternating_scaled(s - 1e-9, a).unwrap().value();
            assert!((eb - two).abs() < 1e-7 * (1.0 + eb.abs()), "a={a}: {eb} vs {two}");
        }
    }
}
