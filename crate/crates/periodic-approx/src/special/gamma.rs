use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

const GAMMA_R: f64 = 10.900511;

const GAMMA_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(x: f64) -> f64 {
    GAMMA_DK
        .iter()
        .enumerate()
        .skip(1)
        .fold(GAMMA_DK[0], |s, (i, d)| s + d / (x + i as f64 - 1.0))
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("log_gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(format!("log_gamma at {x}")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "log_gamma requires x > 0, got {x}"
        )));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, d)| s + d / (i as f64 - x));
        LN_PI
            - (PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + GAMMA_R) / E).ln()
    } else {
        lanczos_sum(x).ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + GAMMA_R) / E).ln()
    }
}

/// `(ln|Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(format!("gamma at {x}")));
    }
    if x > 0.0 {
        return Ok((ln_gamma_pos(x), 1.0));
    }
    // Γ(x)Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    let ln_abs = LN_PI - s.abs().ln() - ln_gamma_pos(1.0 - x);
    Ok((ln_abs, s.signum()))
}

/// `sin(πx)` with exact zeros at integers.
fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        -(PI * (2.0 - r)).sin()
    }
}

/// `Γ(x)` for any real `x` that is not a pole.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(format!("gamma at {x}")));
    }
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, d)| s + d / (i as f64 - x));
        Ok(PI
            / (sin_pi(x)
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + GAMMA_R) / E).powf(0.5 - x)))
    } else if x > 171.7 {
        Ok(f64::INFINITY)
    } else {
        Ok(lanczos_sum(x) * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / E).powf(x - 0.5))
    }
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)`.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("digamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(format!("digamma at {x}")));
    }
    if x < 0.0 {
        // ψ(x) = ψ(1-x) - π cot(πx)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma_pos(1.0 - x) - PI * cot);
    }
    Ok(digamma_pos(x))
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn digamma_pos(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Σ B_{2k} / (2k x^{2k}), k = 1..7
    let coeffs = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let mut poly = 0.0;
    for c in coeffs.iter().rev() {
        poly = poly * inv2 + c;
    }
    acc + x.ln() - 0.5 / x - poly * inv2
}
