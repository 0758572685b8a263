use super::family::MultiplierFamily;
use crate::error::{Error, Result};

/// Parameters of `λ_{ρ,γ}(x) = (1 - (1 + γx) h(x)) / x^ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    pub rho: f64,
    pub gamma: f64,
}

impl LambdaParams {
    pub fn new(rho: f64, gamma: f64) -> Result<Self> {
        if !(rho >= 1.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!("need rho >= 1 and finite gamma, got ({rho}, {gamma})")));
        }
        Ok(LambdaParams { rho, gamma })
    }
}

/// `λ_{ρ,γ}(x)`.
pub fn lambda_rho_gamma(family: &MultiplierFamily, params: LambdaParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("lambda needs x > 0, got {x}")));
    }
    let num = match family {
        MultiplierFamily::InversePower { mu } if params.gamma != 0.0 => {
            let grown = if *mu == 1.0 { x } else { (mu * x.ln_1p()).exp_m1() };
            (grown - params.gamma * x) * family.eval_h(x)?
        }
        _ if params.gamma == 0.0 => family.one_minus_h(x)?,
        _ => family.one_minus_h(x)? - params.gamma * x * family.eval_h(x)?,
    };
    Ok(num / x.powf(params.rho))
}

const PROBE_LO: f64 = 1e-6;
const PROBE_HI: f64 = 1e4;
const PROBES: usize = 2048;
const LOG_STEP: f64 = 1e-4;

/// `m(h) = sup h'(x) x / (h(x) - 1)`.
///
/// Closed forms are used for the analytic families; otherwise the supremum
/// is taken over a geometric probe grid, which gives a lower bound.
/// Returns `-inf` exactly when `h ≡ 1` on the probes.
pub fn m_of_h(family: &MultiplierFamily) -> Result<f64> {
    match family {
        MultiplierFamily::Exp | MultiplierFamily::InversePower { .. } => Ok(1.0),
        MultiplierFamily::RieszCutoff { mu } => Ok(if *mu >= 1.0 { 1.0 } else { f64::INFINITY }),
        MultiplierFamily::CesaroRatio { .. } => Err(Error::Unsupported(
            "m(h) needs a function of a real variable".into(),
        )),
        _ => m_of_h_numeric(family, PROBES),
    }
}

/// Numeric supremum of `h'(x) x / (h(x) - 1)` over `probes` geometric
/// points in `[1e-6, 1e4]` (clipped to the sample range for sampled `h`).
pub fn m_of_h_numeric(family: &MultiplierFamily, probes: usize) -> Result<f64> {
    if probes < 2 {
        return Err(Error::GridTooCoarse("need at least two probes".into()));
    }
    let (lo, hi) = match family {
        MultiplierFamily::Sampled { grid, .. } => {
            let shrink = (2.0 * LOG_STEP).exp();
            let lo = (grid[0] * shrink).max(PROBE_LO);
            let hi = (grid[grid.len() - 1] / shrink).min(PROBE_HI);
            if !(lo < hi) {
                return Err(Error::GridTooCoarse("sample range too narrow".into()));
            }
            (lo, hi)
        }
        MultiplierFamily::CesaroRatio { .. } => {
            return Err(Error::Unsupported("m(h) needs a function of a real variable".into()))
        }
        _ => (PROBE_LO, PROBE_HI),
    };
    let ratio = (hi / lo).ln() / (probes - 1) as f64;
    let mut sup = f64::NEG_INFINITY;
    for i in 0..probes {
        let x = lo * (ratio * i as f64).exp();
        let h = family.eval_h(x)?;
        if h > 1.0 + 1e-12 {
            return Err(Error::Precondition(format!("h({x}) = {h} exceeds 1")));
        }
        let gap = family.one_minus_h(x)?;
        if gap <= 0.0 {
            continue;
        }
        let up = family.eval_h(x * LOG_STEP.exp())?;
        let down = family.eval_h(x * (-LOG_STEP).exp())?;
        let x_dh = (up - down) / (2.0 * LOG_STEP);
        sup = sup.max(-x_dh / gap);
    }
    Ok(sup)
}

/// Closed forms of `γ_m(ρ, h)` for the three families where they are known.
pub fn gamma_m(family: &MultiplierFamily, m: u32, rho: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("m must be a positive integer".into()));
    }
    if !(rho >= 1.0) {
        return Err(Error::Domain(format!("rho must be at least 1, got {rho}")));
    }
    let mf = m as f64;
    let unit_mu = matches!(family, MultiplierFamily::InversePower { mu } if *mu == 1.0);
    if !unit_mu && rho != 1.0 && rho < 2.0 {
        return Err(Error::Unsupported(format!(
            "gamma_m has a closed form only for rho = 1 or rho >= 2, got {rho}"
        )));
    }
    match family {
        MultiplierFamily::Exp => Ok(if rho == 1.0 { 1.0 / (mf + 2.0) } else { 1.0 }),
        MultiplierFamily::InversePower { mu } if *mu >= 1.0 => {
            if unit_mu {
                Ok(1.0)
            } else if rho == 1.0 {
                Ok((mu + mf + 1.0) / (mf + 2.0))
            } else {
                Ok(*mu)
            }
        }
        MultiplierFamily::RieszCutoff { mu } if *mu >= mf + 1.0 => {
            Ok(if rho == 1.0 { (mu - mf - 1.0) / (mf + 2.0) } else { *mu })
        }
        _ => Err(Error::Unsupported(format!(
            "gamma_{m} is not available for this {} multiplier",
            family.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        let e = MultiplierFamily::Exp;
        assert_eq!(gamma_m(&e, 1, 1.0).unwrap(), 1.0 / 3.0);
        let ip = MultiplierFamily::InversePower { mu: 2.0 };
        assert_eq!(gamma_m(&ip, 2, 1.0).unwrap(), 1.25);
        let rz = MultiplierFamily::RieszCutoff { mu: 3.0 };
        assert_eq!(gamma_m(&rz, 1, 2.0).unwrap(), 3.0);
        assert!(gamma_m(&MultiplierFamily::RieszCutoff { mu: 1.5 }, 1, 1.0).is_err());
        assert!(gamma_m(&e, 1, 1.5).is_err());
        assert_eq!(gamma_m(&MultiplierFamily::InversePower { mu: 1.0 }, 3, 1.5).unwrap(), 1.0);
    }

    #[test]
    fn lambda_values() {
        let p = LambdaParams::new(1.0, 0.0).unwrap();
        let v = lambda_rho_gamma(&MultiplierFamily::Exp, p, 1.0).unwrap();
        assert!((v - (1.0 - (-1f64).exp())).abs() < 1e-15);
        let q = LambdaParams::new(1.0, 1.0).unwrap();
        assert_eq!(lambda_rho_gamma(&MultiplierFamily::InversePower { mu: 1.0 }, q, 1.0).unwrap(), 0.0);
        let r = LambdaParams::new(2.5, -0.7).unwrap();
        let x = 3.0;
        let w = lambda_rho_gamma(&MultiplierFamily::RieszCutoff { mu: 2.0 }, r, x).unwrap();
        assert!((w - x.powf(-2.5)).abs() < 1e-15);
    }
}
