use crate::error::{Error, Result};
use crate::special::cesaro_number;

/// One monomial `a x^μ` of the polynomial `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QTerm {
    pub a: f64,
    pub mu: f64,
}

/// How the polynomial `Q` is turned into a multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QForm {
    /// `h(x) = Q((u - x)_+) / Q(u)`.
    Shifted { u: f64 },
    /// `h(x) = Q((1 - x)_+) / Q(1)`.
    Unit,
}

/// The multiplier functions `h` supported by the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierFamily {
    /// `h(t) = e^{-t}`.
    Exp,
    /// `h(t) = (1 + t)^{-μ}`.
    InversePower { mu: f64 },
    /// `h(t) = (1 - t)_+^μ`.
    RieszCutoff { mu: f64 },
    /// Polynomial cutoff built from `Q(x) = Σ a_k x^{μ_k}`.
    QPolynomial { terms: Vec<QTerm>, form: QForm },
    /// Cesàro ratio `ν_k = A_{m-k}^α / A_m^α`, defined on integers only.
    CesaroRatio { m: u32, alpha: f64 },
    /// User samples, linearly interpolated.
    Sampled { grid: Vec<f64>, values: Vec<f64> },
}

/// Upper bound for `|(1 + γx) h(x)|`, valid for `x ≥ from`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// The product vanishes identically.
    Vanishing { from: f64 },
    /// Bounded by `coeff · x^{-decay}`.
    Power { coeff: f64, decay: f64, from: f64 },
    /// Bounded by `(1 + gamma_abs·x) e^{-x}`, which decreases on `[from, ∞)`.
    Exponential { gamma_abs: f64, from: f64 },
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {v}")))
    }
}

impl MultiplierFamily {
    pub fn inverse_power(mu: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        Ok(MultiplierFamily::InversePower { mu })
    }

    pub fn riesz(mu: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        Ok(MultiplierFamily::RieszCutoff { mu })
    }

    pub fn q_polynomial(terms: Vec<QTerm>, form: QForm) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("Q needs at least one term".into()));
        }
        for t in &terms {
            check_positive("Q coefficient", t.a)?;
            check_positive("Q exponent", t.mu)?;
        }
        if let QForm::Shifted { u } = form {
            check_positive("u", u)?;
        }
        Ok(MultiplierFamily::QPolynomial { terms, form })
    }

    pub fn cesaro_ratio(m: u32, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 1.0) {
            return Err(Error::Domain(format!("Cesàro order must be at least 1, got {alpha}")));
        }
        Ok(MultiplierFamily::CesaroRatio { m, alpha })
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Domain("grid and values differ in length".into()));
        }
        if grid.len() < 2 {
            return Err(Error::Domain("need at least two samples".into()));
        }
        if !(grid[0] > 0.0) || grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("grid must be positive and strictly increasing".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("sample values must be finite".into()));
        }
        Ok(MultiplierFamily::Sampled { grid, values })
    }

    /// Short human-readable name.
    pub fn name(&self) -> &'static str {
        match self {
            MultiplierFamily::Exp => "exp",
            MultiplierFamily::InversePower { .. } => "inverse-power",
            MultiplierFamily::RieszCutoff { .. } => "riesz",
            MultiplierFamily::QPolynomial { .. } => "qpoly",
            MultiplierFamily::CesaroRatio { .. } => "cesaro",
            MultiplierFamily::Sampled { .. } => "sampled",
        }
    }

    /// Evaluates `h(x)`.
    pub fn eval_h(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("h is defined for x >= 0, got {x}")));
        }
        match self {
            MultiplierFamily::Exp => Ok((-x).exp()),
            MultiplierFamily::InversePower { mu } => Ok((-mu * x.ln_1p()).exp()),
            MultiplierFamily::RieszCutoff { mu } => Ok(if x >= 1.0 { 0.0 } else { (1.0 - x).powf(*mu) }),
            MultiplierFamily::QPolynomial { terms, form } => {
                let u = match form {
                    QForm::Shifted { u } => *u,
                    QForm::Unit => 1.0,
                };
                Ok(q_eval(terms, (u - x).max(0.0)) / q_eval(terms, u))
            }
            MultiplierFamily::CesaroRatio { m, alpha } => {
                if x != x.floor() {
                    return Err(Error::Unsupported(
                        "Cesàro ratios are defined on integers only".into(),
                    ));
                }
                let m = *m as i64;
                let k = x as i64;
                Ok(cesaro_number(m - k, *alpha) / cesaro_number(m, *alpha))
            }
            MultiplierFamily::Sampled { grid, values } => interpolate(grid, values, x),
        }
    }

    /// Evaluates `1 - h(x)` without cancellation where possible.
    pub fn one_minus_h(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("h is defined for x >= 0, got {x}")));
        }
        match self {
            MultiplierFamily::Exp => Ok(-(-x).exp_m1()),
            MultiplierFamily::InversePower { mu } => Ok(-(-mu * x.ln_1p()).exp_m1()),
            MultiplierFamily::RieszCutoff { mu } => {
                Ok(if x >= 1.0 { 1.0 } else { -(mu * (-x).ln_1p()).exp_m1() })
            }
            _ => Ok(1.0 - self.eval_h(x)?),
        }
    }

    /// Bound on `|(1 + γx) h(x)|` used to control series tails.
    pub fn envelope(&self, gamma: f64) -> Result<Envelope> {
        let g = gamma.abs();
        match self {
            MultiplierFamily::Exp => Ok(Envelope::Exponential { gamma_abs: g, from: 1.0 }),
            MultiplierFamily::InversePower { mu } => {
                let mu = *mu;
                if gamma == 0.0 {
                    Ok(Envelope::Power { coeff: 1.0, decay: mu, from: 0.0 })
                } else if mu >= 1.0 {
                    Ok(Envelope::Power { coeff: g.max(1.0), decay: mu - 1.0, from: 0.0 })
                } else {
                    Ok(Envelope::Power {
                        coeff: g.max(1.0) * 2f64.powf(1.0 - mu),
                        decay: mu - 1.0,
                        from: 1.0,
                    })
                }
            }
            MultiplierFamily::RieszCutoff { .. } => Ok(Envelope::Vanishing { from: 1.0 }),
            MultiplierFamily::QPolynomial { form, .. } => Ok(Envelope::Vanishing {
                from: match form {
                    QForm::Shifted { u } => *u,
                    QForm::Unit => 1.0,
                },
            }),
            MultiplierFamily::CesaroRatio { .. } | MultiplierFamily::Sampled { .. } => Err(
                Error::Unsupported(format!("no tail envelope for the {} family", self.name())),
            ),
        }
    }
}

fn q_eval(terms: &[QTerm], x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    terms.iter().map(|t| t.a * x.powf(t.mu)).sum()
}

fn interpolate(grid: &[f64], values: &[f64], x: f64) -> Result<f64> {
    let lo = grid[0];
    let hi = grid[grid.len() - 1];
    if x < lo || x > hi {
        return Err(Error::OutOfHull { x, lo, hi });
    }
    let i = grid.partition_point(|&g| g <= x);
    if i == 0 {
        return Ok(values[0]);
    }
    if i >= grid.len() {
        return Ok(values[grid.len() - 1]);
    }
    let (x0, x1) = (grid[i - 1], grid[i]);
    let t = (x - x0) / (x1 - x0);
    Ok(values[i - 1] + t * (values[i] - values[i - 1]))
}
