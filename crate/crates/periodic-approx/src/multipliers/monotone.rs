use super::family::MultiplierFamily;
use crate::error::{Error, Result};

/// Geometric grid used by the finite-difference shape tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { lo: 1e-2, hi: 1e2, points: 256 }
    }
}

impl GridSpec {
    pub fn nodes(&self) -> Result<Vec<f64>> {
        if !(self.lo > 0.0 && self.hi > self.lo) || self.points < 2 {
            return Err(Error::Domain(format!("invalid grid {self:?}")));
        }
        let step = (self.hi / self.lo).ln() / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.lo * (step * i as f64).exp()).collect())
    }
}

/// Outcome of the `M_m` test on `(-1)^{m-1} h^{(m-1)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneReport {
    pub nonnegative: bool,
    pub decreasing: bool,
    pub convex: bool,
    /// Largest sign violation, normalised by the scale of the differences.
    pub worst_violation: f64,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.nonnegative && self.decreasing && self.convex
    }

    fn all_true() -> Self {
        MonotoneReport { nonnegative: true, decreasing: true, convex: true, worst_violation: 0.0 }
    }
}

/// Convexity facts about `λ(x) = (1 - h(x)) / x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaReport {
    pub convex: bool,
    pub neg_derivative_convex: bool,
    pub worst_violation: f64,
}

const NOISE_FACTOR: f64 = 1e3;
const SIGN_TOL: f64 = 1e-9;

/// Divided differences of orders `0..=max_order` and their rounding-noise
/// envelopes.
fn divided_differences(xs: &[f64], fs: &[f64], max_order: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut out = Vec::with_capacity(max_order + 1);
    let d0 = fs.to_vec();
    let n0: Vec<f64> = fs.iter().map(|f| NOISE_FACTOR * f64::EPSILON * f.abs()).collect();
    out.push((d0, n0));
    for j in 1..=max_order {
        let (prev_d, prev_n) = &out[j - 1];
        let len = prev_d.len() - 1;
        let mut d = Vec::with_capacity(len);
        let mut n = Vec::with_capacity(len);
        for i in 0..len {
            let h = xs[i + j] - xs[i];
            d.push((prev_d[i + 1] - prev_d[i]) / h);
            n.push((prev_n[i + 1] + prev_n[i]) / h);
        }
        out.push((d, n));
    }
    out
}

/// Checks `sign · D ≥ 0` within noise; returns (ok, worst normalised violation).
fn sign_check(d: &[f64], noise: &[f64], sign: f64) -> (bool, f64) {
    let scale = 1.0 + d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    for (v, n) in d.iter().zip(noise) {
        let excess = (-sign * v - n).max(0.0) / scale;
        worst = worst.max(excess);
    }
    (worst <= SIGN_TOL, worst)
}

fn parity(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn mm_on_nodes(xs: &[f64], fs: &[f64], m: u32) -> Result<MonotoneReport> {
    let m = m as usize;
    if xs.len() < m + 3 {
        return Err(Error::GridTooCoarse(format!(
            "{} points cannot resolve differences of order {}",
            xs.len(),
            m + 1
        )));
    }
    let table = divided_differences(xs, fs, m + 1);
    let (nonnegative, v0) = sign_check(&table[m - 1].0, &table[m - 1].1, parity(m - 1));
    let (decreasing, v1) = sign_check(&table[m].0, &table[m].1, parity(m));
    let (convex, v2) = sign_check(&table[m + 1].0, &table[m + 1].1, parity(m + 1));
    Ok(MonotoneReport { nonnegative, decreasing, convex, worst_violation: v0.max(v1).max(v2) })
}

fn check_order(m: u32) -> Result<()> {
    if m == 0 || m > 6 {
        return Err(Error::Domain(format!("M_m test supports 1 <= m <= 6, got {m}")));
    }
    Ok(())
}

/// Tests whether `(-1)^{m-1} f^{(m-1)}` is nonnegative, decreasing and
/// convex on the grid, using divided differences.
pub fn check_mm_membership_fn<F>(f: F, m: u32, grid: GridSpec) -> Result<MonotoneReport>
where
    F: Fn(f64) -> Result<f64>,
{
    check_order(m)?;
    let xs = grid.nodes()?;
    let fs = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    mm_on_nodes(&xs, &fs, m)
}

/// `M_m` membership of a multiplier family.
pub fn check_mm_membership(family: &MultiplierFamily, m: u32, grid: GridSpec) -> Result<MonotoneReport> {
    check_order(m)?;
    match family {
        MultiplierFamily::Exp | MultiplierFamily::InversePower { .. } => {
            Ok(MonotoneReport::all_true())
        }
        MultiplierFamily::RieszCutoff { mu } if *mu >= m as f64 => Ok(MonotoneReport::all_true()),
        MultiplierFamily::QPolynomial { terms, .. } if terms.iter().all(|t| t.mu >= m as f64) => {
            Ok(MonotoneReport::all_true())
        }
        MultiplierFamily::Sampled { grid: xs, values } => mm_on_nodes(xs, values, m),
        MultiplierFamily::CesaroRatio { .. } => Err(Error::Unsupported(
            "M_m membership needs a function of a real variable".into(),
        )),
        _ => check_mm_membership_fn(|x| family.eval_h(x), m, grid),
    }
}

/// Convexity of `λ` and of `-λ'`.
///
/// With `alpha = Some(a)` the test is applied to `t ↦ (1 - h(t^a)) / t^a`,
/// the form in which `λ` enters the operators with exponent `a`.
pub fn check_lambda_conditions(family: &MultiplierFamily, alpha: Option<f64>) -> Result<LambdaReport> {
    let a = alpha.unwrap_or(1.0);
    if !(a > 0.0) {
        return Err(Error::Domain(format!("alpha must be positive, got {a}")));
    }
    if a == 1.0 {
        match family {
            MultiplierFamily::Exp | MultiplierFamily::InversePower { .. } => {
                return Ok(LambdaReport { convex: true, neg_derivative_convex: true, worst_violation: 0.0 })
            }
            MultiplierFamily::RieszCutoff { mu } if *mu >= 3.0 => {
                return Ok(LambdaReport { convex: true, neg_derivative_convex: true, worst_violation: 0.0 })
            }
            _ => {}
        }
    }
    let (ts, ls) = match family {
        MultiplierFamily::CesaroRatio { .. } => {
            return Err(Error::Unsupported("lambda needs a function of a real variable".into()))
        }
        MultiplierFamily::Sampled { grid, values } => {
            let ts: Vec<f64> = grid.iter().map(|x| x.powf(1.0 / a)).collect();
            let ls: Vec<f64> = grid.iter().zip(values).map(|(x, v)| (1.0 - v) / x).collect();
            (ts, ls)
        }
        _ => {
            let ts = GridSpec::default().nodes()?;
            let ls = ts
                .iter()
                .map(|&t| {
                    let x = t.powf(a);
                    family.one_minus_h(x).map(|v| v / x)
                })
                .collect::<Result<Vec<_>>>()?;
            (ts, ls)
        }
    };
    if ts.len() < 4 {
        return Err(Error::GridTooCoarse("need at least four nodes".into()));
    }
    let table = divided_differences(&ts, &ls, 3);
    let (mut convex, v2) = sign_check(&table[2].0, &table[2].1, 1.0);
    let (mut third, v3) = sign_check(&table[3].0, &table[3].1, -1.0);
    if let (MultiplierFamily::RieszCutoff { mu }, true) = (family, a == 1.0) {
        convex = *mu >= 2.0;
        third = *mu >= 3.0;
    }
    Ok(LambdaReport { convex, neg_derivative_convex: third, worst_violation: v2.max(v3) })
}
