use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use periodic_approx::multipliers::{MultiplierFamily, QForm, QTerm};
use periodic_approx::series::{ClassParams, Norm, OperatorParams};
use serde_json::{Map, Value};

use crate::output::number;

#[derive(Parser, Debug)]
#[command(name = "papprox", version, about = "Approximation values of periodic function classes by linear means")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Value of the approximation, its tail bound and the applicable result.
    Value(ValueArgs),
    /// Small-delta expansion of the value.
    Asymptote(AsymptoteArgs),
    /// Compare the series with the kernel oracle.
    Verify(VerifyArgs),
    /// Cesàro means, optionally checking the order-mixing identity.
    Cesaro(CesaroArgs),
    /// Evaluate the value over a grid of one or two parameters.
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Exp,
    InversePower,
    Riesz,
    Qpoly,
    Cesaro,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Exp => "exp",
            FamilyKind::InversePower => "inverse-power",
            FamilyKind::Riesz => "riesz",
            FamilyKind::Qpoly => "qpoly",
            FamilyKind::Cesaro => "cesaro",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Auto,
    Sine,
    Cosine,
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long, value_enum, default_value_t = FamilyKind::Exp)]
    pub family: FamilyKind,
    /// Exponent of the inverse-power and Riesz families.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Terms `a:mu` of the polynomial Q, comma separated.
    #[arg(long, default_value = "1:1")]
    pub q_terms: String,
    /// Use Q((u - x)_+)/Q(u) instead of the delta scaling.
    #[arg(long)]
    pub q_shift: Option<f64>,
    /// Index of the Cesàro mean.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value = "inf")]
    pub p: String,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 8192)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValueArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AsymptoteArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Highest integer power of delta kept.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Self-test on the indicator of (-h, h) instead of a kernel.
    #[arg(long)]
    pub indicator: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CesaroArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Inner order of the mixing identity.
    #[arg(long)]
    pub mixing_gamma: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// `name=start:stop:count`; at most two.
    #[arg(long = "sweep", required = true)]
    pub sweeps: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Fully resolved numeric parameters of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub family: FamilyKind,
    pub mu: Option<f64>,
    pub q_terms: String,
    pub q_shift: Option<f64>,
    pub m: Option<u64>,
    pub alpha: f64,
    pub delta: Option<f64>,
    pub gamma: f64,
    pub rho: f64,
    pub r: Option<f64>,
    pub beta: Option<i64>,
    pub n: u32,
    pub p: String,
    pub tol: f64,
    pub grid: usize,
}

pub const SWEEPABLE: [&str; 9] = ["delta", "alpha", "gamma", "rho", "r", "mu", "m", "n", "beta"];

fn integral(name: &str, v: f64) -> Result<i64> {
    let k = v.round();
    if (v - k).abs() > 1e-9 {
        bail!("--{name} must be an integer, got {v}");
    }
    Ok(k as i64)
}

impl Point {
    pub fn from_args(a: &ParamArgs) -> Self {
        Point {
            family: a.family,
            mu: a.mu,
            q_terms: a.q_terms.clone(),
            q_shift: a.q_shift,
            m: a.m,
            alpha: a.alpha,
            delta: a.delta,
            gamma: a.gamma,
            rho: a.rho,
            r: a.r,
            beta: a.beta,
            n: a.n,
            p: a.p.clone(),
            tol: a.tol,
            grid: a.grid,
        }
    }

    pub fn set(&mut self, name: &str, v: f64) -> Result<()> {
        match name {
            "delta" => self.delta = Some(v),
            "alpha" => self.alpha = v,
            "gamma" => self.gamma = v,
            "rho" => self.rho = v,
            "r" => self.r = Some(v),
            "mu" => self.mu = Some(v),
            "m" => self.m = Some(u64::try_from(integral(name, v)?).map_err(|_| anyhow!("--m must be >= 0"))?),
            "n" => self.n = u32::try_from(integral(name, v)?).map_err(|_| anyhow!("--n must be >= 1"))?,
            "beta" => self.beta = Some(integral(name, v)?),
            _ => bail!("cannot sweep '{name}'; choose one of {}", SWEEPABLE.join(", ")),
        }
        Ok(())
    }

    pub fn r(&self) -> Result<f64> {
        self.r.ok_or_else(|| anyhow!("missing required flag --r"))
    }

    pub fn beta(&self) -> Result<i64> {
        self.beta.ok_or_else(|| anyhow!("missing required flag --beta"))
    }

    pub fn delta(&self) -> Result<f64> {
        self.delta.ok_or_else(|| anyhow!("missing required flag --delta"))
    }

    pub fn m(&self) -> Result<u64> {
        self.m.ok_or_else(|| anyhow!("missing required flag --m"))
    }

    pub fn mu(&self) -> Result<f64> {
        self.mu.ok_or_else(|| anyhow!("missing required flag --mu for the {} family", self.family.name()))
    }

    pub fn class(&self) -> Result<ClassParams> {
        let p: Norm = self.p.parse()?;
        Ok(ClassParams::new(self.r()?, self.beta()?, self.n, p)?)
    }

    pub fn operator(&self) -> Result<OperatorParams> {
        Ok(OperatorParams::new(self.alpha, self.delta()?, self.gamma, self.rho)?)
    }

    pub fn q_terms(&self) -> Result<Vec<QTerm>> {
        self.q_terms
            .split(',')
            .map(|t| {
                let (a, mu) = t.split_once(':').ok_or_else(|| anyhow!("q term '{t}' is not of the form a:mu"))?;
                Ok(QTerm {
                    a: a.trim().parse().with_context(|| format!("bad coefficient in q term '{t}'"))?,
                    mu: mu.trim().parse().with_context(|| format!("bad exponent in q term '{t}'"))?,
                })
            })
            .collect()
    }

    /// Multiplier family for the kernel-based families.
    pub fn multiplier(&self) -> Result<MultiplierFamily> {
        Ok(match self.family {
            FamilyKind::Exp => MultiplierFamily::Exp,
            FamilyKind::InversePower => MultiplierFamily::inverse_power(self.mu()?)?,
            FamilyKind::Riesz => MultiplierFamily::riesz(self.mu()?)?,
            FamilyKind::Qpoly => {
                let form = match self.q_shift {
                    Some(u) => QForm::Shifted { u },
                    None => QForm::Unit,
                };
                MultiplierFamily::q_polynomial(self.q_terms()?, form)?
            }
            FamilyKind::Cesaro => bail!("the cesaro family has no kernel multiplier here; use `value` or `cesaro`"),
        })
    }

    /// The `params` object of a JSON record.
    pub fn to_json(&self, command: &str) -> Value {
        let opt = |v: Option<f64>| v.map(number).unwrap_or(Value::Null);
        let mut m = Map::new();
        m.insert("command".into(), command.into());
        m.insert("family".into(), self.family.name().into());
        m.insert("mu".into(), opt(self.mu));
        m.insert("q_terms".into(), self.q_terms.clone().into());
        m.insert("q_shift".into(), opt(self.q_shift));
        m.insert("m".into(), self.m.map(Value::from).unwrap_or(Value::Null));
        m.insert("alpha".into(), number(self.alpha));
        m.insert("delta".into(), opt(self.delta));
        m.insert("gamma".into(), number(self.gamma));
        m.insert("rho".into(), number(self.rho));
        m.insert("r".into(), opt(self.r));
        m.insert("beta".into(), self.beta.map(Value::from).unwrap_or(Value::Null));
        m.insert("n".into(), self.n.into());
        m.insert("p".into(), self.p.clone().into());
        m.insert("tol".into(), number(self.tol));
        m.insert("grid".into(), self.grid.into());
        Value::Object(m)
    }
}

/// A parsed `name=start:stop:count` range.
#[derive(Debug, Clone, PartialEq)]
pub struct Range {
    pub name: String,
    pub points: Vec<f64>,
}

pub fn parse_range(spec: &str) -> Result<Range> {
    let (name, range) = spec.split_once('=').ok_or_else(|| anyhow!("range '{spec}' is not name=start:stop:count"))?;
    let name = name.trim();
    if !SWEEPABLE.contains(&name) {
        bail!("cannot sweep '{name}'; choose one of {}", SWEEPABLE.join(", "));
    }
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        bail!("range '{spec}' is not name=start:stop:count");
    };
    let start: f64 = start.trim().parse().with_context(|| format!("bad start in '{spec}'"))?;
    let stop: f64 = stop.trim().parse().with_context(|| format!("bad stop in '{spec}'"))?;
    let count: usize = count.trim().parse().with_context(|| format!("bad count in '{spec}'"))?;
    if count == 0 {
        bail!("range '{spec}' is empty");
    }
    if !start.is_finite() || !stop.is_finite() {
        bail!("range '{spec}' has a non-finite end point");
    }
    let points = if count == 1 {
        vec![start]
    } else {
        (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect()
    };
    Ok(Range { name: name.to_string(), points })
}
