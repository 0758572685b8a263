//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use periodic_approx::asymptotics::{abel_expansion, ExpansionKind, ExpansionSeries};
use periodic_approx::multipliers::{gamma_m, m_of_h_numeric, MultiplierFamily};
use periodic_approx::oracle::{
    extremal_value, l1_best_approx, positivity_check, sign_condition_check, synthesize_kernel, KernelSpec,
    PeriodicSamples, SignMode, TStar,
};
use periodic_approx::series::{
    approx_value, approx_value_with_form, cesaro_mixing_identity, cesaro_value, ClassParams, Norm, OperatorParams,
    SeriesForm,
};
use periodic_approx::special::{cesaro_number, hurwitz_zeta, hurwitz_zeta_alternating};
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn series_value(family: &MultiplierFamily, r: f64, beta: i64, n: u32, alpha: f64, delta: f64, tol: f64) -> Result<f64, String> {
    let class = ClassParams::new(r, beta, n, Norm::One).map_err(fail)?;
    let op = OperatorParams::new(alpha, delta, 0.0, 1.0).map_err(fail)?;
    Ok(approx_value(&class, &op, family, tol).map_err(fail)?.value)
}

fn special_functions() -> Check {
    let mut worst: f64 = 0.0;
    let z2 = (hurwitz_zeta(2.0, 0.5).map_err(fail)? - PI * PI / 2.0).abs();
    let alt = (hurwitz_zeta_alternating(1.0, 0.5).map_err(fail)? - PI / 2.0).abs();
    for s in [-3.0, -1.0, 0.5, 2.0, 4.0] {
        let lhs = hurwitz_zeta(s, 0.5).map_err(fail)?;
        let rhs = (2f64.powf(s) - 1.0) * hurwitz_zeta(s, 1.0).map_err(fail)?;
        worst = worst.max((lhs - rhs).abs());
    }
    let mut identity: f64 = 0.0;
    for &alpha in &[0.5, 1.0, 2.0, 3.7] {
        for n in 0..=50i64 {
            let a = cesaro_number(n, alpha);
            let pascal: f64 = (0..=n).map(|k| cesaro_number(k, alpha - 1.0)).sum();
            identity = identity.max((pascal - a).abs() / a.abs());
            for &gamma in &[0.5, 1.0, 2.5] {
                let conv: f64 = (0..=n).map(|k| cesaro_number(n - k, alpha - gamma) * cesaro_number(k, gamma - 1.0)).sum();
                identity = identity.max((conv - a).abs() / a.abs());
            }
        }
    }
    let detail = format!("zeta(2,1/2) err {z2:.1e}, alt zeta(1,1/2) err {alt:.1e}, duplication err {worst:.1e}, A_n identities rel err {identity:.1e}");
    ensure(z2 <= 1e-12 && alt <= 1e-12 && worst <= 1e-10 && identity <= 1e-12, detail)
}

fn indicator_oracle() -> Check {
    let h = PI / 8.0;
    let err = |n: usize| -> Result<f64, String> {
        let s = PeriodicSamples::from_fn(n, |t| if t.abs() <= h { 1.0 } else { 0.0 }).map_err(fail)?;
        Ok((l1_best_approx(&s, 1).map_err(fail)?.value - 2.0 * h).abs())
    };
    let (coarse, fine) = (err(4096)?, err(8192)?);
    let ratio = coarse / fine;
    ensure(
        coarse <= 2e-3 && (ratio - 2.0).abs() <= 0.2,
        format!("N=4096 err {coarse:.3e}, N=8192 err {fine:.3e}, ratio {ratio:.3}"),
    )
}

fn three_way() -> Check {
    let families = [MultiplierFamily::Exp, MultiplierFamily::InversePower { mu: 2.0 }];
    let (mut worst_ext, mut worst_lp): (f64, f64) = (0.0, 0.0);
    let mut count = 0;
    for family in &families {
        for beta in [0i64, 1] {
            for alpha in [0.5, 1.0] {
                for delta in [0.3, 1.0] {
                    let series = 2.0 * PI * series_value(family, 2.0, beta, 1, alpha, delta, 1e-13)?;
                    let spec = KernelSpec::approximation(family, 2.0, beta, alpha, delta, 0.0).map_err(fail)?;
                    let samples = synthesize_kernel(&spec, 8192, 1e-11).map_err(fail)?;
                    let ext = 2.0 * PI * extremal_value(&samples, 1, SignMode::for_beta(beta)).map_err(fail)?;
                    let lp = l1_best_approx(&samples, 1).map_err(fail)?.value;
                    worst_ext = worst_ext.max((series - ext).abs());
                    worst_lp = worst_lp.max((series - lp).abs());
                    count += 1;
                }
            }
        }
    }
    ensure(
        worst_ext <= 5e-4 && worst_lp <= 5e-3,
        format!("{count} points, max |series - 2pi*extremal| {worst_ext:.2e}, max |series - LP| {worst_lp:.2e}"),
    )
}

fn equality_regions() -> Check {
    let mut worst: f64 = 0.0;
    let mut cases = Vec::new();
    for r in [1.0, 2.5] {
        for delta in [0.2, 1.0] {
            cases.push((ExpansionKind::Abel, 1, r, 0.5, delta));
        }
        cases.push((ExpansionKind::Abel, 1, r, 1.0, 1.0));
        cases.push((ExpansionKind::AbelAlternating, 0, r, 1.0, 0.7));
    }
    for (kind, beta, r, alpha, delta) in cases {
        let sum = ExpansionSeries::new(kind, r, alpha).map_err(fail)?.sum(delta).map_err(fail)?.value;
        let direct = series_value(&MultiplierFamily::Exp, r, beta, 1, alpha, delta, 1e-15)?;
        worst = worst.max((sum - direct).abs());
    }
    ensure(worst <= 1e-9, format!("max |expansion - series| {worst:.2e} over 8 points"))
}

fn log_term() -> Check {
    let e = abel_expansion(2.0, 1.0, 2).map_err(fail)?;
    let c1 = e.terms.iter().find(|t| t.exponent == 1.0).ok_or("no delta^1 term")?.coefficient;
    let ell = e.terms.iter().find(|t| t.has_log).ok_or("no logarithmic term")?.log_coefficient;
    let scale = 4.0 / PI;
    let reduced = |d: f64| -> Result<f64, String> {
        Ok((series_value(&MultiplierFamily::Exp, 2.0, 1, 1, 1.0, d, 1e-15)? / scale - c1 * d) / (d * d))
    };
    let (d, h) = (1e-4f64, 0.1f64);
    let slope = (reduced(d * h.exp())? - reduced(d * (-h).exp())?) / (2.0 * h);
    let rel = (slope - ell).abs() / ell.abs();
    ensure(rel <= 0.02, format!("slope {slope:.6}, log coefficient {ell:.6}, rel err {rel:.2e}"))
}

fn gamma_zero_reduction() -> Check {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let family = match rng.gen_range(0..3) {
            0 => MultiplierFamily::Exp,
            1 => MultiplierFamily::InversePower { mu: rng.gen_range(0.5..4.0) },
            _ => MultiplierFamily::RieszCutoff { mu: rng.gen_range(0.5..4.0) },
        };
        let class = ClassParams::new(rng.gen_range(0.5..4.0), rng.gen_range(0..4), rng.gen_range(1..4), Norm::One)
            .map_err(fail)?;
        let op = OperatorParams::new(rng.gen_range(0.3..2.0), rng.gen_range(0.05..3.0), 0.0, 1.0).map_err(fail)?;
        let plain = approx_value_with_form(&class, &op, &family, 1e-12, SeriesForm::Plain).map_err(fail)?.value;
        let weighted = approx_value_with_form(&class, &op, &family, 1e-12, SeriesForm::Weighted).map_err(fail)?.value;
        worst = worst.max((plain - weighted).abs());
    }
    ensure(worst <= 1e-15, format!("max difference {worst:.2e} over 20 random points"))
}

fn cesaro_mixing() -> Check {
    let class = ClassParams::new(2.0, 1, 1, Norm::One).map_err(fail)?;
    let mut worst: f64 = 0.0;
    for (alpha, gamma) in [(2.0, 1.0), (3.5, 1.0), (3.0, 2.0)] {
        for m in 0..=20 {
            let (lhs, rhs) = cesaro_mixing_identity(&class, m, alpha, gamma, 1e-14).map_err(fail)?;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max |lhs - rhs| {worst:.2e} over 63 cases"))
}

fn fejer_limit() -> Check {
    let class = ClassParams::new(2.0, 1, 1, Norm::One).map_err(fail)?;
    let mut errs = Vec::new();
    for m in [10u64, 100, 1000] {
        let v = cesaro_value(&class, m, 1.0, 1e-14).map_err(fail)?.value;
        errs.push(((m + 1) as f64 * v - PI / 2.0).abs());
    }
    ensure(
        errs[0] > errs[1] && errs[1] > errs[2] && errs[2] <= 5e-3,
        format!("errors {:.3e}, {:.3e}, {:.3e}", errs[0], errs[1], errs[2]),
    )
}

fn multiplier_quantities() -> Check {
    let exp = m_of_h_numeric(&MultiplierFamily::Exp, 512).map_err(fail)?;
    let ip = m_of_h_numeric(&MultiplierFamily::InversePower { mu: 3.0 }, 512).map_err(fail)?;
    let ip_f = |mu| MultiplierFamily::InversePower { mu };
    let riesz = |mu| MultiplierFamily::RieszCutoff { mu };
    let table: [(MultiplierFamily, u32, f64, f64); 12] = [
        (MultiplierFamily::Exp, 1, 1.0, 1.0 / 3.0),
        (MultiplierFamily::Exp, 2, 1.0, 0.25),
        (MultiplierFamily::Exp, 3, 2.0, 1.0),
        (ip_f(2.0), 2, 1.0, 1.25),
        (ip_f(3.0), 1, 1.0, 5.0 / 3.0),
        (ip_f(2.0), 1, 3.0, 2.0),
        (ip_f(1.0), 4, 1.7, 1.0),
        (riesz(3.0), 1, 2.0, 3.0),
        (riesz(5.0), 2, 1.0, 0.5),
        (riesz(4.0), 1, 1.0, 2.0 / 3.0),
        (riesz(3.0), 2, 2.5, 3.0),
        (MultiplierFamily::Exp, 6, 1.0, 0.125),
    ];
    let mut mismatches = 0;
    for (f, m, rho, want) in &table {
        if gamma_m(f, *m, *rho).map_err(fail)? != *want {
            mismatches += 1;
        }
    }
    let (e1, e2) = ((exp - 1.0).abs(), (ip - 1.0).abs());
    ensure(
        e1 <= 1e-4 && e2 <= 1e-4 && mismatches == 0,
        format!("m(h) err exp {e1:.1e}, inverse-power 3 {e2:.1e}; gamma_m mismatches {mismatches}/12"),
    )
}

fn sign_certificates() -> Check {
    let sine_kernel = KernelSpec::approximation(&MultiplierFamily::Exp, 1.0, 1, 1.0, 0.5, 0.0).map_err(fail)?;
    let sine = synthesize_kernel(&sine_kernel, 8192, 1e-12).map_err(fail)?;
    let sine_report = sign_condition_check(&sine, 1, SignMode::Sine, &TStar::Constant(0.0));
    let cos_kernel = KernelSpec::approximation(&MultiplierFamily::Exp, 2.0, 0, 1.0, 0.5, 0.0).map_err(fail)?;
    let cos = synthesize_kernel(&cos_kernel, 8192, 1e-12).map_err(fail)?;
    let t_star = TStar::Constant(cos.values()[3 * 8192 / 4]);
    let cos_report = sign_condition_check(&cos, 1, SignMode::Cosine, &t_star);
    let poisson: Vec<f64> = (0..=200).map(|k| 0.7f64.powi(k)).collect();
    let poisson_report = positivity_check(&poisson, 4096, 200).map_err(fail)?;
    let fejer: Vec<f64> = (0..=6).map(|k| cesaro_number(6 - k, 1.0) / cesaro_number(6, 1.0)).collect();
    let fejer_report = positivity_check(&fejer, 4096, 7).map_err(fail)?;
    ensure(
        sine_report.min >= -1e-9 && cos_report.passed && poisson_report.passed && fejer_report.passed,
        format!(
            "sine min {:.2e}, cosine min {:.2e}, Poisson min {:.2e}, Fejer min {:.2e}",
            sine_report.min, cos_report.min, poisson_report.min, fejer_report.min
        ),
    )
}

fn scaling_law() -> Check {
    let (r, alpha) = (1.5, 0.7);
    let mut worst: f64 = 0.0;
    for delta in [0.05, 0.3, 1.0, 2.5] {
        let two = series_value(&MultiplierFamily::Exp, r, 1, 2, alpha, delta, 1e-16)?;
        let one = series_value(&MultiplierFamily::Exp, r, 1, 1, alpha, 2f64.powf(alpha) * delta, 1e-16)?;
        worst = worst.max((two - 2f64.powf(-r) * one).abs());
    }
    ensure(worst <= 1e-14, format!("max difference {worst:.2e} over 4 deltas"))
}

fn cli_contract() -> Check {
    let bin = env!("CARGO_BIN_EXE_papprox");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map_err(fail);
    let sweep = ["sweep", "--family", "exp", "--r", "1", "--beta", "1", "--sweep", "delta=0.01:1:50", "--sweep", "alpha=0.5:1:3"];
    let (a, b) = (run(&sweep)?, run(&sweep)?);
    let identical = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    let expectations: [(&[&str], i32); 8] = [
        (&["value", "--family", "exp", "--alpha", "1", "--delta", "0.5", "--r", "1", "--beta", "1"], 0),
        (&["value", "--alpha", "3", "--delta", "0.5", "--r", "1", "--beta", "0", "--n", "2"], 0),
        (&["value", "--family", "exp", "--r", "1", "--beta", "1"], 2),
        (&["verify", "--r", "2", "--beta", "1", "--delta", "1"], 0),
        (&["verify", "--r", "2", "--beta", "0", "--delta", "1", "--mode", "sine"], 1),
        (&["verify", "--r", "0.5", "--beta", "0", "--delta", "1"], 2),
        (&["sweep", "--r", "1", "--beta", "1", "--sweep", "delta=0.1:1:0"], 2),
        (&["sweep", "--r", "1", "--beta", "1", "--sweep", "delta=0.1-1"], 2),
    ];
    let mut wrong = Vec::new();
    for (args, want) in expectations {
        let got = run(args)?.status.code().unwrap_or(-1);
        if got != want {
            wrong.push(format!("{} -> {got} (want {want})", args.join(" ")));
        }
    }
    ensure(
        identical && wrong.is_empty(),
        format!("byte-identical sweep: {identical}; exit-code mismatches: {}", if wrong.is_empty() { "none".into() } else { wrong.join("; ") }),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("special functions", special_functions),
        ("indicator oracle", indicator_oracle),
        ("three-way agreement", three_way),
        ("expansion equality regions", equality_regions),
        ("logarithmic term", log_term),
        ("zero-gamma reduction", gamma_zero_reduction),
        ("Cesaro mixing identity", cesaro_mixing),
        ("Fejer limit", fejer_limit),
        ("multiplier quantities", multiplier_quantities),
        ("sign certificates", sign_certificates),
        ("scaling law", scaling_law),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
