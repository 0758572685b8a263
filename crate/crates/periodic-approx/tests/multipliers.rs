use periodic_approx::multipliers::{
    check_lambda_conditions, check_mm_membership, check_mm_membership_fn, gamma_m,
    lambda_rho_gamma, m_of_h, m_of_h_numeric, GridSpec, LambdaParams, MultiplierFamily, QForm,
    QTerm,
};
use periodic_approx::Error;
use proptest::prelude::*;

fn ip(mu: f64) -> MultiplierFamily {
    MultiplierFamily::InversePower { mu }
}

fn riesz(mu: f64) -> MultiplierFamily {
    MultiplierFamily::RieszCutoff { mu }
}

#[test]
fn eval_examples() {
    assert_eq!(MultiplierFamily::Exp.eval_h(0.0).unwrap(), 1.0);
    assert_eq!(riesz(2.0).eval_h(1.5).unwrap(), 0.0);
    assert_eq!(riesz(2.0).eval_h(1.0).unwrap(), 0.0);
    assert_eq!(ip(1.0).eval_h(1.0).unwrap(), 0.5);
    assert!(MultiplierFamily::Exp.eval_h(-1.0).is_err());
}

#[test]
fn q_polynomial_forms() {
    let q = vec![QTerm { a: 1.0, mu: 2.0 }];
    let shifted = MultiplierFamily::q_polynomial(q.clone(), QForm::Shifted { u: 4.0 }).unwrap();
    let unit = MultiplierFamily::q_polynomial(q, QForm::Unit).unwrap();
    for &k in &[0.0, 1.0, 2.0, 3.0, 5.0] {
        let a = shifted.eval_h(k).unwrap();
        let b = unit.eval_h(k / 4.0).unwrap();
        assert!((a - b).abs() < 1e-15);
    }
    assert!(MultiplierFamily::q_polynomial(vec![QTerm { a: -1.0, mu: 1.0 }], QForm::Unit).is_err());
}

#[test]
fn m_of_h_closed_forms() {
    assert_eq!(m_of_h(&MultiplierFamily::Exp).unwrap(), 1.0);
    assert_eq!(m_of_h(&ip(3.0)).unwrap(), 1.0);
    assert_eq!(m_of_h(&riesz(1.0)).unwrap(), 1.0);
    assert_eq!(m_of_h(&riesz(0.5)).unwrap(), f64::INFINITY);
    let one = MultiplierFamily::sampled(vec![0.5, 1.0, 2.0], vec![1.0, 1.0, 1.0]).unwrap();
    assert_eq!(m_of_h(&one).unwrap(), f64::NEG_INFINITY);
}

#[test]
fn m_of_h_numeric_matches_closed_forms() {
    for family in [MultiplierFamily::Exp, ip(0.5), ip(1.0), ip(3.0), riesz(1.0), riesz(2.5)] {
        let m = m_of_h_numeric(&family, 512).unwrap();
        assert!((m - 1.0).abs() <= 1e-4, "{family:?}: {m}");
    }
}

#[test]
fn m_of_h_numeric_detects_blowup() {
    // For μ < 1 the quotient is unbounded near x = 1; the probe sup is large.
    let m = m_of_h_numeric(&riesz(0.5), 2048).unwrap();
    assert!(m > 5.0);
}

#[test]
fn m_of_h_sampled_power() {
    // h(x) = 1 - x^{0.7} on [0.01, 1]: h'x/(h-1) = 0.7 everywhere.
    let xs: Vec<f64> = (0..400).map(|i| 0.01 * (1.0f64 / 0.01).powf(i as f64 / 399.0)).collect();
    let hs: Vec<f64> = xs.iter().map(|x| 1.0 - x.powf(0.7)).collect();
    let f = MultiplierFamily::sampled(xs, hs).unwrap();
    let m = m_of_h(&f).unwrap();
    assert!((m - 0.7).abs() < 2e-3, "{m}");
}

#[test]
fn m_of_h_rejects_h_above_one() {
    let f = MultiplierFamily::sampled(vec![0.5, 1.0, 2.0], vec![1.0, 1.5, 0.0]).unwrap();
    assert!(matches!(m_of_h(&f), Err(Error::Precondition(_))));
}

#[test]
fn gamma_m_table() {
    let cases: &[(MultiplierFamily, u32, f64, f64)] = &[
        (MultiplierFamily::Exp, 1, 1.0, 1.0 / 3.0),
        (MultiplierFamily::Exp, 2, 1.0, 0.25),
        (MultiplierFamily::Exp, 3, 2.0, 1.0),
        (ip(2.0), 2, 1.0, 1.25),
        (ip(3.0), 1, 1.0, 5.0 / 3.0),
        (ip(2.0), 1, 3.0, 2.0),
        (ip(1.0), 4, 1.7, 1.0),
        (riesz(3.0), 1, 2.0, 3.0),
        (riesz(5.0), 2, 1.0, 0.5),
        (riesz(4.0), 1, 1.0, 2.0 / 3.0),
        (riesz(3.0), 2, 2.5, 3.0),
        (MultiplierFamily::Exp, 6, 1.0, 0.125),
    ];
    for (f, m, rho, want) in cases {
        assert_eq!(gamma_m(f, *m, *rho).unwrap(), *want, "{f:?} m={m} rho={rho}");
    }
    assert!(matches!(gamma_m(&riesz(2.5), 2, 1.0), Err(Error::Unsupported(_))));
    assert!(matches!(gamma_m(&ip(0.5), 1, 1.0), Err(Error::Unsupported(_))));
    assert!(matches!(gamma_m(&MultiplierFamily::Exp, 1, 1.5), Err(Error::Unsupported(_))));
}

fn supported() -> Vec<MultiplierFamily> {
    vec![MultiplierFamily::Exp, ip(1.0), ip(2.0), ip(3.5), riesz(4.0), riesz(6.5)]
}

#[test]
fn gamma_m_is_monotone() {
    for f in supported() {
        for m in 1..=2u32 {
            let g: Vec<f64> = [1.0, 2.0, 3.0].iter().map(|&r| gamma_m(&f, m, r).unwrap()).collect();
            assert!(g[0] <= g[1] && g[1] <= g[2], "{f:?} m={m}");
            for &rho in &[1.0, 2.0, 3.0] {
                let next = gamma_m(&f, m + 1, rho).unwrap();
                assert!(next <= gamma_m(&f, m, rho).unwrap(), "{f:?} m={m} rho={rho}");
            }
        }
    }
}

#[test]
fn lambda_at_gamma_m_lies_in_m_m() {
    for f in supported() {
        for m in 1..=2u32 {
            for &rho in &[1.0, 2.0, 3.0] {
                let gm = gamma_m(&f, m, rho).unwrap();
                for &gamma in &[gm, 0.5 * gm, 0.0] {
                    let p = LambdaParams::new(rho, gamma).unwrap();
                    let report =
                        check_mm_membership_fn(|x| lambda_rho_gamma(&f, p, x), m, GridSpec::default())
                            .unwrap();
                    assert!(
                        report.passed() && report.worst_violation <= 1e-8,
                        "{f:?} m={m} rho={rho} gamma={gamma}: {report:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn lambda_above_gamma_m_leaves_m_1() {
    // γ well above γ_1(1,h) = 1/3 breaks M_1 for the exponential.
    let p = LambdaParams::new(1.0, 1.5).unwrap();
    let r = check_mm_membership_fn(
        |x| lambda_rho_gamma(&MultiplierFamily::Exp, p, x),
        1,
        GridSpec::default(),
    )
    .unwrap();
    assert!(!r.passed());
}

#[test]
fn membership_examples() {
    let g = GridSpec::default();
    assert!(check_mm_membership(&MultiplierFamily::Exp, 4, g).unwrap().passed());
    let r = check_mm_membership(&riesz(2.0), 3, g).unwrap();
    assert!(!r.passed());
    assert!(r.worst_violation > 1e-6);
    let xs: Vec<f64> = (0..100).map(|i| 0.1 + 9.9 * i as f64 / 99.0).collect();
    let hs: Vec<f64> = xs.iter().map(|x| 1.0 / x).collect();
    let s = MultiplierFamily::sampled(xs, hs).unwrap();
    let r = check_mm_membership(&s, 1, g).unwrap();
    assert!(r.nonnegative && r.decreasing && r.convex);
}

#[test]
fn numeric_membership_agrees_with_analytic_facts() {
    let g = GridSpec::default();
    for m in 1..=4u32 {
        let r = check_mm_membership_fn(|x| Ok((-x).exp()), m, g).unwrap();
        assert!(r.passed(), "exp m={m}: {r:?}");
        let r = check_mm_membership_fn(|x| Ok((1.0 + x).powf(-2.5)), m, g).unwrap();
        assert!(r.passed(), "inverse power m={m}: {r:?}");
    }
    for (mu, m, member) in [(3.0, 3, true), (2.5, 3, false), (1.0, 2, false), (2.0, 2, true)] {
        let r = check_mm_membership_fn(|x| riesz(mu).eval_h(x), m, g).unwrap();
        assert_eq!(r.passed(), member, "riesz mu={mu} m={m}: {r:?}");
    }
}

#[test]
fn membership_rejects_bad_orders() {
    let tiny = GridSpec { lo: 1.0, hi: 2.0, points: 3 };
    assert!(matches!(
        check_mm_membership(&riesz(0.5), 1, tiny),
        Err(Error::GridTooCoarse(_))
    ));
    assert!(check_mm_membership(&MultiplierFamily::Exp, 7, GridSpec::default()).is_err());
}

#[test]
fn lambda_condition_examples() {
    let e = check_lambda_conditions(&MultiplierFamily::Exp, None).unwrap();
    assert!(e.convex && e.neg_derivative_convex);
    let p = check_lambda_conditions(&ip(2.0), None).unwrap();
    assert!(p.convex && p.neg_derivative_convex);
    let r = check_lambda_conditions(&riesz(2.5), None).unwrap();
    assert!(r.convex && !r.neg_derivative_convex);
    let r = check_lambda_conditions(&riesz(3.0), None).unwrap();
    assert!(r.convex && r.neg_derivative_convex);
}

#[test]
fn riesz_unit_mu_lambda_has_concave_corner() {
    // λ = 1 on (0,1] and 1/x beyond: the slope drops from 0 to -1 at x = 1.
    let r = check_lambda_conditions(&riesz(1.0), None).unwrap();
    assert!(!r.convex && !r.neg_derivative_convex);
    assert!(r.worst_violation > 1e-6);
}

#[test]
fn lambda_conditions_numeric_on_samples() {
    let xs: Vec<f64> = (0..300).map(|i| 0.01 * 1e4f64.powf(i as f64 / 299.0)).collect();
    let hs: Vec<f64> = xs.iter().map(|x| (-x).exp()).collect();
    let s = MultiplierFamily::sampled(xs, hs).unwrap();
    let r = check_lambda_conditions(&s, None).unwrap();
    assert!(r.convex && r.neg_derivative_convex, "{r:?}");
    let scaled = check_lambda_conditions(&MultiplierFamily::Exp, Some(0.5)).unwrap();
    assert!(scaled.convex, "{scaled:?}");
}

proptest! {
    #[test]
    fn analytic_families_stay_in_unit_interval(x in 0.0f64..50.0, mu in 0.1f64..6.0) {
        for f in [MultiplierFamily::Exp, ip(mu), riesz(mu)] {
            let h = f.eval_h(x).unwrap();
            prop_assert!((0.0..=1.0).contains(&h));
            let g = f.one_minus_h(x).unwrap();
            prop_assert!((h + g - 1.0).abs() <= 2e-16 * (1.0 + h.abs()) + 1e-16);
        }
    }

    #[test]
    fn sampled_interpolant_stays_between_nodes(x in 0.5f64..8.0) {
        let grid = vec![0.5, 1.0, 2.0, 4.0, 8.0];
        let vals = vec![0.9, 0.7, 0.4, 0.2, 0.1];
        let f = MultiplierFamily::sampled(grid.clone(), vals.clone()).unwrap();
        let h = f.eval_h(x).unwrap();
        let i = grid.partition_point(|&g| g <= x).clamp(1, grid.len() - 1);
        let (lo, hi) = (vals[i].min(vals[i - 1]), vals[i].max(vals[i - 1]));
        prop_assert!(h >= lo - 1e-15 && h <= hi + 1e-15);
    }

    #[test]
    fn lambda_vanishing_region(x in 1.0f64..100.0, rho in 1.0f64..4.0, gamma in -3.0f64..3.0, mu in 0.5f64..5.0) {
        let p = LambdaParams::new(rho, gamma).unwrap();
        let v = lambda_rho_gamma(&riesz(mu), p, x).unwrap();
        prop_assert!((v - x.powf(-rho)).abs() <= 1e-15 * x.powf(-rho));
    }
}
