use super::types::{ClassParams, Justification, OperatorParams};
use crate::error::Error;
use crate::multipliers::{
    check_lambda_conditions, check_mm_membership, gamma_m, m_of_h, GridSpec, MultiplierFamily,
};

const EPS: f64 = 1e-12;

fn ge(a: f64, b: f64) -> bool {
    a >= b - EPS
}

fn le(a: f64, b: f64) -> bool {
    a <= b + EPS
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS
}

/// `r = 1 or r ≥ 2` for odd `β`, `r = 2 or r ≥ 3` for even `β`.
fn integer_split(odd: bool, r: f64) -> bool {
    let base = if odd { 1.0 } else { 2.0 };
    near(r, base) || ge(r, base + 1.0)
}

/// Whether `(1 + γ|t|^α) h(|t|^α)` is a known positive definite function.
pub fn positive_definite(family: &MultiplierFamily, alpha: f64, gamma: f64) -> bool {
    let plain = near(gamma, 0.0);
    match family {
        MultiplierFamily::Exp => {
            (plain && alpha > 0.0 && le(alpha, 2.0))
                || (near(alpha, 1.0) && ge(gamma, -1.0) && le(gamma, 1.0))
        }
        MultiplierFamily::InversePower { .. } => plain && alpha > 0.0 && le(alpha, 2.0),
        MultiplierFamily::RieszCutoff { mu } => {
            let mu = *mu;
            (near(alpha, 1.0) && ge(gamma, -3.0) && le(gamma, 0.0) && (near(mu, 1.0) || ge(mu, 2.0)))
                || (plain && le(alpha, 1.0) && ge(mu, 1.0))
        }
        _ => false,
    }
}

/// `γ_m(ρ, h)`, or the value at `ρ = 1` (a lower bound) when only that is known.
fn gamma_bound(family: &MultiplierFamily, m: u32, rho: f64) -> Option<f64> {
    match gamma_m(family, m, rho) {
        Ok(g) => Some(g),
        Err(Error::Unsupported(_)) if rho > 1.0 && rho < 2.0 => gamma_m(family, m, 1.0).ok(),
        Err(_) => None,
    }
}

/// `0 < h(+0) ≤ 1` and `h(+∞) = 0` for the built-in families.
fn vanishes_at_infinity(family: &MultiplierFamily) -> bool {
    matches!(
        family,
        MultiplierFamily::Exp
            | MultiplierFamily::InversePower { .. }
            | MultiplierFamily::RieszCutoff { .. }
            | MultiplierFamily::QPolynomial { .. }
    )
}

fn in_class(family: &MultiplierFamily, m: u32) -> bool {
    check_mm_membership(family, m, GridSpec::default()).map(|r| r.passed()).unwrap_or(false)
}

fn polynomial_case(
    family: &MultiplierFamily,
    odd: bool,
    r: f64,
    alpha: f64,
    n: u32,
    plain: bool,
) -> Option<Justification> {
    let MultiplierFamily::QPolynomial { terms, .. } = family else {
        return None;
    };
    let admissible = terms.iter().all(|t| t.a > 0.0 && ge(t.mu, 1.0));
    if !(admissible && alpha > 0.0 && le(alpha, 1.0) && n == 1 && plain && integer_split(odd, r)) {
        return None;
    }
    Some(if odd { Justification::PolynomialOdd } else { Justification::PolynomialEven })
}

/// The first known result, in a fixed priority order, whose hypotheses hold.
pub fn check_applicability(
    class: &ClassParams,
    op: &OperatorParams,
    family: &MultiplierFamily,
) -> Justification {
    let odd = class.beta_odd();
    let one = class.n == 1;
    let (r, a, g) = (class.r, op.alpha, op.gamma);
    let plain = near(g, 0.0);

    if plain && le(a, 1.0) && ge(r, a) {
        if let Ok(lambda) = check_lambda_conditions(family, None) {
            if lambda.convex {
                if odd {
                    return Justification::LambdaConvexOdd;
                }
                if lambda.neg_derivative_convex {
                    return Justification::LambdaConvexEvenStrong;
                }
                if one && ge(r, a + 1.0) {
                    return Justification::LambdaConvexEven;
                }
            }
        }
    }

    if plain && one {
        if let Ok(m) = m_of_h(family) {
            if m.is_finite() {
                let m = m.max(0.0);
                if odd && ge(r, a * m + 1.0) {
                    return Justification::MhOdd;
                }
                if !odd && ge(r, a * m + 2.0) {
                    return Justification::MhEven;
                }
            }
        }
    }

    let rho = op.rho;
    if vanishes_at_infinity(family) && in_class(family, 2) {
        if gamma_bound(family, 1, rho).is_some_and(|g1| le(g, g1)) {
            let small = le(a, 1.0);
            if odd && small && ge(r, a * rho) {
                return Justification::WeightedOddSmallAlpha;
            }
            if !odd && small && ge(r, a * rho) && in_class(family, 3) {
                if gamma_bound(family, 2, rho).is_some_and(|g2| le(g, g2)) {
                    return Justification::WeightedEvenStrong;
                }
            }
            if one {
                if odd && !small && ge(r, a * rho + 1.0) {
                    return Justification::WeightedOddLargeAlpha;
                }
                if !odd && small && ge(r, a * rho + 1.0) {
                    return Justification::WeightedEvenSmallAlpha;
                }
                if !odd && !small && ge(r, a * rho + 2.0) {
                    return Justification::WeightedEvenLargeAlpha;
                }
            }
        }
    }

    if one && positive_definite(family, a, g) && integer_split(odd, r) {
        return Justification::PositiveDefinite;
    }

    polynomial_case(family, odd, r, a, class.n, plain).unwrap_or(Justification::Unverified)
}

/// Tag for the polynomial means, falling back to the general verdict.
pub(crate) fn polynomial_applicability(
    class: &ClassParams,
    op: &OperatorParams,
    family: &MultiplierFamily,
) -> Justification {
    polynomial_case(family, class.beta_odd(), class.r, op.alpha, class.n, near(op.gamma, 0.0))
        .unwrap_or_else(|| check_applicability(class, op, family))
}

/// Tag for the Cesàro means of order `α ≥ 1`.
pub(crate) fn cesaro_applicability(class: &ClassParams, alpha: f64) -> Justification {
    let odd = class.beta_odd();
    if class.n != 1 || !ge(alpha, 1.0) || !integer_split(odd, class.r) {
        return Justification::Unverified;
    }
    if odd {
        Justification::CesaroOdd
    } else {
        Justification::CesaroEven
    }
}
