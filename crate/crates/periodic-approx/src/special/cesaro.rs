/// Cesàro number `A_n^α`, the coefficient of `x^n` in `(1-x)^{-α-1}`.
///
/// Returns `0` for negative `n` and `1` for `n = 0`.
pub fn cesaro_number(n: i64, alpha: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    if n <= 170 {
        let mut p = 1.0;
        for k in 1..=n {
            let k = k as f64;
            p *= (alpha + k) / k;
        }
        return p;
    }
    let mut ln = 0.0;
    let mut sign = 1.0;
    for k in 1..=n {
        let k = k as f64;
        let f = (alpha + k) / k;
        if f == 0.0 {
            return 0.0;
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln += f.abs().ln();
    }
    sign * ln.exp()
}
