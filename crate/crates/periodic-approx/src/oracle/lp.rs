//! Discrete `L1` best approximation by trigonometric polynomials.
//!
//! The fit `min Σ w |K_j - T(t_j)|` is solved through its dual,
//! `max Σ K_j z_j` subject to `Σ_j φ_i(t_j) z_j = ½ Σ_j φ_i(t_j)` and
//! `0 ≤ z_j ≤ 1`, by a bounded-variable primal simplex. At the optimum the
//! simplex multipliers are the coefficients of the best polynomial, which
//! interpolates `K` at the basic nodes.

use super::samples::{basis_value, poly_on_grid, PeriodicSamples, TrigTable};
use crate::error::{Error, Result};

const MAX_N: u32 = 8;
const IRLS_STEPS: usize = 40;
const STALL_LIMIT: usize = 50;

/// Result of [`l1_best_approx`].
#[derive(Debug, Clone, PartialEq)]
pub struct L1Fit {
    /// `Σ w_j |K_j - T(t_j)|` with `w_j = 2π/N`.
    pub value: f64,
    /// Coefficients of `T` on `1, cos t, sin t, …, cos(n-1)t, sin(n-1)t`.
    pub coeffs: Vec<f64>,
    pub iterations: usize,
}

/// Best `L1` approximation of the samples from `T_n`, the polynomials of
/// degree at most `n - 1`.
pub fn l1_best_approx(samples: &PeriodicSamples, n: u32) -> Result<L1Fit> {
    let big_n = samples.grid_size();
    if n == 0 || n > MAX_N {
        return Err(Error::Domain(format!("n must lie in 1..={MAX_N}, got {n}")));
    }
    let m = 2 * n as usize - 1;
    if 4 * m >= big_n {
        return Err(Error::Domain(format!("2n-1 = {m} must be below N/4 = {}", big_n / 4)));
    }
    let table = TrigTable::new(big_n);
    let values = samples.values();
    match solve(&table, values, m) {
        Ok(fit) => Ok(finish(samples, &table, fit)),
        Err(first) => {
            let scale = 1e-12 * (1.0 + samples.max_abs());
            let jittered: Vec<f64> = values
                .iter()
                .enumerate()
                .map(|(j, v)| v + scale * (((j * 7919) % 1013) as f64 / 1013.0 - 0.5))
                .collect();
            solve(&table, &jittered, m)
                .map(|fit| finish(samples, &table, fit))
                .map_err(|second| Error::Lp(format!("{first}; after perturbation: {second}")))
        }
    }
}

fn finish(samples: &PeriodicSamples, table: &TrigTable, (coeffs, iterations): (Vec<f64>, usize)) -> L1Fit {
    let t = poly_on_grid(table, &coeffs);
    let value = samples.weight() * samples.values().iter().zip(&t).map(|(k, p)| (k - p).abs()).sum::<f64>();
    L1Fit { value, coeffs, iterations }
}

/// Dense LU with partial pivoting of a small square matrix.
struct Lu {
    m: usize,
    a: Vec<f64>,
    piv: Vec<usize>,
}

impl Lu {
    fn new(mut a: Vec<f64>, m: usize) -> Option<Self> {
        let mut piv: Vec<usize> = (0..m).collect();
        let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        for c in 0..m {
            let p = (c..m).max_by(|&i, &j| a[i * m + c].abs().total_cmp(&a[j * m + c].abs()))?;
            if a[p * m + c].abs() <= 1e-13 * scale {
                return None;
            }
            if p != c {
                for k in 0..m {
                    a.swap(p * m + k, c * m + k);
                }
                piv.swap(p, c);
            }
            for i in c + 1..m {
                let f = a[i * m + c] / a[c * m + c];
                a[i * m + c] = f;
                for k in c + 1..m {
                    a[i * m + k] -= f * a[c * m + k];
                }
            }
        }
        Some(Lu { m, a, piv })
    }

    /// Solves `A x = b`.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut x: Vec<f64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 0..m {
            for k in 0..i {
                x[i] -= self.a[i * m + k] * x[k];
            }
        }
        for i in (0..m).rev() {
            for k in i + 1..m {
                x[i] -= self.a[i * m + k] * x[k];
            }
            x[i] /= self.a[i * m + i];
        }
        x
    }

    /// Solves `Aᵀ y = c`.
    fn solve_transposed(&self, c: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = c.to_vec();
        for i in 0..m {
            for k in 0..i {
                y[i] -= self.a[k * m + i] * y[k];
            }
            y[i] /= self.a[i * m + i];
        }
        for i in (0..m).rev() {
            for k in i + 1..m {
                y[i] -= self.a[k * m + i] * y[k];
            }
        }
        let mut out = vec![0.0; m];
        for (i, &p) in self.piv.iter().enumerate() {
            out[p] = y[i];
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum State {
    Lower,
    Upper,
    Basic(usize),
}

struct Simplex<'a> {
    m: usize,
    n: usize,
    /// Column-major constraint matrix, `m` entries per node.
    cols: Vec<f64>,
    b: Vec<f64>,
    cost: &'a [f64],
    /// Sign of each artificial column `±e_i`.
    art_sign: Vec<f64>,
    state: Vec<State>,
    basis: Vec<usize>,
    /// Upper bound of the artificials: unbounded in phase 1, zero after.
    art_upper: f64,
    iterations: usize,
}

impl Simplex<'_> {
    fn column(&self, j: usize) -> Vec<f64> {
        if j < self.n {
            self.cols[j * self.m..(j + 1) * self.m].to_vec()
        } else {
            let mut e = vec![0.0; self.m];
            e[j - self.n] = self.art_sign[j - self.n];
            e
        }
    }

    fn dot_column(&self, y: &[f64], j: usize) -> f64 {
        if j < self.n {
            self.cols[j * self.m..(j + 1) * self.m].iter().zip(y).map(|(a, b)| a * b).sum()
        } else {
            self.art_sign[j - self.n] * y[j - self.n]
        }
    }

    fn upper(&self, j: usize) -> f64 {
        if j < self.n {
            1.0
        } else {
            self.art_upper
        }
    }

    fn factor(&self) -> Result<Lu> {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for (p, &j) in self.basis.iter().enumerate() {
            for (i, v) in self.column(j).into_iter().enumerate() {
                a[i * m + p] = v;
            }
        }
        Lu::new(a, m).ok_or_else(|| Error::Lp("singular basis".into()))
    }

    fn basic_values(&self, lu: &Lu) -> Vec<f64> {
        let mut rhs = self.b.clone();
        for j in 0..self.n {
            if self.state[j] == State::Upper {
                for (r, a) in rhs.iter_mut().zip(&self.cols[j * self.m..(j + 1) * self.m]) {
                    *r -= a;
                }
            }
        }
        lu.solve(&rhs)
    }

    fn cost_of(&self, j: usize, phase_one: bool) -> f64 {
        match (phase_one, j < self.n) {
            (true, true) => 0.0,
            (true, false) => -1.0,
            (false, true) => self.cost[j],
            (false, false) => 0.0,
        }
    }

    /// Runs one phase to optimality; returns the final multipliers.
    fn run(&mut self, phase_one: bool, max_iter: usize) -> Result<Vec<f64>> {
        let cmax = self.cost.iter().fold(1.0f64, |s, c| s.max(c.abs()));
        let dtol = 1e-11 * cmax;
        let mut stall = 0usize;
        loop {
            let lu = self.factor()?;
            let x_b = self.basic_values(&lu);
            let c_b: Vec<f64> = self.basis.iter().map(|&j| self.cost_of(j, phase_one)).collect();
            let y = lu.solve_transposed(&c_b);
            let bland = stall >= STALL_LIMIT;

            let mut entering: Option<(usize, f64)> = None;
            // Artificials never re-enter once they have left.
            for j in 0..self.n {
                let st = self.state[j];
                if matches!(st, State::Basic(_)) {
                    continue;
                }
                let d = self.cost_of(j, phase_one) - self.dot_column(&y, j);
                let improving = (st == State::Lower && d > dtol) || (st == State::Upper && d < -dtol);
                if !improving {
                    continue;
                }
                match entering {
                    None => entering = Some((j, d)),
                    Some((_, best)) if !bland && d.abs() > best.abs() => entering = Some((j, d)),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some((q, _)) = entering else {
                return Ok(y);
            };
            self.iterations += 1;
            if self.iterations > max_iter {
                return Err(Error::Lp(format!("no optimum after {max_iter} iterations")));
            }

            let dir = if self.state[q] == State::Lower { 1.0 } else { -1.0 };
            let w = lu.solve(&self.column(q));
            let mut theta = self.upper(q);
            let mut leave: Option<(usize, bool)> = None;
            let mut best_piv = 0.0;
            for i in 0..self.m {
                let rate = dir * w[i];
                let j = self.basis[i];
                let cand = if rate > 1e-11 {
                    Some(((x_b[i] - 0.0).max(0.0) / rate, false))
                } else if rate < -1e-11 && self.upper(j).is_finite() {
                    Some(((self.upper(j) - x_b[i]).max(0.0) / -rate, true))
                } else {
                    None
                };
                if let Some((t, to_upper)) = cand {
                    let better = t < theta - 1e-14
                        || ((t - theta).abs() <= 1e-14 && leave.is_some() && {
                            if bland {
                                j < self.basis[leave.unwrap().0]
                            } else {
                                rate.abs() > best_piv
                            }
                        });
                    if better {
                        theta = t;
                        leave = Some((i, to_upper));
                        best_piv = rate.abs();
                    }
                }
            }
            if !theta.is_finite() {
                return Err(Error::Lp("unbounded direction".into()));
            }
            stall = if theta <= 1e-14 { stall + 1 } else { 0 };
            match leave {
                None => {
                    self.state[q] = if self.state[q] == State::Lower { State::Upper } else { State::Lower };
                }
                Some((i, to_upper)) => {
                    let out = self.basis[i];
                    self.state[out] = if to_upper { State::Upper } else { State::Lower };
                    self.basis[i] = q;
                    self.state[q] = State::Basic(i);
                }
            }
        }
    }
}

/// Weighted least squares iterated towards the `L1` fit.
fn irls(table: &TrigTable, values: &[f64], m: usize) -> Vec<f64> {
    let n = values.len();
    let phi: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| basis_value(table, i, j)).collect()).collect();
    let floor = 1e-9 * (1.0 + values.iter().fold(0.0f64, |s, v| s.max(v.abs())));
    let mut coeffs = vec![0.0; m];
    let mut weights = vec![1.0; n];
    for _ in 0..IRLS_STEPS {
        let mut normal = vec![0.0; m * m];
        let mut rhs = vec![0.0; m];
        for j in 0..n {
            let wj = weights[j];
            for a in 0..m {
                rhs[a] += wj * phi[j][a] * values[j];
                for b in 0..m {
                    normal[a * m + b] += wj * phi[j][a] * phi[j][b];
                }
            }
        }
        let Some(lu) = Lu::new(normal, m) else { break };
        coeffs = lu.solve(&rhs);
        for j in 0..n {
            let t: f64 = phi[j].iter().zip(&coeffs).map(|(p, c)| p * c).sum();
            weights[j] = 1.0 / (values[j] - t).abs().max(floor);
        }
    }
    coeffs
}

fn solve(table: &TrigTable, values: &[f64], m: usize) -> Result<(Vec<f64>, usize)> {
    let n = values.len();
    let mut cols = vec![0.0; n * m];
    for j in 0..n {
        for i in 0..m {
            cols[j * m + i] = basis_value(table, i, j);
        }
    }
    let mut b = vec![0.0; m];
    for j in 0..n {
        for i in 0..m {
            b[i] += 0.5 * cols[j * m + i];
        }
    }
    let warm = poly_on_grid(table, &irls(table, values, m));
    let mut state: Vec<State> =
        values.iter().zip(&warm).map(|(k, t)| if k > t { State::Upper } else { State::Lower }).collect();
    let mut resid = b.clone();
    for j in 0..n {
        if state[j] == State::Upper {
            for i in 0..m {
                resid[i] -= cols[j * m + i];
            }
        }
    }
    let art_sign: Vec<f64> = resid.iter().map(|r| if *r < 0.0 { -1.0 } else { 1.0 }).collect();
    let basis: Vec<usize> = (n..n + m).collect();
    state.extend((0..m).map(State::Basic));
    let mut lp = Simplex {
        m,
        n,
        cols,
        b,
        cost: values,
        art_sign,
        state,
        basis,
        art_upper: f64::INFINITY,
        iterations: 0,
    };
    let max_iter = 20_000 + 20 * n;
    lp.run(true, max_iter)?;
    let lu = lp.factor()?;
    let x_b = lp.basic_values(&lu);
    let infeasibility: f64 =
        lp.basis.iter().zip(&x_b).filter(|(&j, _)| j >= n).map(|(_, v)| v.abs()).sum();
    if infeasibility > 1e-8 * n as f64 {
        return Err(Error::Lp(format!("phase one left infeasibility {infeasibility}")));
    }
    lp.art_upper = 0.0;
    let y = lp.run(false, max_iter)?;
    Ok((y, lp.iterations))
}
