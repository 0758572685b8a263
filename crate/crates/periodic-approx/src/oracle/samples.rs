use std::f64::consts::PI;

use crate::error::{Error, Result};

const MIN_GRID: usize = 64;

/// Values of a `2π`-periodic function at `t_j = -π + 2πj/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSamples {
    values: Vec<f64>,
}

pub(crate) fn check_grid(n: usize) -> Result<()> {
    if n < MIN_GRID || !n.is_power_of_two() {
        return Err(Error::Domain(format!("grid size must be a power of two >= {MIN_GRID}, got {n}")));
    }
    Ok(())
}

impl PeriodicSamples {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_grid(values.len())?;
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("sample {j} is not finite")));
        }
        Ok(PeriodicSamples { values })
    }

    pub fn from_fn(grid_size: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_grid(grid_size)?;
        Self::new((0..grid_size).map(|j| f(node(grid_size, j))).collect())
    }

    pub fn grid_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn node(&self, j: usize) -> f64 {
        node(self.values.len(), j)
    }

    /// Uniform trapezoid weight `2π/N`.
    pub fn weight(&self) -> f64 {
        2.0 * PI / self.values.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub(crate) fn node(n: usize, j: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / n as f64
}

/// `cos(k t_j)` and `sin(k t_j)` through the exact index `k(2j - N) mod 2N`.
pub(crate) struct TrigTable {
    n: usize,
    cos: Vec<f64>,
}

impl TrigTable {
    pub fn new(n: usize) -> Self {
        let cos = (0..2 * n).map(|i| (PI * i as f64 / n as f64).cos()).collect();
        TrigTable { n, cos }
    }

    fn index(&self, k: u64, j: usize, shift: i64) -> usize {
        let two_n = 2 * self.n as i64;
        let q = (k as i64) * (2 * j as i64 - self.n as i64) + shift;
        q.rem_euclid(two_n) as usize
    }

    pub fn cos(&self, k: u64, j: usize) -> f64 {
        self.cos[self.index(k, j, 0)]
    }

    pub fn sin(&self, k: u64, j: usize) -> f64 {
        // sin(x) = cos(x - π/2), and π/2 is N/2 steps of π/N.
        self.cos[self.index(k, j, -(self.n as i64) / 2)]
    }

    /// Sign of `sin(k t_j)` (or `cos(k t_j)`), exactly zero on the nodes.
    pub fn sign(&self, k: u64, j: usize, cosine: bool) -> f64 {
        let shift = if cosine { self.n as i64 / 2 } else { 0 };
        let v = self.index(k, j, shift);
        if v == 0 || v == self.n {
            0.0
        } else if v < self.n {
            1.0
        } else {
            -1.0
        }
    }
}

/// Basis `1, cos t, sin t, …, cos(n-1)t, sin(n-1)t` of `T_n`.
pub(crate) fn basis_value(table: &TrigTable, i: usize, j: usize) -> f64 {
    if i == 0 {
        return 1.0;
    }
    let k = i.div_ceil(2) as u64;
    if i % 2 == 1 {
        table.cos(k, j)
    } else {
        table.sin(k, j)
    }
}

/// A polynomial in `T_n` evaluated on the grid.
pub(crate) fn poly_on_grid(table: &TrigTable, coeffs: &[f64]) -> Vec<f64> {
    (0..table.n)
        .map(|j| coeffs.iter().enumerate().map(|(i, c)| c * basis_value(table, i, j)).sum())
        .collect()
}
