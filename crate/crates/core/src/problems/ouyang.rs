use std::sync::Arc;

use crate::error::{Error, Result};
use crate::saddle::{Operator, Point, SaddleProblem};

/// Lagrangian of a linearly constrained quadratic program,
/// `L(x, y) = ½xᵀHx − hᵀx − ⟨Ax − b, y⟩` with `H = 2AᵀA`.
///
/// `A` is the quarter-scaled anti-diagonal band: row `i` holds `+¼` in column
/// `n−1−i` and `−¼` in column `n−2−i`, so `‖A‖ ≤ ½`. Everything is applied in
/// O(n) without materialising matrices.
#[derive(Debug, Clone, Copy)]
pub struct OuyangQp {
    n: usize,
}

impl OuyangQp {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `out = A x`
    pub fn apply_a(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let hi = x[n - 1 - i];
            let lo = if i + 2 <= n { x[n - 2 - i] } else { 0.0 };
            out[i] = 0.25 * (hi - lo);
        }
    }

    /// `out = Aᵀ y`
    pub fn apply_at(&self, y: &[f64], out: &mut [f64]) {
        let n = self.n;
        for j in 0..n {
            let hi = y[n - 1 - j];
            let lo = if j + 2 <= n { y[n - 2 - j] } else { 0.0 };
            out[j] = 0.25 * (hi - lo);
        }
    }

    /// Dense copy of `A`, row-major.
    pub fn dense_a(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + (n - 1 - i)] = 0.25;
            if i + 2 <= n {
                a[i * n + (n - 2 - i)] = -0.25;
            }
        }
        a
    }

    /// `b = ¼·1`
    pub fn b(&self) -> Vec<f64> {
        vec![0.25; self.n]
    }

    /// `h = ¼·e_n`
    pub fn h(&self) -> Vec<f64> {
        let mut h = vec![0.0; self.n];
        h[self.n - 1] = 0.25;
        h
    }

    /// Closed-form saddle point: `x* = (1, 2, …, n)` solves `Ax = b` and
    /// `y* = 2b − A⁻ᵀh = −½·1`.
    pub fn saddle_point(&self) -> Point {
        let x: Vec<f64> = (1..=self.n).map(|i| i as f64).collect();
        let y = vec![-0.5; self.n];
        Point::from_blocks(&x, &y).expect("finite saddle point")
    }
}

impl Operator for OuyangQp {
    fn apply(&self, z: &[f64], out: &mut [f64]) {
        let n = self.n;
        let (x, y) = z.split_at(n);
        let (gx, gy) = out.split_at_mut(n);
        // gy = Ax − b
        self.apply_a(x, gy);
        // gx = 2Aᵀ(Ax) − h − Aᵀy
        let mut tmp = vec![0.0; n];
        self.apply_at(gy, gx);
        self.apply_at(y, &mut tmp);
        for j in 0..n {
            gx[j] = 2.0 * gx[j] - tmp[j];
        }
        gx[n - 1] -= 0.25;
        for v in gy.iter_mut() {
            *v -= 0.25;
        }
    }

    fn lagrangian(&self, z: &[f64]) -> Option<f64> {
        let n = self.n;
        let (x, y) = z.split_at(n);
        let mut ax = vec![0.0; n];
        self.apply_a(x, &mut ax);
        let quad: f64 = ax.iter().map(|v| v * v).sum();
        let constraint: f64 = ax.iter().zip(y).map(|(a, yi)| (a - 0.25) * yi).sum();
        Some(quad - 0.25 * x[n - 1] - constraint)
    }
}

pub fn make_ouyang_qp(n: usize) -> Result<SaddleProblem> {
    if n < 2 {
        return Err(Error::Domain(format!("Ouyang problem needs n >= 2, got {n}")));
    }
    let op = OuyangQp::new(n);
    let z_star = op.saddle_point();
    SaddleProblem::new(format!("ouyang-{n}"), n, n, 1.0, Arc::new(op))?.with_saddle_point(z_star)
}
