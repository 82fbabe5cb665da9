//! The optimal span-respecting solver for linear systems `Bz = v`.

use nalgebra::{DMatrix, DVector};

use super::chebyshev::minimax_poly;
use crate::error::{Error, Result};

/// Coefficients of `q_k` (lowest degree first) from `p_k*(√t) = 1 − t·q_k(t)`.
pub fn q_coeffs(k: usize, r: f64) -> Result<Vec<f64>> {
    let p = minimax_poly(k, r)?;
    // p_k* is even: p(s) = Σ c_{2i} s^{2i}, so p(√t) = Σ c_{2i} tⁱ and q_i = −c_{2i+2}
    Ok((1..=p.m).map(|i| -p.coeffs[2 * i]).collect())
}

/// Result of [`chebyshev_solver`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOutput {
    pub z: DVector<f64>,
    /// Matrix-vector products used (counting `Bᵀ` and `B` separately).
    pub matvecs: usize,
}

/// `z^k = q_k(BᵀB)Bᵀv` by Horner's rule; `z¹ = 0`.
pub fn chebyshev_solver(b: &DMatrix<f64>, v: &DVector<f64>, k: usize, r: f64) -> Result<SolverOutput> {
    if b.nrows() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: b.nrows(),
            found: v.len(),
        });
    }
    let q = q_coeffs(k, r)?;
    if q.is_empty() {
        return Ok(SolverOutput {
            z: DVector::zeros(b.ncols()),
            matvecs: 0,
        });
    }
    let w = b.tr_mul(v);
    let mut matvecs = 1;
    let mut acc = &w * q[q.len() - 1];
    for c in q.iter().rev().skip(1) {
        let bz = b * &acc;
        acc = b.tr_mul(&bz);
        acc.axpy(*c, &w, 1.0);
        matvecs += 2;
    }
    Ok(SolverOutput { z: acc, matvecs })
}

/// `‖Bz − v‖²`
pub fn residual_sq(b: &DMatrix<f64>, v: &DVector<f64>, z: &DVector<f64>) -> f64 {
    (b * z - v).norm_squared()
}
