//! Dual weights `μ*` on the extremal nodes.
//!
//! `μ*` maximises `min_{p ∈ P_k} Σ_j μ_j (λ_j p(λ_j))²` over the simplex; at
//! the optimum `p_k*` is the weighted least-squares minimiser, so
//! `Σ_j μ_j λ_j² p*(λ_j) λ_jⁱ = 0` for `i = 1..k`.

use log::debug;
use nalgebra::{DMatrix, DVector};

use super::chebyshev::{extremal_nodes, minimax_poly, MinimaxPoly};
use crate::error::{Error, Result};

/// KKT residual required from any `μ` returned here.
pub const KKT_TOL: f64 = 1e-8;

/// Weights for the `2m+2` nodes of `p_k*` with `R = 1` (they do not depend
/// on `R`).
pub fn dual_weights(k: usize) -> Result<Vec<f64>> {
    let poly = minimax_poly(k, 1.0)?;
    match symmetric_weights(&poly) {
        Some(mu) if kkt_residual(&poly, &mu) < KKT_TOL => Ok(mu),
        _ => {
            debug!("stationarity system failed for k={k}; using projected ascent");
            dual_weights_ascent(&poly.nodes(), k)
        }
    }
}

/// Solves the stationarity system on half the nodes, using `λ_{2m+1−j} = −λ_j`.
///
/// With `e_j = λ_j p*(λ_j)` odd in `λ`, odd powers cancel in symmetric pairs,
/// leaving `Σ_{j≤m} w_j e_j λ_j^{i+1} = 0` for `i = 2, 4, …, 2m` and `2Σ w_j = 1`.
fn symmetric_weights(poly: &MinimaxPoly) -> Option<Vec<f64>> {
    let m = poly.m;
    let nodes = poly.nodes();
    let n = m + 1;
    let mut a = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    for (row, i) in (2..=2 * m).step_by(2).enumerate() {
        for j in 0..n {
            let l = nodes[j];
            a[(row, j)] = poly.weighted(l) * l.powi(i as i32 + 1);
        }
    }
    for j in 0..n {
        a[(m, j)] = 2.0;
    }
    rhs[m] = 1.0;
    let w = a.lu().solve(&rhs)?;
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return None;
    }
    let mut mu = vec![0.0; 2 * n];
    for j in 0..n {
        mu[j] = w[j];
        mu[2 * m + 1 - j] = w[j];
    }
    Some(mu)
}

/// Relative stationarity residual of `μ` for `p_k*`, plus simplex violation.
pub fn kkt_residual(poly: &MinimaxPoly, mu: &[f64]) -> f64 {
    let nodes = poly.nodes();
    let scale = poly.m_star * poly.m_star;
    let mut worst = (mu.iter().sum::<f64>() - 1.0).abs();
    for v in mu {
        worst = worst.max(-v);
    }
    for i in 1..=poly.k {
        let s: f64 = nodes
            .iter()
            .zip(mu)
            .map(|(&l, &w)| w * l * poly.weighted(l) * l.powi(i as i32))
            .sum();
        worst = worst.max(s.abs() / scale);
    }
    worst
}

/// `min_p Σ μ_j (λ_j p(λ_j))²` over `deg p ≤ k`, `p(0) = 1`, and the residuals
/// `λ_j p(λ_j)` of the minimiser.
fn weighted_fit(nodes: &[f64], mu: &[f64], k: usize) -> Result<(f64, Vec<f64>)> {
    let rows = nodes.len();
    let cols = k.min(rows);
    // λ p(λ) = λ + Σ_{i=1}^{k} a_i λ^{i+1}
    let design = DMatrix::from_fn(rows, cols, |j, i| mu[j].sqrt() * nodes[j].powi(i as i32 + 2));
    let target = DVector::from_fn(rows, |j, _| -mu[j].sqrt() * nodes[j]);
    let coef = design
        .clone()
        .svd(true, true)
        .solve(&target, 1e-14)
        .map_err(|e| Error::Numerical(e.to_string()))?;
    let resid: Vec<f64> = nodes
        .iter()
        .map(|&l| l + (0..cols).map(|i| coef[i] * l.powi(i as i32 + 2)).sum::<f64>())
        .collect();
    let value = resid.iter().zip(mu).map(|(r, w)| w * r * r).sum();
    Ok((value, resid))
}

/// Exponentiated-gradient ascent on the concave dual; the gradient in `μ_j`
/// is `(λ_j p_μ(λ_j))²`. Stops when every gradient entry is within
/// [`KKT_TOL`] of the current value.
pub fn dual_weights_ascent(nodes: &[f64], k: usize) -> Result<Vec<f64>> {
    let n = nodes.len();
    if n == 0 {
        return Err(Error::Domain("no nodes".into()));
    }
    let mut mu = vec![1.0 / n as f64; n];
    let mut eta = 1.0;
    let (mut value, mut resid) = weighted_fit(nodes, &mu, k)?;
    for _ in 0..200_000 {
        let grad: Vec<f64> = resid.iter().map(|r| r * r).collect();
        let gap = grad.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - value;
        if gap <= KKT_TOL * value {
            return Ok(mu);
        }
        let mut trial: Vec<f64> = mu
            .iter()
            .zip(&grad)
            .map(|(w, g)| w * (eta * (g / value - 1.0)).exp())
            .collect();
        let total: f64 = trial.iter().sum();
        trial.iter_mut().for_each(|w| *w /= total);
        let (tv, tr) = weighted_fit(nodes, &trial, k)?;
        // near the optimum the value is flat to rounding, so the KKT gap decides
        let trial_gap = tr.iter().map(|r| r * r).fold(f64::NEG_INFINITY, f64::max) - tv;
        if tv > value * (1.0 + 1e-12) || (tv >= value * (1.0 - 1e-14) && trial_gap < gap) {
            mu = trial;
            value = tv;
            resid = tr;
            eta = (eta * 1.5).min(50.0);
        } else {
            eta *= 0.5;
            if eta < 1e-12 {
                break;
            }
        }
    }
    Err(Error::Numerical(format!(
        "dual ascent for k={k} did not reach KKT residual {KKT_TOL}"
    )))
}

/// Nodes and weights together, for callers that build instances.
pub fn nodes_and_weights(k: usize, r: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mu = dual_weights(k)?;
    Ok((extremal_nodes(k / 2, r), mu))
}
