//! The EAG-V step-size sequence and its limit.

use crate::error::{Error, Result};

/// Minimum number of recurrence steps taken when estimating `α_∞`.
pub const LIMIT_MIN_STEPS: usize = 10_000;
/// Hard cap on recurrence steps when estimating `α_∞`.
pub const LIMIT_MAX_STEPS: usize = 50_000_000;
/// Relative-change stopping threshold for `α_∞`.
pub const LIMIT_TOL: f64 = 1e-12;

/// One step of the EAG-V recurrence with `β_k = 1/(k+2)`:
/// `α_{k+1} = α_k (1 − α_k²R² / ((k+1)(k+3)(1 − α_k²R²)))`.
pub fn eag_v_alpha_next(alpha_k: f64, k: usize, lipschitz: f64) -> Result<f64> {
    let a = alpha_k * lipschitz;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("EAG-V recurrence needs alpha*R in (0,1), got {a}")));
    }
    let a2 = a * a;
    let kf = k as f64;
    Ok(alpha_k * (1.0 - a2 / ((kf + 1.0) * (kf + 3.0) * (1.0 - a2))))
}

/// The recurrence for general `β_k = 1/(k+δ)`.
///
/// The raw step-size recurrence `α_{k+1} = α_k β_{k+1}(1 − α_k²R² − β_k²) / (β_k(1 − β_k)(1 − α_k²R²))`
/// simplifies to `α_k (1 − α_k²R² / ((1 − α_k²R²)((k+δ)² − 1)))`; at `δ = 2`
/// this is [`eag_v_alpha_next`].
pub fn eag_v_alpha_next_delta(alpha_k: f64, k: usize, lipschitz: f64, delta: f64) -> Result<f64> {
    if delta == 2.0 {
        return eag_v_alpha_next(alpha_k, k, lipschitz);
    }
    let a = alpha_k * lipschitz;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("EAG-V recurrence needs alpha*R in (0,1), got {a}")));
    }
    if !(delta > 1.0) {
        return Err(Error::Domain(format!("anchor offset must exceed 1, got {delta}")));
    }
    let a2 = a * a;
    let s = k as f64 + delta;
    let next = alpha_k * (1.0 - a2 / ((1.0 - a2) * (s * s - 1.0)));
    if !(next > 0.0) {
        return Err(Error::Domain(format!(
            "EAG-V step collapsed to {next} at k={k}; alpha0 too large for delta={delta}"
        )));
    }
    Ok(next)
}

/// `α_0, …, α_n` for the given anchor offset.
pub fn eag_v_alpha_sequence(alpha0: f64, lipschitz: f64, delta: f64, n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a = alpha0;
    out.push(a);
    for k in 0..n {
        a = eag_v_alpha_next_delta(a, k, lipschitz, delta)?;
        out.push(a);
    }
    Ok(out)
}

/// Estimate of `lim α_k`: iterates until the relative change drops below
/// `tol` or `max_k` steps are taken.
pub fn eag_v_alpha_limit(alpha0: f64, lipschitz: f64, tol: f64, max_k: usize) -> Result<f64> {
    alpha_limit_delta(alpha0, lipschitz, 2.0, tol, max_k).map(|(a, _)| a)
}

/// Like [`eag_v_alpha_limit`] for general `δ`; also returns the step count.
pub fn alpha_limit_delta(
    alpha0: f64,
    lipschitz: f64,
    delta: f64,
    tol: f64,
    max_k: usize,
) -> Result<(f64, usize)> {
    check_alpha0(alpha0, lipschitz)?;
    let mut a = alpha0;
    for k in 0..max_k {
        let next = eag_v_alpha_next_delta(a, k, lipschitz, delta)?;
        assert!(next > 0.0, "EAG-V step sequence lost positivity");
        let change = (a - next).abs();
        a = next;
        if change < tol * a && k + 1 >= LIMIT_MIN_STEPS.min(max_k) {
            return Ok((a, k + 1));
        }
    }
    Ok((a, max_k))
}

/// Two-sided bracket `[lower, upper]` on `lim α_k` from the first `n` steps.
///
/// The sequence decreases, so `α_n` is an upper bound. Because `α_kR` also
/// decreases, the remaining product of factors is at least
/// `1 − ρ²/(1−ρ²)·Σ_{k≥n} 1/((k+δ)²−1)` with `ρ = α_nR`, and the sum telescopes
/// to `½(1/(n+δ−1) + 1/(n+δ))`.
pub fn eag_v_alpha_bracket(alpha0: f64, lipschitz: f64, delta: f64, n: usize) -> Result<(f64, f64)> {
    check_alpha0(alpha0, lipschitz)?;
    let mut a = alpha0;
    for k in 0..n {
        a = eag_v_alpha_next_delta(a, k, lipschitz, delta)?;
    }
    let rho2 = (a * lipschitz).powi(2);
    let nf = n as f64;
    let tail = 0.5 * (1.0 / (nf + delta - 1.0) + 1.0 / (nf + delta));
    let gamma = tail * rho2 / (1.0 - rho2);
    Ok((a * (1.0 - gamma), a))
}

/// A certified lower bound on `lim α_k`, tight to about `1e-12` relative.
///
/// Runs the recurrence per [`alpha_limit_delta`] with the default tolerance
/// and then applies the tail correction of [`eag_v_alpha_bracket`].
pub fn eag_v_alpha_limit_lower(alpha0: f64, lipschitz: f64, delta: f64) -> Result<f64> {
    let (_, steps) = alpha_limit_delta(alpha0, lipschitz, delta, LIMIT_TOL, LIMIT_MAX_STEPS)?;
    eag_v_alpha_bracket(alpha0, lipschitz, delta, steps).map(|(lo, _)| lo)
}

fn check_alpha0(alpha0: f64, lipschitz: f64) -> Result<()> {
    let a = alpha0 * lipschitz;
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("alpha0*R must lie in (0,1), got {a}")));
    }
    Ok(())
}
