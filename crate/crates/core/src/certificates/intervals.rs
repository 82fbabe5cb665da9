//! The interval `[ℓ_k, u_k]` that confines the EAG-C Lyapunov coefficient,
//! together with the ordered chain of quantities below it.

use crate::error::{Error, Result};

/// Values at one `k` for `a = αR ∈ (0, 1/2]`, listed from largest to smallest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalQuantities {
    pub k: usize,
    pub alpha: f64,
    /// `u_k = α(k+2)(k+1−kα)/(2(1−α))`
    pub u: f64,
    /// `α(k+1)(k+2)/2`, the split point between `I_k⁻` and `I_k⁺`
    pub mid: f64,
    /// `ℓ_k = α(k+2)(k+1+kα)/(2(1+α))`
    pub ell: f64,
    /// `α(k+1)(k+1+α(k+2))/(2(1+α))`
    pub tau_positivity: f64,
    /// `(α(k+1)² − α³k(k+2))/(2(1−α²))`
    pub tau_comparison: f64,
    /// `α(k+1)(k+1−α(k+2))/(2(1−α))`
    pub case1_floor: f64,
    /// `α²(k+1)(k+2)/(1+α)`
    pub case2_floor: f64,
    /// `(α²(k+1)(k+2) + α³(k+2)²)/(2(1+α))`
    pub tau_upper: f64,
}

impl IntervalQuantities {
    /// The chain in descending order, with the two `max` arguments merged.
    pub fn chain(&self) -> [f64; 7] {
        [
            self.u,
            self.mid,
            self.ell,
            self.tau_positivity,
            self.tau_comparison,
            self.case1_floor.max(self.case2_floor),
            self.tau_upper,
        ]
    }

    /// Whether `u > mid > ℓ ≥ … ≥ tau_upper`, non-strict links allowed a
    /// relative slack of `rel_tol`.
    pub fn chain_holds(&self, rel_tol: f64) -> bool {
        let c = self.chain();
        let slack = rel_tol * self.u.abs().max(f64::MIN_POSITIVE);
        c[0] > c[1] && c[1] > c[2] && c.windows(2).skip(2).all(|w| w[0] + slack >= w[1])
    }

    pub fn contains(&self, a_k: f64, rel_tol: f64) -> bool {
        let slack = rel_tol * self.u.abs();
        a_k + slack >= self.ell && a_k <= self.u + slack
    }
}

/// The interval endpoints and chain at iteration `k`.
pub fn interval_quantities(k: usize, alpha_r: f64) -> Result<IntervalQuantities> {
    if !(alpha_r > 0.0 && alpha_r <= 0.5) {
        return Err(Error::Domain(format!("interval chain needs alpha*R in (0, 1/2], got {alpha_r}")));
    }
    let a = alpha_r;
    let kf = k as f64;
    let (k1, k2) = (kf + 1.0, kf + 2.0);
    let q = IntervalQuantities {
        k,
        alpha: a,
        u: a * k2 * (k1 - kf * a) / (2.0 * (1.0 - a)),
        mid: a * k1 * k2 / 2.0,
        ell: a * k2 * (k1 + kf * a) / (2.0 * (1.0 + a)),
        tau_positivity: a * k1 * (k1 + a * k2) / (2.0 * (1.0 + a)),
        tau_comparison: (a * k1 * k1 - a * a * a * kf * k2) / (2.0 * (1.0 - a * a)),
        case1_floor: a * k1 * (k1 - a * k2) / (2.0 * (1.0 - a)),
        case2_floor: a * a * k1 * k2 / (1.0 + a),
        tau_upper: (a * a * k1 * k2 + a * a * a * k2 * k2) / (2.0 * (1.0 + a)),
    };
    if !q.chain_holds(1e-12) {
        return Err(Error::Numerical(format!(
            "interval chain broken at k={k}, alpha={a}: {:?}",
            q.chain()
        )));
    }
    Ok(q)
}
