//! Rate guarantees as functions of `k`.

use crate::error::{Error, Result};

use super::stepsize::eag_v_alpha_limit_lower;

/// Rounded constant for EAG-C at `αR = 1/8`: `‖G(z^k)‖² ≤ 260R²D²/(k+1)²`.
pub const EAG_C_COROLLARY_CONSTANT: f64 = 260.0;
/// Rounded constant for EAG-V at `α₀R = 0.618`: `‖G(z^k)‖² ≤ 27R²D²/((k+1)(k+2))`.
pub const EAG_V_COROLLARY_CONSTANT: f64 = 27.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundKind {
    /// Last-iterate bound for EAG-C with step `alpha`.
    EagC { alpha: f64 },
    /// Last-iterate bound for EAG-V from `alpha0` with `β_k = 1/(k+δ)`.
    EagV { alpha0: f64, anchor_delta: f64 },
    /// Best-iterate bound `min_{i≤k}‖G(z^i)‖²` for EG with step `alpha`.
    EgBestIterate { alpha: f64 },
}

/// A precomputed bound `k ↦ C·D²/ψ(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBound {
    kind: BoundKind,
    lipschitz: f64,
    dist_sq: f64,
    constant: f64,
    alpha_inf: Option<f64>,
}

impl RateBound {
    pub fn new(kind: BoundKind, lipschitz: f64, dist: f64) -> Result<Self> {
        if !(lipschitz > 0.0) || !(dist >= 0.0) {
            return Err(Error::Domain(format!("need R > 0 and D >= 0, got R={lipschitz}, D={dist}")));
        }
        let r = lipschitz;
        let (constant, alpha_inf) = match kind {
            BoundKind::EagC { alpha } => {
                let a = alpha * r;
                if !(a > 0.0) {
                    return Err(Error::Domain(format!("EAG-C step must be positive, got {alpha}")));
                }
                (4.0 * (1.0 + a + a * a) / (alpha * alpha * (1.0 + a)), None)
            }
            BoundKind::EagV { alpha0, anchor_delta } => {
                let a_inf = eag_v_alpha_limit_lower(alpha0, r, anchor_delta)?;
                let d = anchor_delta;
                // 4(δ−1)(α₀δR²/2 + 1/((δ−1)α_∞))/α_∞, which is 4(1+α₀α_∞R²)/α_∞² at δ = 2
                let c = 4.0 * (d - 1.0) / a_inf * (alpha0 * d * r * r / 2.0 + 1.0 / ((d - 1.0) * a_inf));
                (c, Some(a_inf))
            }
            BoundKind::EgBestIterate { alpha } => {
                let a = alpha * r;
                if !(a > 0.0 && a < 1.0) {
                    return Err(Error::Domain(format!("EG bound needs alpha*R in (0,1), got {a}")));
                }
                (1.0 / (alpha * alpha * (1.0 - a * a)), None)
            }
        };
        Ok(Self {
            kind,
            lipschitz,
            dist_sq: dist * dist,
            constant,
            alpha_inf,
        })
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// The `C` in `C·D²/ψ(k)`.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// The certified lower estimate of `lim α_k` used for EAG-V.
    pub fn alpha_inf(&self) -> Option<f64> {
        self.alpha_inf
    }

    pub fn at(&self, k: usize) -> f64 {
        let kf = k as f64;
        let denom = match self.kind {
            BoundKind::EagC { .. } => (kf + 1.0) * (kf + 1.0),
            BoundKind::EagV { anchor_delta, .. } => (kf + anchor_delta) * (kf + anchor_delta - 1.0),
            BoundKind::EgBestIterate { .. } => kf + 1.0,
        };
        self.constant * self.dist_sq / denom
    }
}

/// `theoretical_bound(kind, k, R, D)`; see [`RateBound`] when evaluating at
/// many `k`.
pub fn theoretical_bound(kind: BoundKind, k: usize, lipschitz: f64, dist: f64) -> Result<f64> {
    Ok(RateBound::new(kind, lipschitz, dist)?.at(k))
}

/// `260R²D²/(k+1)²`
pub fn eag_c_corollary_bound(k: usize, lipschitz: f64, dist: f64) -> f64 {
    let kf = k as f64 + 1.0;
    EAG_C_COROLLARY_CONSTANT * (lipschitz * dist).powi(2) / (kf * kf)
}

/// `27R²D²/((k+1)(k+2))`
pub fn eag_v_corollary_bound(k: usize, lipschitz: f64, dist: f64) -> f64 {
    let kf = k as f64;
    EAG_V_COROLLARY_CONSTANT * (lipschitz * dist).powi(2) / ((kf + 1.0) * (kf + 2.0))
}
