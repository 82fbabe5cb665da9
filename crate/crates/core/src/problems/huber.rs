use std::sync::Arc;

use log::warn;

use crate::error::{Error, Result};
use crate::saddle::{Operator, Point, SaddleProblem};

/// Parameters of `L(x, y) = (1−δ)f_ε(x) + δxy − (1−δ)f_ε(y)` where `f_ε` is
/// the Huber function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuberSaddleParams {
    pub delta: f64,
    pub epsilon: f64,
}

impl HuberSaddleParams {
    pub const DEFAULT: HuberSaddleParams = HuberSaddleParams {
        delta: 1e-2,
        epsilon: 5e-5,
    };

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Domain(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < self.delta) {
            return Err(Error::Domain(format!(
                "epsilon must lie in (0, delta), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

impl Default for HuberSaddleParams {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Huber function `f_ε(u)`.
pub fn huber(epsilon: f64, u: f64) -> f64 {
    if u.abs() >= epsilon {
        epsilon * u.abs() - 0.5 * epsilon * epsilon
    } else {
        0.5 * u * u
    }
}

/// `f_ε'(u)`: `ε·sign(u)` for `|u| ≥ ε`, `u` otherwise. Continuous at the kink.
pub fn huber_derivative(epsilon: f64, u: f64) -> f64 {
    if u.abs() >= epsilon {
        epsilon * u.signum()
    } else {
        u
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HuberSaddle {
    params: HuberSaddleParams,
}

impl Operator for HuberSaddle {
    fn apply(&self, z: &[f64], out: &mut [f64]) {
        let HuberSaddleParams { delta, epsilon } = self.params;
        let (x, y) = (z[0], z[1]);
        out[0] = (1.0 - delta) * huber_derivative(epsilon, x) + delta * y;
        out[1] = (1.0 - delta) * huber_derivative(epsilon, y) - delta * x;
    }

    fn lagrangian(&self, z: &[f64]) -> Option<f64> {
        let HuberSaddleParams { delta, epsilon } = self.params;
        let (x, y) = (z[0], z[1]);
        Some((1.0 - delta) * huber(epsilon, x) + delta * x * y - (1.0 - delta) * huber(epsilon, y))
    }
}

/// The two-dimensional Huber saddle; declared 1-smooth with saddle point 0.
pub fn make_huber_saddle(params: HuberSaddleParams) -> Result<SaddleProblem> {
    params.validate()?;
    if params.epsilon >= params.delta / 10.0 {
        warn!(
            "Huber saddle with epsilon={} not well below delta={}",
            params.epsilon, params.delta
        );
    }
    SaddleProblem::new("huber", 1, 1, 1.0, Arc::new(HuberSaddle { params }))?
        .with_saddle_point(Point::zeros(1, 1))
}
