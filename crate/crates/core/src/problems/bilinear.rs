use std::sync::Arc;

use crate::error::{Error, Result};
use crate::saddle::{Operator, Point, SaddleProblem};

/// `L(x, y) = s·xy` in one dimension each.
#[derive(Debug, Clone, Copy)]
pub struct Bilinear {
    scale: f64,
}

impl Operator for Bilinear {
    fn apply(&self, z: &[f64], out: &mut [f64]) {
        out[0] = self.scale * z[1];
        out[1] = -self.scale * z[0];
    }

    fn lagrangian(&self, z: &[f64]) -> Option<f64> {
        Some(self.scale * z[0] * z[1])
    }
}

pub fn make_bilinear(scale: f64) -> Result<SaddleProblem> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!("bilinear scale must be positive, got {scale}")));
    }
    SaddleProblem::new("bilinear", 1, 1, scale, Arc::new(Bilinear { scale }))?
        .with_saddle_point(Point::zeros(1, 1))
}
