//! Joint iterates, saddle problems and the saddle-operator oracle.
//!
//! For a convex-concave `L(x, y)` the saddle operator is
//! `G(z) = (∇ₓL(x, y), −∇ᵧL(x, y))`. It is monotone, and an `R`-smooth `L`
//! makes it `R`-Lipschitz. Every algorithm in this crate touches the problem
//! only through `G`.

mod diagnostics;
mod point;

use std::fmt;
use std::sync::Arc;

pub use diagnostics::{
    check_monotone, estimate_lipschitz, gradient_fd_error, FD_REL_STEP, random_pairs, MonotoneReport,
    PairCheck,
};
pub use point::Point;
pub(crate) use point::{dist_sq, dot, norm_sq};

use crate::error::{Error, Result};

/// A saddle operator `z ↦ G(z)` acting on flat joint vectors.
pub trait Operator: Send + Sync {
    /// Writes `G(z)` into `out`; both slices have the problem's full dimension.
    fn apply(&self, z: &[f64], out: &mut [f64]);

    /// The saddle function `L(z)` itself, when it has a closed form.
    fn lagrangian(&self, _z: &[f64]) -> Option<f64> {
        None
    }
}

/// Counts operator evaluations made by one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleCounter {
    evals: u64,
}

impl OracleCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn evals(&self) -> u64 {
        self.evals
    }

    pub(crate) fn record(&mut self) {
        self.evals += 1;
    }
}

/// An evaluatable saddle problem with a declared smoothness constant.
///
/// Problems are immutable once built and cheap to clone (the operator is
/// shared).
#[derive(Clone)]
pub struct SaddleProblem {
    name: String,
    dim_x: usize,
    dim_y: usize,
    lipschitz: f64,
    saddle_point: Option<Point>,
    operator: Arc<dyn Operator>,
}

impl SaddleProblem {
    pub fn new(
        name: impl Into<String>,
        dim_x: usize,
        dim_y: usize,
        lipschitz: f64,
        operator: Arc<dyn Operator>,
    ) -> Result<Self> {
        if dim_x == 0 || dim_y == 0 {
            return Err(Error::Domain("problem dimensions must be positive".into()));
        }
        if !(lipschitz > 0.0 && lipschitz.is_finite()) {
            return Err(Error::Domain(format!(
                "Lipschitz constant must be positive, got {lipschitz}"
            )));
        }
        Ok(Self {
            name: name.into(),
            dim_x,
            dim_y,
            lipschitz,
            saddle_point: None,
            operator,
        })
    }

    /// Attaches a known saddle point, verifying `‖G(z*)‖ ≤ 1e-10·max(1, R‖z*‖)`.
    pub fn with_saddle_point(mut self, z_star: Point) -> Result<Self> {
        self.check_dims(&z_star)?;
        let g = self.eval(&z_star)?;
        let scale = (self.lipschitz * z_star.norm()).max(1.0);
        if g.norm() > 1e-10 * scale {
            return Err(Error::Numerical(format!(
                "claimed saddle point of `{}` has ‖G‖ = {:e}",
                self.name,
                g.norm()
            )));
        }
        self.saddle_point = Some(z_star);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn dim(&self) -> usize {
        self.dim_x + self.dim_y
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn saddle_point(&self) -> Option<&Point> {
        self.saddle_point.as_ref()
    }

    pub fn operator(&self) -> &Arc<dyn Operator> {
        &self.operator
    }

    pub fn check_dims(&self, z: &Point) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: z.len(),
            });
        }
        if z.split() != self.dim_x {
            return Err(Error::DimensionMismatch {
                expected: self.dim_x,
                found: z.split(),
            });
        }
        Ok(())
    }

    /// `G(z)` without touching any counter (diagnostics, bookkeeping).
    pub fn eval(&self, z: &Point) -> Result<Point> {
        self.check_dims(z)?;
        let mut out = vec![0.0; self.dim()];
        self.operator.apply(z.coords(), &mut out);
        Ok(Point::from_raw(out, self.dim_x))
    }

    /// `G(z)` charged to `counter`.
    pub fn eval_counted(&self, z: &Point, counter: &mut OracleCounter) -> Result<Point> {
        let g = self.eval(z)?;
        counter.record();
        Ok(g)
    }

    pub(crate) fn apply_raw(&self, z: &[f64], out: &mut [f64]) {
        self.operator.apply(z, out);
    }

    /// `‖G(z)‖²`, which equals `‖∇L(z)‖²`.
    pub fn grad_sq_norm(&self, z: &Point) -> Result<f64> {
        Ok(self.eval(z)?.norm_sq())
    }

    pub fn lagrangian(&self, z: &Point) -> Result<Option<f64>> {
        self.check_dims(z)?;
        Ok(self.operator.lagrangian(z.coords()))
    }

    /// `‖z − z*‖` when the saddle point is known.
    pub fn distance_to_saddle(&self, z: &Point) -> Option<f64> {
        self.saddle_point.as_ref().map(|s| z.dist_sq(s).sqrt())
    }
}

impl fmt::Debug for SaddleProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SaddleProblem")
            .field("name", &self.name)
            .field("dim_x", &self.dim_x)
            .field("dim_y", &self.dim_y)
            .field("lipschitz", &self.lipschitz)
            .field("saddle_point", &self.saddle_point.is_some())
            .finish()
    }
}

/// `G(z)`, charged to `counter`.
pub fn eval_operator(
    problem: &SaddleProblem,
    z: &Point,
    counter: &mut OracleCounter,
) -> Result<Point> {
    problem.eval_counted(z, counter)
}

/// `‖G(z)‖²`.
pub fn grad_sq_norm(problem: &SaddleProblem, z: &Point) -> Result<f64> {
    problem.grad_sq_norm(z)
}
