//! Checks a run on a hard instance against the lower bound.

use nalgebra::DVector;

use super::instance::HardInstance;
use super::krylov::{krylov_basis, least_squares_residual, relative_projection_residual};
use crate::algorithms::Trace;
use crate::saddle::Point;

/// Iterates must lie this close (relatively) to the reachable Krylov span.
pub const SPAN_TOL: f64 = 1e-8;
/// Relative slack when comparing gradient norms with the bounds.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SpanCheck {
    /// Iteration index; half-iterates report the `k` of `z^{k+1/2}`.
    pub k: usize,
    pub half: bool,
    /// Operator calls whose outputs can influence this point.
    pub span_index: usize,
    pub grad_sq: f64,
    /// `R²‖z⁰ − z*‖²/(2⌊k/2⌋+1)²` for the instance's `k`.
    pub bound: f64,
    /// `2·min ‖Ax − b‖²` over the Krylov space reachable with `span_index` calls.
    pub krylov_floor: f64,
    /// Largest relative distance of the x- and y-blocks from that space, when
    /// the iterate was stored.
    pub span_residual: Option<f64>,
}

impl SpanCheck {
    pub fn margin(&self) -> f64 {
        self.grad_sq - self.bound
    }

    pub fn ok(&self) -> bool {
        self.grad_sq >= self.bound * (1.0 - BOUND_TOL) && self.grad_sq >= self.krylov_floor * (1.0 - BOUND_TOL)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Applicability {
    Applicable,
    /// The bound is zero (for instance `z⁰ = z*`).
    Trivial(String),
    /// The run does not satisfy the bound's hypotheses.
    Inapplicable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundReport {
    pub instance_k: usize,
    pub bound: f64,
    pub applicability: Applicability,
    pub checks: Vec<SpanCheck>,
}

impl LowerBoundReport {
    pub fn passed(&self) -> bool {
        match self.applicability {
            Applicability::Applicable => self.checks.iter().all(SpanCheck::ok),
            Applicability::Trivial(_) => true,
            Applicability::Inapplicable(_) => false,
        }
    }

    pub fn first_failure(&self) -> Option<&SpanCheck> {
        self.checks.iter().find(|c| !c.ok())
    }

    pub fn min_margin(&self) -> f64 {
        self.checks.iter().map(SpanCheck::margin).fold(f64::INFINITY, f64::min)
    }
}

/// Compares every iterate (and half-iterate) whose span index is at most the
/// instance's `k` with the bound and the exact Krylov floor.
///
/// The span index is the number of counted operator calls behind a point, one
/// more for a half-iterate than for the iterate it extrapolates from.
pub fn verify_lower_bound(instance: &HardInstance, trace: &Trace) -> LowerBoundReport {
    let mut report = LowerBoundReport {
        instance_k: instance.k,
        bound: instance.gradient_bound(),
        applicability: Applicability::Applicable,
        checks: Vec::new(),
    };
    let z0 = trace.z0();
    let n = instance.n;
    if z0.len() != 2 * n || z0.split() != n {
        report.applicability = Applicability::Inapplicable("trace dimensions do not match the instance".into());
        return report;
    }
    let z_star = instance.saddle_point();
    if instance.d == 0.0 || z0 == &z_star {
        report.bound = 0.0;
        report.applicability = Applicability::Trivial("z0 is the saddle point".into());
        return report;
    }
    if z0.coords().iter().any(|v| *v != 0.0) {
        report.applicability = Applicability::Inapplicable("the bound is stated for runs from z0 = 0".into());
        return report;
    }

    let a = instance.matrix();
    let b = instance.b_vector();
    let basis = krylov_basis(&a, &b, instance.k);
    let floors: Vec<f64> = (0..=instance.k)
        .map(|j| 2.0 * least_squares_residual(&a, &b, &basis[..j.min(basis.len())]))
        .collect();
    let span_residual = |z: &Point, j: usize| {
        let q = &basis[..j.min(basis.len())];
        let x = DVector::from_column_slice(z.x());
        let y = DVector::from_column_slice(z.y());
        relative_projection_residual(&x, q).max(relative_projection_residual(&y, q))
    };

    let calls = trace.oracle_calls();
    for (k, &g) in trace.grad_sq().iter().enumerate() {
        let j = calls[k] as usize;
        if j > instance.k {
            break;
        }
        let res = trace.iterate_at(k).map(|z| span_residual(z, j));
        report.checks.push(SpanCheck {
            k,
            half: false,
            span_index: j,
            grad_sq: g,
            bound: report.bound,
            krylov_floor: floors[j],
            span_residual: res,
        });
    }
    if trace.kind().has_half_iterates() {
        let stored: Vec<(usize, &Point)> = trace.half_iterates().collect();
        for (k, &g) in trace.half_grad_sq().iter().enumerate() {
            let j = calls[k] as usize + 1;
            if j > instance.k {
                break;
            }
            let res = stored
                .binary_search_by_key(&k, |(kk, _)| *kk)
                .ok()
                .map(|i| span_residual(stored[i].1, j));
            report.checks.push(SpanCheck {
                k,
                half: true,
                span_index: j,
                grad_sq: g,
                bound: report.bound,
                krylov_floor: floors[j],
                span_residual: res,
            });
        }
    }
    if let Some(c) = report
        .checks
        .iter()
        .find(|c| c.span_residual.is_some_and(|r| r > SPAN_TOL))
    {
        report.applicability = Applicability::Inapplicable(format!(
            "iterate {}{} leaves the reachable Krylov span (residual {:e})",
            c.k,
            if c.half { "+1/2" } else { "" },
            c.span_residual.unwrap_or(f64::NAN)
        ));
    }
    report
}
