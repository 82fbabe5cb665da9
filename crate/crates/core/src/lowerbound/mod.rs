//! The `Ω(R²D²/k²)` lower bound: minimax polynomials, worst-case biaffine
//! instances, an exact Krylov least-squares oracle and the matching
//! Chebyshev solver.

mod chebyshev;
mod dual;
mod instance;
mod krylov;
mod solver;
mod verify;

pub use chebyshev::{
    chebyshev_coeffs, chebyshev_eval, even_part, extremal_nodes, minimax_poly, poly_eval,
    MinimaxPoly,
};
pub use dual::{dual_weights, dual_weights_ascent, kkt_residual, nodes_and_weights, KKT_TOL};
pub use instance::{build_hard_instance, HardInstance};
pub use krylov::{krylov_basis, krylov_min_residual};
pub use solver::{chebyshev_solver, q_coeffs, residual_sq, SolverOutput};
pub use verify::{
    verify_lower_bound, Applicability, LowerBoundReport, SpanCheck, BOUND_TOL, SPAN_TOL,
};

/// `M*(k, R) = R/(2⌊k/2⌋+1)`.
pub fn m_star(k: usize, r: f64) -> f64 {
    r / (2 * (k / 2) + 1) as f64
}
