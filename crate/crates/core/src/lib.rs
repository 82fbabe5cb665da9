//! Extra anchored gradient (EAG) methods for smooth convex-concave minimax
//! problems, together with the machinery that checks their guarantees.
//!
//! The crate is organised around five modules:
//!
//! * [`saddle`]: joint iterates, saddle operators, oracle counting and
//!   operator diagnostics (monotonicity, Lipschitz estimates).
//! * [`algorithms`]: EAG-C, EAG-V and the baselines (EG, Popov, SimGD-A,
//!   alternating GDA, simultaneous GD), run loops and rate bounds.
//! * [`certificates`]: Lyapunov sequences, the EAG-C semidefinite certificate
//!   and step-size validity tests.
//! * [`lowerbound`]: Chebyshev minimax polynomials, worst-case biaffine
//!   instances, the exact Krylov least-squares oracle and the optimal
//!   Chebyshev solver.
//! * [`problems`]: benchmark problems and the closed-form/RK4 continuous-time
//!   flows for `L(x, y) = xy`.
//!
//! All arithmetic is `f64`.

pub mod algorithms;
pub mod certificates;
mod error;
pub mod lowerbound;
pub mod problems;
pub mod saddle;

pub use algorithms::{run, AlgoConfig, AlgoKind, StoragePolicy, Trace};
pub use error::{Error, Result};
pub use saddle::{Operator, OracleCounter, Point, SaddleProblem};
