//! EAG-C, EAG-V and the baseline methods, with their run loop and rate
//! bounds.

mod bounds;
mod config;
mod run;
mod stepsize;
mod steps;
mod trace;

pub use bounds::{
    eag_c_corollary_bound, eag_v_corollary_bound, theoretical_bound, BoundKind, RateBound,
    EAG_C_COROLLARY_CONSTANT, EAG_V_COROLLARY_CONSTANT,
};
pub use config::{AlgoConfig, AlgoKind};
pub use run::run;
pub use stepsize::{
    alpha_limit_delta, eag_v_alpha_bracket, eag_v_alpha_limit, eag_v_alpha_limit_lower,
    eag_v_alpha_next, eag_v_alpha_next_delta, eag_v_alpha_sequence, LIMIT_MAX_STEPS,
    LIMIT_MIN_STEPS, LIMIT_TOL,
};
pub use steps::{baseline_step, eag_step, eg_step, BaselineParams, BaselineState};
pub use trace::{StoragePolicy, Trace};
