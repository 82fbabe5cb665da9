//! Runtime checks for the convergence arguments: step-size validity, Lyapunov
//! nonincrease, and the EAG-C semidefinite certificate.

mod eagc;
mod intervals;
mod lyapunov;
mod stepsize;
mod sym3;

pub use eagc::{
    certificate_step, eag_c_certificate, next_a_case1, next_a_case2, s_matrix, tau_case1,
    tau_case2, CaseOneFactors, CertCase, EagCCertificate, EagCStep, DET_TOL, INTERVAL_TOL, PSD_TOL,
};
pub use intervals::{interval_quantities, IntervalQuantities};
pub use lyapunov::{
    check_lyapunov_monotone, check_rate_reconstruction, closed_form_coefficients,
    lyapunov_sequence, LyapunovCoefficients, LyapunovReport, LyapunovSequence,
    LyapunovViolation, ReconstructionReport, LYAPUNOV_TOL,
};
pub use stepsize::{check_eag_c_stepsize, eag_c_stepsize_polynomials, max_eag_c_stepsize};
pub use sym3::{det3, sym3_eigenvalues, Sym3};
