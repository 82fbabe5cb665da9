//! Per-iteration semidefinite certificate behind the EAG-C rate, with `R = 1`.
//!
//! Nonincrease of `V_k` reduces to `S_k ⪰ 0` for
//!
//! ```text
//! S_k = [ A_k − α²τ_k              α²τ_k − α(k+1)(k+2)/2    0                 ]
//!       [ α²τ_k − α(k+1)(k+2)/2    τ_k(1 − α²)              α(k+2)²/2 − τ_k   ]
//!       [ 0                        α(k+2)²/2 − τ_k          τ_k − A_{k+1}     ]
//! ```
//!
//! with `τ_k` and `A_{k+1}` chosen per case so that `det S_k = 0`.

use crate::error::{Error, Result};

use super::intervals::{interval_quantities, IntervalQuantities};
use super::stepsize::check_eag_c_stepsize;
use super::sym3::{det3, max_abs, mat_vec, sym3_eigenvalues, Sym3};

/// Relative PSD tolerance on the smallest eigenvalue.
pub const PSD_TOL: f64 = 1e-9;
/// Relative tolerance on `|det S_k|`.
pub const DET_TOL: f64 = 1e-9;
/// Relative slack for interval membership.
pub const INTERVAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertCase {
    /// `A_k ∈ I_k⁻ = [ℓ_k, α(k+1)(k+2)/2]`
    IMinus,
    /// `A_k ∈ I_k⁺ = [α(k+1)(k+2)/2, u_k]`
    IPlus,
}

/// Case-1 `τ_k`.
pub fn tau_case1(k: usize, alpha: f64, a_k: f64) -> f64 {
    let (kf, a) = (k as f64, alpha);
    let (k1, k2) = (kf + 1.0, kf + 2.0);
    k2 * k2 * (2.0 * (1.0 - a) * a_k - a * k1 * (k1 - a * k2))
        / (2.0 * (a * k2 * (k1 - kf * a) - 2.0 * (1.0 - a) * a_k))
}

/// Case-1 `A_{k+1}`.
pub fn next_a_case1(k: usize, alpha: f64, a_k: f64) -> f64 {
    let (kf, a) = (k as f64, alpha);
    let (k1, k2) = (kf + 1.0, kf + 2.0);
    let e7 = k1 + a * k2;
    a * k2 * k2 / (1.0 - a) * (1.0 - a * e7 * e7 / (4.0 * ((1.0 - a) * a_k + a * a * k1 * k2)))
}

/// Case-2 `τ_k`.
pub fn tau_case2(k: usize, alpha: f64, a_k: f64) -> f64 {
    let (kf, a) = (k as f64, alpha);
    let (k1, k2) = (kf + 1.0, kf + 2.0);
    k2 * k2 * (2.0 * (1.0 + a) * a_k - a * k1 * (k1 + a * k2))
        / (4.0 * (1.0 + a) * a_k - 2.0 * a * k2 * (k1 + kf * a))
}

/// Case-2 `A_{k+1}`.
pub fn next_a_case2(k: usize, alpha: f64, a_k: f64) -> f64 {
    let (kf, a) = (k as f64, alpha);
    let (k1, k2) = (kf + 1.0, kf + 2.0);
    let w = k1 - a * k2;
    a * k2 * k2 / (1.0 + a) * (1.0 - a * w * w / (4.0 * ((1.0 + a) * a_k - a * a * k1 * k2)))
}

/// `S_k` from its defining entries.
pub fn s_matrix(k: usize, alpha: f64, a_k: f64, tau: f64, a_next: f64) -> Sym3 {
    let (kf, a) = (k as f64, alpha);
    let (k1, k2) = (kf + 1.0, kf + 2.0);
    let s12 = a * a * tau - a / 2.0 * k1 * k2;
    let s23 = a / 2.0 * k2 * k2 - tau;
    [
        [a_k - a * a * tau, s12, 0.0],
        [s12, tau * (1.0 - a * a), s23],
        [0.0, s23, tau - a_next],
    ]
}

/// The factors `E₁…E₇` of the Case-1 closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseOneFactors {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub e5: f64,
    pub e6: f64,
    pub e7: f64,
}

impl CaseOneFactors {
    pub fn new(k: usize, alpha: f64, a_k: f64) -> Self {
        let (kf, a) = (k as f64, alpha);
        let (k1, k2) = (kf + 1.0, kf + 2.0);
        Self {
            e1: a * k2 * (k1 - kf * a) - 2.0 * (1.0 - a) * a_k,
            e2: a * k1 * k2 - 2.0 * a_k,
            e3: 2.0 * (1.0 - a) * a_k - a * k1 * (k1 - a * k2),
            e4: 2.0 * (1.0 - a) * a_k + a * a * k1 * k2 - a * a * a * k2 * k2,
            e5: (1.0 - a) * a_k + a * a * k1 * k2,
            e6: 2.0 * (1.0 - a * a) * a_k - a * k1 * k1 + a * a * a * kf * k2,
            e7: k1 + a * k2,
        }
    }

    /// `S_k` assembled from the factored closed forms.
    pub fn s_matrix(&self, k: usize, alpha: f64) -> Sym3 {
        let a = alpha;
        let k2 = k as f64 + 2.0;
        let CaseOneFactors { e1, e2, e3, e4, e5, e6, e7 } = *self;
        let s11 = e2 * e4 / (2.0 * e1);
        let s12 = -a * (1.0 - a) * k2 * e2 * e7 / (2.0 * e1);
        let s22 = (1.0 - a * a) * k2 * k2 * e3 / (2.0 * e1);
        let s23 = -k2 * k2 * e6 / (2.0 * e1);
        let s33 = k2 * k2 * e4 * e6 / (4.0 * (1.0 - a) * e1 * e5);
        [[s11, s12, 0.0], [s12, s22, s23], [0.0, s23, s33]]
    }

    /// The kernel vector `(α(k+2)E₇/(2E₅), E₄/(2(1−α)E₅), 1)`.
    pub fn null_vector(&self, k: usize, alpha: f64) -> [f64; 3] {
        let k2 = k as f64 + 2.0;
        [
            alpha * k2 * self.e7 / (2.0 * self.e5),
            self.e4 / (2.0 * (1.0 - alpha) * self.e5),
            1.0,
        ]
    }
}

/// Certificate data at one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EagCStep {
    pub k: usize,
    pub a_k: f64,
    pub a_next: f64,
    pub tau: f64,
    pub case: CertCase,
    pub s: Sym3,
    pub eigenvalues: [f64; 3],
    pub min_eig: f64,
    pub det: f64,
    /// Largest absolute entry of `S_k`, the scale for the tolerances.
    pub scale: f64,
    pub interval: IntervalQuantities,
    /// `‖S_k v‖ / (‖S_k‖·‖v‖)` for the Case-1 kernel vector; `None` in Case 2.
    pub null_residual: Option<f64>,
}

impl EagCStep {
    pub fn psd_ok(&self) -> bool {
        self.min_eig >= -PSD_TOL * self.scale
    }

    pub fn det_ok(&self) -> bool {
        self.det.abs() <= DET_TOL * self.scale.powi(3)
    }

    pub fn in_interval(&self) -> bool {
        self.interval.contains(self.a_k, INTERVAL_TOL)
    }

    /// `A_k ≥ α(k+1)²/2`, the quadratic growth behind the rate.
    pub fn growth_ok(&self) -> bool {
        let k1 = self.k as f64 + 1.0;
        self.a_k >= self.interval.alpha * k1 * k1 / 2.0
    }

    /// `min_eig ≥ −tol` and `A_k ∈ [ℓ_k, u_k]`.
    pub fn verdict(&self) -> bool {
        self.psd_ok() && self.in_interval()
    }

    /// Every check, including the determinant and growth conditions.
    pub fn all_ok(&self) -> bool {
        self.verdict() && self.det_ok() && self.growth_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EagCCertificate {
    pub alpha: f64,
    /// Whether `α` passes the step-size condition the induction relies on.
    pub stepsize_ok: bool,
    pub steps: Vec<EagCStep>,
}

impl EagCCertificate {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(EagCStep::all_ok)
    }

    pub fn first_failure(&self) -> Option<&EagCStep> {
        self.steps.iter().find(|s| !s.all_ok())
    }

    pub fn worst_relative_min_eig(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| s.min_eig / s.scale)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn worst_relative_det(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| s.det.abs() / s.scale.powi(3))
            .fold(0.0, f64::max)
    }
}

/// Builds the certificate step at `k` for a given `A_k`.
pub fn certificate_step(k: usize, alpha: f64, a_k: f64) -> Result<EagCStep> {
    let interval = interval_quantities(k, alpha)?;
    let case = if a_k <= interval.mid {
        CertCase::IMinus
    } else {
        CertCase::IPlus
    };
    let (tau, a_next) = match case {
        CertCase::IMinus => (tau_case1(k, alpha, a_k), next_a_case1(k, alpha, a_k)),
        CertCase::IPlus => (tau_case2(k, alpha, a_k), next_a_case2(k, alpha, a_k)),
    };
    let s = s_matrix(k, alpha, a_k, tau, a_next);
    let eigenvalues = sym3_eigenvalues(&s);
    let scale = max_abs(&s).max(f64::MIN_POSITIVE);
    let null_residual = (case == CertCase::IMinus).then(|| {
        let v = CaseOneFactors::new(k, alpha, a_k).null_vector(k, alpha);
        let sv = mat_vec(&s, v);
        let norm = |x: [f64; 3]| (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        norm(sv) / (scale * norm(v))
    });
    Ok(EagCStep {
        k,
        a_k,
        a_next,
        tau,
        case,
        s,
        eigenvalues,
        min_eig: eigenvalues[0],
        det: det3(&s),
        scale,
        interval,
        null_residual,
    })
}

/// Runs the certificate for `k = 0..=max_k`, starting from `A₀ = ℓ₀ = α/(1+α)`.
pub fn eag_c_certificate(alpha_r: f64, max_k: usize) -> Result<EagCCertificate> {
    if !(alpha_r > 0.0 && alpha_r <= 0.5) {
        return Err(Error::Domain(format!("EAG-C certificate needs alpha*R in (0, 1/2], got {alpha_r}")));
    }
    if max_k == 0 {
        return Err(Error::Domain("certificate horizon must be at least 1".into()));
    }
    let alpha = alpha_r;
    let mut a_k = alpha / (1.0 + alpha);
    let mut steps = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let step = certificate_step(k, alpha, a_k)?;
        a_k = step.a_next;
        steps.push(step);
    }
    Ok(EagCCertificate {
        alpha,
        stepsize_ok: check_eag_c_stepsize(alpha),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_at_left_endpoint() {
        let c = eag_c_certificate(0.125, 3).unwrap();
        assert!((c.steps[0].a_k - 1.0 / 9.0).abs() < 1e-16);
        assert_eq!(c.steps[0].case, CertCase::IMinus);
    }

    #[test]
    fn passes_at_one_eighth() {
        let c = eag_c_certificate(0.125, 1000).unwrap();
        assert!(c.stepsize_ok);
        assert!(c.passed(), "{:?}", c.first_failure());
        assert!(c.steps.iter().all(|s| s.case == CertCase::IMinus));
        assert!(c.steps.iter().all(|s| s.null_residual.unwrap() < 1e-9));
    }

    #[test]
    fn factored_forms_agree_with_definition() {
        let alpha = 0.125;
        let c = eag_c_certificate(alpha, 200).unwrap();
        for s in &c.steps {
            let f = CaseOneFactors::new(s.k, alpha, s.a_k);
            let alt = f.s_matrix(s.k, alpha);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((alt[i][j] - s.s[i][j]).abs() <= 1e-9 * s.scale, "k={} ({i},{j})", s.k);
                }
            }
            // (1+α)E₃E₄ = α²(1−α)E₂E₇² + 2E₅E₆
            let lhs = (1.0 + alpha) * f.e3 * f.e4;
            let rhs = alpha * alpha * (1.0 - alpha) * f.e2 * f.e7 * f.e7 + 2.0 * f.e5 * f.e6;
            assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(rhs.abs()));
        }
    }

    #[test]
    fn both_forms_of_case1_update_agree() {
        let alpha = 0.1;
        for k in 0..100 {
            let q = interval_quantities(k, alpha).unwrap();
            let a_k = 0.5 * (q.ell + q.mid);
            let (kf, a) = (k as f64, alpha);
            let (k1, k2) = (kf + 1.0, kf + 2.0);
            let w = k1 - a * k2;
            let first = a * k2 * k2 * (4.0 * (1.0 - a) * a_k - a * w * w)
                / (4.0 * (1.0 - a) * ((1.0 - a) * a_k + a * a * k1 * k2));
            let second = next_a_case1(k, alpha, a_k);
            assert!((first - second).abs() <= 1e-12 * first);
        }
    }

    #[test]
    fn case_two_gives_singular_psd_matrix() {
        for &alpha in &[0.05, 0.125, 0.3] {
            for k in [0usize, 1, 5, 40, 300] {
                let q = interval_quantities(k, alpha).unwrap();
                for t in [0.1, 0.5, 0.9] {
                    let a_k = q.mid + t * (q.u - q.mid);
                    let step = certificate_step(k, alpha, a_k).unwrap();
                    assert_eq!(step.case, CertCase::IPlus);
                    assert!(step.tau > 0.0);
                    assert!(step.psd_ok(), "alpha={alpha} k={k} t={t} {:?}", step.eigenvalues);
                    assert!(step.det_ok());
                    // both forms of the Case-2 update
                    let (kf, a) = (k as f64, alpha);
                    let (k1, k2) = (kf + 1.0, kf + 2.0);
                    let e7 = k1 + a * k2;
                    let first = a * k2 * k2 * (4.0 * (1.0 + a) * a_k - a * e7 * e7)
                        / (4.0 * (1.0 + a) * ((1.0 + a) * a_k - a * a * k1 * k2));
                    assert!((first - step.a_next).abs() <= 1e-12 * first);
                }
            }
        }
    }

    #[test]
    fn theorem_constant_consistency() {
        // A_k ≥ α(k+1)²/2 yields the rate constant; check the growth margin directly
        let c = eag_c_certificate(0.125, 50).unwrap();
        assert!(c.steps.iter().all(EagCStep::growth_ok));
    }

    #[test]
    fn large_step_breaks_induction() {
        let c = eag_c_certificate(0.3, 200).unwrap();
        assert!(!c.stepsize_ok);
        assert!(!c.passed());
    }

    #[test]
    fn domain() {
        assert!(eag_c_certificate(0.6, 10).is_err());
        assert!(eag_c_certificate(0.1, 0).is_err());
    }
}
