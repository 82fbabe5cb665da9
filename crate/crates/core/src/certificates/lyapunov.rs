//! Lyapunov sequences `V_k = A_k‖G(z^k)‖² + B_k⟨G(z^k), z^k − z⁰⟩` for EAG.

use crate::algorithms::{AlgoKind, Trace};
use crate::error::{Error, Result};
use crate::saddle::{dot, SaddleProblem};

/// Lyapunov coefficients from `B₀ = 1`, `B_{k+1} = B_k/(1−β_k)` and
/// `A_k = α_k B_k/(2β_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovCoefficients {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl LyapunovCoefficients {
    /// From arbitrary step and anchoring sequences of equal length.
    pub fn from_sequences(alphas: &[f64], betas: &[f64]) -> Result<Self> {
        if alphas.len() != betas.len() {
            return Err(Error::DimensionMismatch {
                expected: alphas.len(),
                found: betas.len(),
            });
        }
        let mut b = Vec::with_capacity(alphas.len());
        let mut bk = 1.0;
        for &beta in betas {
            if !(beta > 0.0 && beta < 1.0) {
                return Err(Error::Domain(format!("anchoring coefficient must lie in (0,1), got {beta}")));
            }
            b.push(bk);
            bk /= 1.0 - beta;
        }
        let a = alphas
            .iter()
            .zip(betas)
            .zip(&b)
            .map(|((al, be), bk)| al * bk / (2.0 * be))
            .collect();
        Ok(Self {
            alphas: alphas.to_vec(),
            betas: betas.to_vec(),
            a,
            b,
        })
    }

    /// With `β_k = 1/(k+δ)`.
    pub fn for_delta(alphas: &[f64], delta: f64) -> Result<Self> {
        let betas: Vec<f64> = (0..alphas.len()).map(|k| 1.0 / (k as f64 + delta)).collect();
        Self::from_sequences(alphas, &betas)
    }
}

/// `A_k = α_k(k+δ)(k+δ−1)/(2(δ−1))`, `B_k = (k+δ−1)/(δ−1)` for `β_k = 1/(k+δ)`.
pub fn closed_form_coefficients(alpha_k: f64, k: usize, delta: f64) -> (f64, f64) {
    let s = k as f64 + delta;
    (alpha_k * s * (s - 1.0) / (2.0 * (delta - 1.0)), (s - 1.0) / (delta - 1.0))
}

/// `V_k` at the stored iterates of a trace.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovSequence {
    pub ks: Vec<usize>,
    pub values: Vec<f64>,
    pub grad_sq: Vec<f64>,
}

/// Recomputes `G` at every stored iterate of an EAG trace and forms `V_k`.
pub fn lyapunov_sequence(trace: &Trace, problem: &SaddleProblem, delta: f64) -> Result<LyapunovSequence> {
    if !trace.kind().is_anchored_extragradient() {
        return Err(Error::MissingRecord("Lyapunov sequence needs an EAG trace with step sizes"));
    }
    if trace.kind() == AlgoKind::EagV && trace.alphas().len() != trace.iters() + 1 {
        return Err(Error::MissingRecord("EAG-V trace lacks its step-size record"));
    }
    if !(delta > 1.0) {
        return Err(Error::Domain(format!("anchor offset must exceed 1, got {delta}")));
    }
    let z0 = trace.z0();
    let mut out = LyapunovSequence {
        ks: Vec::with_capacity(trace.iterates().len()),
        values: Vec::with_capacity(trace.iterates().len()),
        grad_sq: Vec::with_capacity(trace.iterates().len()),
    };
    let mut diff = vec![0.0; z0.len()];
    for (&k, z) in trace.iterate_ks().iter().zip(trace.iterates()) {
        let g = problem.eval(z)?;
        let (a_k, b_k) = closed_form_coefficients(trace.alpha_at(k), k, delta);
        for ((d, zi), z0i) in diff.iter_mut().zip(z.coords()).zip(z0.coords()) {
            *d = zi - z0i;
        }
        let gsq = g.norm_sq();
        out.ks.push(k);
        out.values.push(a_k * gsq + b_k * dot(g.coords(), &diff));
        out.grad_sq.push(gsq);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovViolation {
    pub k: usize,
    pub increase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovReport {
    pub tol: f64,
    pub checked: usize,
    pub violations: Vec<LyapunovViolation>,
    /// Largest observed `V_{k+1} − V_k`.
    pub max_increase: f64,
}

impl LyapunovReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&LyapunovViolation> {
        self.violations.first()
    }
}

/// Default tolerance multiplier: violations are `V_{k+1} > V_k + 1e-10·scale`.
pub const LYAPUNOV_TOL: f64 = 1e-10;

/// Checks `V_{k+1} ≤ V_k + 1e-10·scale` between consecutive stored iterates.
pub fn check_lyapunov_monotone(seq: &LyapunovSequence, scale: f64) -> LyapunovReport {
    let tol = LYAPUNOV_TOL * scale;
    let mut report = LyapunovReport {
        tol,
        checked: seq.values.len().saturating_sub(1),
        violations: Vec::new(),
        max_increase: f64::NEG_INFINITY,
    };
    for (i, w) in seq.values.windows(2).enumerate() {
        let inc = w[1] - w[0];
        report.max_increase = report.max_increase.max(inc);
        if inc > tol {
            report.violations.push(LyapunovViolation {
                k: seq.ks[i + 1],
                increase: inc,
            });
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub alpha_inf: f64,
    pub checked: usize,
    /// Smallest `(V_k + D²/α_∞) − (α_∞/4)(k+1)(k+2)‖G(z^k)‖²`, relative to `V_0 + D²/α_∞`.
    pub min_relative_slack: f64,
    pub first_failure: Option<usize>,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `(α_∞/4)(k+1)(k+2)‖G(z^k)‖² ≤ V_k + D²/α_∞` (for `β_k = 1/(k+2)`),
/// where `alpha_inf` must not exceed any `α_k` and `dist_sq = ‖z⁰ − z*‖²`.
pub fn check_rate_reconstruction(
    seq: &LyapunovSequence,
    alpha_inf: f64,
    dist_sq: f64,
) -> ReconstructionReport {
    let offset = dist_sq / alpha_inf;
    let norm = (seq.values.first().copied().unwrap_or(0.0) + offset).abs().max(f64::MIN_POSITIVE);
    let mut report = ReconstructionReport {
        alpha_inf,
        checked: seq.ks.len(),
        min_relative_slack: f64::INFINITY,
        first_failure: None,
    };
    for ((&k, &v), &g) in seq.ks.iter().zip(&seq.values).zip(&seq.grad_sq) {
        let kf = k as f64;
        let lhs = alpha_inf / 4.0 * (kf + 1.0) * (kf + 2.0) * g;
        let slack = (v + offset - lhs) / norm;
        report.min_relative_slack = report.min_relative_slack.min(slack);
        if slack < -1e-12 && report.first_failure.is_none() {
            report.first_failure = Some(k);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{run, AlgoConfig, StoragePolicy};
    use crate::problems::make_bilinear;
    use crate::saddle::Point;

    #[test]
    fn recursive_and_closed_forms_agree() {
        for &delta in &[2.0, 2.697, 3.0, 5.5] {
            let alphas: Vec<f64> = (0..60).map(|k| 0.4 + 0.1 / (k as f64 + 1.0)).collect();
            let c = LyapunovCoefficients::for_delta(&alphas, delta).unwrap();
            for k in 0..60 {
                let (a, b) = closed_form_coefficients(alphas[k], k, delta);
                assert!((c.a[k] - a).abs() <= 1e-12 * a, "delta={delta} k={k}");
                assert!((c.b[k] - b).abs() <= 1e-12 * b);
            }
        }
        let (a, b) = closed_form_coefficients(0.3, 4, 2.0);
        assert!((a - 0.3 * 5.0 * 6.0 / 2.0).abs() < 1e-14);
        assert_eq!(b, 5.0);
        let (a, b) = closed_form_coefficients(0.3, 4, 3.0);
        assert!((a - 0.3 * 7.0 * 6.0 / 4.0).abs() < 1e-14);
        assert_eq!(b, 3.0);
    }

    #[test]
    fn initial_value_and_monotone_on_bilinear() {
        let p = make_bilinear(1.0).unwrap();
        let z0 = Point::from_blocks(&[1.0], &[0.0]).unwrap();
        let cfg = AlgoConfig::new(AlgoKind::EagV, 0.618, 1000).with_storage(StoragePolicy::Dense);
        let t = run(&p, &cfg, &z0).unwrap();
        let seq = lyapunov_sequence(&t, &p, 2.0).unwrap();
        assert!((seq.values[0] - 0.618 * t.grad_sq()[0]).abs() < 1e-15);
        let rep = check_lyapunov_monotone(&seq, 1.0);
        assert!(rep.passed(), "{:?}", rep.first_violation());
    }

    #[test]
    fn saddle_start_gives_zero_sequence() {
        let p = make_bilinear(1.0).unwrap();
        let t = run(&p, &AlgoConfig::new(AlgoKind::EagV, 0.5, 20), &Point::zeros(1, 1)).unwrap();
        let seq = lyapunov_sequence(&t, &p, 2.0).unwrap();
        assert!(seq.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rejects_non_eag_traces() {
        let p = make_bilinear(1.0).unwrap();
        let t = run(&p, &AlgoConfig::new(AlgoKind::Eg, 0.1, 5), &Point::zeros(1, 1)).unwrap();
        assert!(lyapunov_sequence(&t, &p, 2.0).is_err());
    }

    #[test]
    fn monotone_check_flags_increase() {
        let seq = LyapunovSequence {
            ks: vec![0, 1, 2, 3],
            values: vec![3.0, 2.0, 2.5, 1.0],
            grad_sq: vec![0.0; 4],
        };
        let rep = check_lyapunov_monotone(&seq, 1.0);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.first_violation().unwrap().k, 2);
        let flat = LyapunovSequence { ks: vec![0, 1], values: vec![1.0, 1.0], grad_sq: vec![0.0; 2] };
        assert!(check_lyapunov_monotone(&flat, 1.0).passed());
    }
}
