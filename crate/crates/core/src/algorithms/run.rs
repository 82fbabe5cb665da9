use log::debug;

use crate::error::{Error, Result};
use crate::saddle::norm_sq;
use crate::saddle::{OracleCounter, Point, SaddleProblem};

use super::config::{AlgoConfig, AlgoKind};
use super::stepsize::eag_v_alpha_next_delta;
use super::steps::{
    alt_gda_kernel, eag_kernel, gd_kernel, popov_kernel, simgd_a_coefficients, simgd_a_kernel,
    EagBuffers,
};
use super::trace::Trace;

struct Recorder {
    kept: Vec<usize>,
    cursor: usize,
    split: usize,
    trace: Trace,
}

impl Recorder {
    fn wants(&self, k: usize) -> bool {
        self.kept.get(self.cursor) == Some(&k)
    }

    fn store(&mut self, k: usize, z: &[f64]) {
        if self.wants(k) {
            self.trace.iterate_ks.push(k);
            self.trace.iterates.push(Point::from_raw(z.to_vec(), self.split));
            self.cursor += 1;
        }
    }

    fn store_half(&mut self, k: usize, half: &[f64], g_half_sq: f64) {
        self.trace.half_grad_sq.push(g_half_sq);
        if self.trace.iterate_ks.last() == Some(&k) {
            self.trace.half_ks.push(k);
            self.trace.half_iterates.push(Point::from_raw(half.to_vec(), self.split));
        }
    }
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Runs `config.iters` iterations from `z0`.
///
/// Every iteration evaluates `G(z^k)` once (counted), so `grad_sq[k]` comes
/// for free; `G` at the final iterate is evaluated without charging the
/// counter.
pub fn run(problem: &SaddleProblem, config: &AlgoConfig, z0: &Point) -> Result<Trace> {
    let lipschitz = problem.lipschitz();
    config.validate(lipschitz)?;
    problem.check_dims(z0)?;
    if !z0.is_finite() {
        return Err(Error::InvalidPoint("starting point has non-finite entries".into()));
    }
    let kind = config.kind;
    let iters = config.iters;
    let n = z0.len();
    let split = z0.split();
    debug!("running {kind} on {} for {iters} iterations", problem.name());

    let mut rec = Recorder {
        kept: config.storage.kept_indices(iters),
        cursor: 0,
        split,
        trace: Trace {
            config: config.clone(),
            z0: z0.clone(),
            iterate_ks: Vec::new(),
            iterates: Vec::new(),
            half_ks: Vec::new(),
            half_iterates: Vec::new(),
            grad_sq: Vec::with_capacity(iters + 1),
            half_grad_sq: Vec::with_capacity(if kind.has_half_iterates() { iters } else { 0 }),
            alphas: Vec::with_capacity(if kind == AlgoKind::EagV { iters + 1 } else { 0 }),
            oracle_calls: Vec::with_capacity(iters + 1),
        },
    };

    let z0c = z0.coords();
    let mut z = z0c.to_vec();
    let mut next = vec![0.0; n];
    let mut g = vec![0.0; n];
    let mut g_prev = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut buf = EagBuffers::new(n);
    let mut counter = OracleCounter::new();
    let mut alpha = config.alpha0;

    for k in 0..iters {
        rec.trace.oracle_calls.push(counter.evals());
        problem.apply_raw(&z, &mut g);
        counter.record();
        if !all_finite(&g) {
            return Err(Error::NonFinite { iteration: k });
        }
        rec.trace.grad_sq.push(norm_sq(&g));
        rec.store(k, &z);

        match kind {
            AlgoKind::EagC | AlgoKind::EagV | AlgoKind::Eg => {
                if kind == AlgoKind::EagV {
                    if !(alpha * lipschitz < 1.0) {
                        return Err(Error::Domain(format!(
                            "EAG-V step alpha_{k}*R = {} left (0,1)",
                            alpha * lipschitz
                        )));
                    }
                    rec.trace.alphas.push(alpha);
                }
                let beta = if kind == AlgoKind::Eg { 0.0 } else { config.beta(k) };
                let anchor = if kind == AlgoKind::Eg { &z[..] } else { z0c };
                eag_kernel(problem, &z, &g, anchor, alpha, beta, &mut buf, &mut next, &mut counter);
                if !all_finite(&buf.g_half) {
                    return Err(Error::NonFinite { iteration: k + 1 });
                }
                rec.store_half(k, &buf.half, norm_sq(&buf.g_half));
                if kind == AlgoKind::EagV {
                    alpha = eag_v_alpha_next_delta(alpha, k, lipschitz, config.anchor_delta)?;
                }
            }
            AlgoKind::Popov => {
                if k == 0 {
                    g_prev.copy_from_slice(&g);
                }
                popov_kernel(&z, &g, &g_prev, alpha, &mut next);
                g_prev.copy_from_slice(&g);
            }
            AlgoKind::SimGdA => {
                let (step, pull) = simgd_a_coefficients(k, config.simgd_p, config.simgd_gamma);
                simgd_a_kernel(&z, &g, z0c, step, pull, &mut next);
            }
            AlgoKind::AltGda => {
                alt_gda_kernel(problem, &z, &g, alpha, &mut scratch, &mut next, &mut counter);
            }
            AlgoKind::SimGd => gd_kernel(&z, &g, alpha, &mut next),
        }
        if !all_finite(&next) {
            return Err(Error::NonFinite { iteration: k + 1 });
        }
        std::mem::swap(&mut z, &mut next);
    }

    rec.trace.oracle_calls.push(counter.evals());
    problem.apply_raw(&z, &mut g);
    if !all_finite(&g) {
        return Err(Error::NonFinite { iteration: iters });
    }
    rec.trace.grad_sq.push(norm_sq(&g));
    rec.store(iters, &z);
    if kind == AlgoKind::EagV {
        rec.trace.alphas.push(alpha);
    }
    Ok(rec.trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::StoragePolicy;
    use crate::algorithms::steps::{baseline_step, eag_step, BaselineParams, BaselineState};
    use crate::problems::{make_bilinear, make_huber_saddle, HuberSaddleParams};

    fn unit_x() -> Point {
        Point::from_blocks(&[1.0], &[0.0]).unwrap()
    }

    #[test]
    fn oracle_accounting() {
        let p = make_bilinear(1.0).unwrap();
        for kind in AlgoKind::ALL {
            let alpha = if kind == AlgoKind::EagC { 0.125 } else { 0.1 };
            let t = run(&p, &AlgoConfig::new(kind, alpha, 17), &unit_x()).unwrap();
            assert_eq!(t.grad_sq().len(), 18);
            let per = kind.evals_per_iter();
            for (k, &c) in t.oracle_calls().iter().enumerate() {
                assert_eq!(c, per * k as u64, "{kind}");
            }
        }
    }

    #[test]
    fn grad_sq_matches_recomputation() {
        let p = make_huber_saddle(HuberSaddleParams::DEFAULT).unwrap();
        let z0 = Point::from_blocks(&[0.6], &[-0.8]).unwrap();
        for kind in AlgoKind::ALL {
            let cfg = AlgoConfig::new(kind, 0.1, 50).with_storage(StoragePolicy::Dense);
            let t = run(&p, &cfg, &z0).unwrap();
            for (k, z) in t.iterate_ks().iter().zip(t.iterates()) {
                assert_eq!(t.grad_sq()[*k], p.grad_sq_norm(z).unwrap());
            }
        }
    }

    #[test]
    fn run_matches_public_steps() {
        let p = make_huber_saddle(HuberSaddleParams::DEFAULT).unwrap();
        let z0 = Point::from_blocks(&[0.6], &[-0.8]).unwrap();
        let cfg = AlgoConfig::new(AlgoKind::EagV, 0.5, 20).with_storage(StoragePolicy::Dense);
        let t = run(&p, &cfg, &z0).unwrap();
        let mut z = z0.clone();
        let mut c = OracleCounter::new();
        for k in 0..20 {
            let (h, n) = eag_step(&p, &z, &z0, t.alphas()[k], cfg.beta(k), &mut c).unwrap();
            assert_eq!(t.half_iterates().nth(k).unwrap().1, &h);
            z = n;
            assert_eq!(t.iterate_at(k + 1).unwrap(), &z);
        }
        for kind in [AlgoKind::Popov, AlgoKind::SimGdA, AlgoKind::AltGda, AlgoKind::SimGd, AlgoKind::Eg] {
            let cfg = AlgoConfig::new(kind, 0.1, 20).with_storage(StoragePolicy::Dense);
            let t = run(&p, &cfg, &z0).unwrap();
            let mut s = BaselineState::new(z0.clone());
            let params = BaselineParams { alpha: 0.1, simgd_p: cfg.simgd_p, simgd_gamma: cfg.simgd_gamma };
            for k in 0..20 {
                baseline_step(kind, &p, &mut s, params, &mut c).unwrap();
                assert_eq!(t.iterate_at(k + 1).unwrap(), &s.z, "{kind} k={k}");
            }
        }
    }

    #[test]
    fn saddle_start_stays_put() {
        let p = make_bilinear(1.0).unwrap();
        let z0 = Point::zeros(1, 1);
        for kind in AlgoKind::ALL {
            let t = run(&p, &AlgoConfig::new(kind, 0.1, 10), &z0).unwrap();
            assert!(t.iterates().iter().all(|z| z == &z0));
        }
    }

    #[test]
    fn eag_v_records_alphas_and_rate() {
        let p = make_bilinear(1.0).unwrap();
        let t = run(&p, &AlgoConfig::new(AlgoKind::EagV, 0.618, 200), &unit_x()).unwrap();
        assert_eq!(t.alphas().len(), 201);
        assert!(t.alphas().windows(2).all(|w| w[1] < w[0]));
        for (k, g) in t.grad_sq().iter().enumerate() {
            assert!(*g <= 27.0 / ((k + 1) as f64 * (k + 2) as f64));
        }
        let t = run(&p, &AlgoConfig::new(AlgoKind::EagC, 0.125, 200), &unit_x()).unwrap();
        for (k, g) in t.grad_sq().iter().enumerate() {
            assert!(*g <= 260.0 / ((k + 1) as f64).powi(2));
        }
    }

    #[test]
    fn divergence_is_reported() {
        let p = make_bilinear(1.0).unwrap();
        let err = run(&p, &AlgoConfig::new(AlgoKind::SimGd, 1e150, 50), &unit_x()).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn thinned_storage() {
        let p = make_bilinear(1.0).unwrap();
        let cfg = AlgoConfig::new(AlgoKind::Eg, 0.1, 100)
            .with_storage(StoragePolicy::PowersOfTwo { dense_limit: 4 });
        let t = run(&p, &cfg, &unit_x()).unwrap();
        assert_eq!(t.iterate_ks(), &[0, 1, 2, 3, 4, 8, 16, 32, 64, 100]);
        assert_eq!(t.grad_sq().len(), 101);
        assert_eq!(t.half_grad_sq().len(), 100);
        assert_eq!(t.half_iterates().count(), 9);
    }
}
