//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use minimax_core::algorithms::{
    eag_c_corollary_bound, eag_v_alpha_limit, eag_v_alpha_limit_lower, eag_v_alpha_sequence,
    eag_v_corollary_bound, BoundKind, RateBound, LIMIT_MAX_STEPS, LIMIT_TOL,
};
use minimax_core::certificates::{
    check_lyapunov_monotone, check_rate_reconstruction, eag_c_certificate, lyapunov_sequence,
    LYAPUNOV_TOL,
};
use minimax_core::lowerbound::{
    build_hard_instance, chebyshev_solver, krylov_min_residual, minimax_poly, residual_sq,
    verify_lower_bound,
};
use minimax_core::problems::{
    integrate_flow, make_random_monotone, max_flow_deviation, resolve_preset, FlowSpec,
};
use minimax_core::{run, AlgoConfig, AlgoKind, Point, SaddleProblem, StoragePolicy};

const RATE_SLACK: f64 = 1e-9;
const LYAPUNOV_REL_TOL: f64 = 1e-10;
const SANDWICH_TOL: f64 = 1e-8;
const GRID_TOL: f64 = 1e-6;
const EQUIOSC_TOL: f64 = 1e-10;
const FLOW_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;

struct Named {
    name: String,
    problem: SaddleProblem,
    z0: Point,
}

fn preset(name: &str) -> Result<Named, String> {
    let p = resolve_preset(name).map_err(|e| e.to_string())?;
    Ok(Named { name: p.name, problem: p.problem, z0: p.z0 })
}

fn dist(n: &Named) -> Result<f64, String> {
    n.problem
        .distance_to_saddle(&n.z0)
        .ok_or_else(|| format!("{} has no known saddle point", n.name))
}

fn hard_named(k: usize) -> Result<Named, String> {
    let h = build_hard_instance(k, 1.0, 1.0, k + 2).map_err(|e| e.to_string())?;
    let problem = h.saddle_problem().map_err(|e| e.to_string())?;
    Ok(Named { name: format!("hard-instance-k{k}"), problem, z0: Point::zeros(h.n, h.n) })
}

fn run_on(n: &Named, kind: AlgoKind, alpha: f64, iters: usize, storage: StoragePolicy) -> Result<minimax_core::Trace, String> {
    let cfg = AlgoConfig::new(kind, alpha, iters).with_storage(storage);
    run(&n.problem, &cfg, &n.z0).map_err(|e| format!("{} {kind}: {e}", n.name))
}

/// Largest `grad_sq[k] / bound(k)` over the run; must stay ≤ 1 + slack.
fn worst_ratio(grad_sq: &[f64], bound: impl Fn(usize) -> f64) -> f64 {
    grad_sq
        .iter()
        .enumerate()
        .map(|(k, g)| g / bound(k))
        .fold(0.0, f64::max)
}

fn rate_check(kind: AlgoKind) -> Outcome {
    let mut notes = Vec::new();
    for name in ["huber-default", "ouyang-200"] {
        let n = preset(name)?;
        let r = n.problem.lipschitz();
        let d = dist(&n)?;
        let (alpha, bound): (f64, Box<dyn Fn(usize) -> f64>) = match kind {
            AlgoKind::EagV => (0.618 / r, Box::new(move |k| eag_v_corollary_bound(k, r, d))),
            _ => (0.125 / r, Box::new(move |k| eag_c_corollary_bound(k, r, d))),
        };
        let t = run_on(&n, kind, alpha, 10_000, StoragePolicy::Endpoints)?;
        let w = worst_ratio(t.grad_sq(), bound);
        if w > 1.0 + RATE_SLACK {
            return Err(format!("{name}: grad_sq/bound reached {w:.6e}"));
        }
        notes.push(format!("{name} max ratio {w:.4e}"));
    }
    Ok(notes.join(", "))
}

fn c1_eag_v_rate() -> Outcome {
    rate_check(AlgoKind::EagV)
}

fn c2_eag_c_rate() -> Outcome {
    rate_check(AlgoKind::EagC)
}

fn c3_alpha_limit() -> Outcome {
    let lim = eag_v_alpha_limit(0.618, 1.0, LIMIT_TOL, LIMIT_MAX_STEPS).map_err(|e| e.to_string())?;
    let seq = eag_v_alpha_sequence(0.618, 1.0, 2.0, 1000).map_err(|e| e.to_string())?;
    let a1000 = seq[1000];
    let lower = eag_v_alpha_limit_lower(0.618, 1.0, 2.0).map_err(|e| e.to_string())?;
    let detail = format!("limit {lim:.10}, alpha_1000 {a1000:.10}, certified lower {lower:.10}");
    if !(lim > 0.4360 && lim < 0.4372) {
        return Err(format!("limit outside (0.4360, 0.4372): {detail}"));
    }
    if !(a1000 > 0.4366 && a1000 < 0.437) {
        return Err(format!("alpha_1000 outside (0.4366, 0.437): {detail}"));
    }
    Ok(detail)
}

fn c4_lyapunov() -> Outcome {
    if LYAPUNOV_TOL != LYAPUNOV_REL_TOL {
        return Err(format!("library tolerance {LYAPUNOV_TOL:e} differs from the pinned {LYAPUNOV_REL_TOL:e}"));
    }
    let mut problems = vec![
        preset("huber-default")?,
        preset("ouyang-200")?,
        preset("bilinear-unit")?,
        hard_named(6)?,
    ];
    for i in 0..20u64 {
        let n = 2 + (i as usize % 5) * 4;
        let problem = make_random_monotone(n, 1.0 + 0.25 * (i % 4) as f64, 1000 + i).map_err(|e| e.to_string())?;
        let z0 = Point::new((0..2 * n).map(|j| ((j + 1) as f64 * 0.7 + i as f64).sin()).collect(), n)
            .map_err(|e| e.to_string())?;
        problems.push(Named { name: format!("random-{n}-{}", 1000 + i), problem, z0 });
    }
    let mut runs = 0;
    let mut worst_slack = f64::INFINITY;
    for n in &problems {
        let r = n.problem.lipschitz();
        let d = dist(n)?;
        let scale = r * r * d * d;
        for i in 1..=10 {
            let alpha0 = i as f64 * 0.07 / r;
            let t = run_on(n, AlgoKind::EagV, alpha0, 1000, StoragePolicy::Dense)?;
            let seq = lyapunov_sequence(&t, &n.problem, 2.0).map_err(|e| e.to_string())?;
            let rep = check_lyapunov_monotone(&seq, scale);
            if !rep.passed() {
                return Err(format!("{} alpha0={alpha0:.3}: {:?}", n.name, rep.first_violation()));
            }
            let a_inf = eag_v_alpha_limit_lower(alpha0, r, 2.0).map_err(|e| e.to_string())?;
            let rec = check_rate_reconstruction(&seq, a_inf, d * d);
            if !rec.passed() {
                return Err(format!("{} alpha0={alpha0:.3}: rate reconstruction fails at k={:?}", n.name, rec.first_failure));
            }
            worst_slack = worst_slack.min(rec.min_relative_slack);
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, no increases beyond 1e-10 R^2 D^2, min reconstruction slack {worst_slack:.3e}"))
}

fn c5_eag_c_certificate() -> Outcome {
    let cert = eag_c_certificate(0.125, 1000).map_err(|e| e.to_string())?;
    if !cert.stepsize_ok {
        return Err("alpha R = 1/8 fails the step-size condition".into());
    }
    if let Some(s) = cert.first_failure() {
        return Err(format!(
            "k={}: psd {} det {} interval {} growth {}",
            s.k,
            s.psd_ok(),
            s.det_ok(),
            s.in_interval(),
            s.growth_ok()
        ));
    }
    Ok(format!(
        "{} steps, worst relative min eigenvalue {:.3e}, worst relative |det| {:.3e}",
        cert.steps.len(),
        cert.worst_relative_min_eig(),
        cert.worst_relative_det()
    ))
}

fn c6_sandwich() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for k in 1..=10 {
        let h = build_hard_instance(k, 1.0, 1.0, k + 2).map_err(|e| e.to_string())?;
        let a = h.matrix();
        let b = h.b_vector();
        let want = h.block_bound();
        let krylov = krylov_min_residual(&a, &b, k);
        let sol = chebyshev_solver(&a, &b, k, 1.0).map_err(|e| e.to_string())?;
        let cheb = residual_sq(&a, &b, &sol.z);
        for (label, v) in [("krylov", krylov), ("chebyshev", cheb)] {
            let rel = (v - want).abs() / want;
            worst = worst.max(rel);
            if rel > SANDWICH_TOL {
                return Err(format!("k={k}: {label} {v:.16e} vs {want:.16e} (rel {rel:.2e})"));
            }
        }
        let n = hard_named(k)?;
        for kind in AlgoKind::ALL {
            let alpha = match kind {
                AlgoKind::EagC => 0.125,
                AlgoKind::EagV => 0.618,
                AlgoKind::Eg => 0.5,
                AlgoKind::Popov => 0.3,
                _ => 0.1,
            };
            let t = run_on(&n, kind, alpha, k + 1, StoragePolicy::Dense)?;
            let rep = verify_lower_bound(&h, &t);
            if !rep.passed() {
                return Err(format!("k={k} {kind}: {:?} {:?}", rep.applicability, rep.first_failure()));
            }
            checked += rep.checks.len();
        }
    }
    Ok(format!("worst relative gap {worst:.2e}, {checked} span-counted points above the bound"))
}

fn c7_minimax_values() -> Outcome {
    const GRID: usize = 100_000;
    let mut worst_grid = 0.0f64;
    let mut worst_eq = 0.0f64;
    for k in 1..=12 {
        let p = minimax_poly(k, 1.0).map_err(|e| e.to_string())?;
        let want = 1.0 / (2 * (k / 2) + 1) as f64;
        let grid_max = (0..GRID)
            .map(|i| {
                let t = -1.0 + 2.0 * i as f64 / (GRID - 1) as f64;
                (t * p.eval(t)).abs()
            })
            .fold(0.0, f64::max);
        let g = (grid_max - want).abs();
        worst_grid = worst_grid.max(g);
        if g > GRID_TOL {
            return Err(format!("k={k}: grid max {grid_max:.12} vs {want:.12}"));
        }
        let nodes = p.nodes();
        if nodes.len() != 2 * p.m + 2 {
            return Err(format!("k={k}: {} nodes", nodes.len()));
        }
        let vals: Vec<f64> = nodes.iter().map(|t| t * p.eval(*t)).collect();
        for (j, v) in vals.iter().enumerate() {
            let e = (v.abs() - want).abs();
            worst_eq = worst_eq.max(e);
            if e > EQUIOSC_TOL {
                return Err(format!("k={k}: |value| at node {j} off by {e:.2e}"));
            }
            if j > 0 && v * vals[j - 1] >= 0.0 {
                return Err(format!("k={k}: no sign change between nodes {} and {j}", j - 1));
            }
        }
    }
    Ok(format!("grid error {worst_grid:.2e}, equioscillation error {worst_eq:.2e}"))
}

fn c8_flows() -> Outcome {
    let z0 = Point::from_blocks(&[1.0], &[0.0]).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for spec in [
        FlowSpec::anchored(z0.clone(), 20.0, 10_000),
        FlowSpec::moreau_yosida(0.01, z0.clone(), 20.0, 10_000),
    ] {
        let traj = integrate_flow(&spec).map_err(|e| e.to_string())?;
        let dev = max_flow_deviation(&spec, &traj).map_err(|e| e.to_string())?;
        if !(dev <= FLOW_TOL) {
            return Err(format!("{:?}: deviation {dev:.3e}", spec.kind));
        }
        notes.push(format!("{:?} {dev:.2e}", spec.kind));
    }
    Ok(notes.join(", "))
}

fn c9_eg_best_iterate() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for name in ["huber-default", "ouyang-200", "bilinear-unit", "random-monotone:20:7"] {
        let n = preset(name)?;
        let r = n.problem.lipschitz();
        let d = dist(&n)?;
        for ar in [0.1, 0.5] {
            let alpha = ar / r;
            let bound = RateBound::new(BoundKind::EgBestIterate { alpha }, r, d).map_err(|e| e.to_string())?;
            let t = run_on(&n, AlgoKind::Eg, alpha, 10_000, StoragePolicy::Endpoints)?;
            let w = worst_ratio(&t.best_grad_sq(), |k| bound.at(k));
            if w > 1.0 + RATE_SLACK {
                return Err(format!("{name} alphaR={ar}: best/bound reached {w:.6e}"));
            }
            worst = worst.max(w);
            count += 1;
        }
    }
    Ok(format!("{count} runs, max ratio {worst:.4e}"))
}

fn c10_ordering() -> Outcome {
    let mut notes = Vec::new();
    for name in ["huber-default", "ouyang-200"] {
        let p = resolve_preset(name).map_err(|e| e.to_string())?;
        let n = Named { name: p.name.clone(), problem: p.problem.clone(), z0: p.z0.clone() };
        let last = |kind: AlgoKind| -> Result<f64, String> {
            let t = run_on(&n, kind, p.default_step(kind), 10_000, StoragePolicy::Endpoints)?;
            Ok(t.grad_sq()[10_000])
        };
        let v = last(AlgoKind::EagV)?;
        let eg = last(AlgoKind::Eg)?;
        let popov = last(AlgoKind::Popov)?;
        if !(v < eg && v < popov) {
            return Err(format!("{name}: EAG-V {v:.3e}, EG {eg:.3e}, Popov {popov:.3e}"));
        }
        notes.push(format!("{name}: EAG-V {v:.2e} < EG {eg:.2e}, Popov {popov:.2e}"));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("EAG-V last-iterate rate 27R^2D^2/((k+1)(k+2)), k<=1e4", c1_eag_v_rate),
        ("EAG-C last-iterate rate 260R^2D^2/(k+1)^2, k<=1e4", c2_eag_c_rate),
        ("EAG-V step-size limit and alpha_1000 from 0.618", c3_alpha_limit),
        ("Lyapunov monotonicity, 24 problems x 10 alpha0, k<=1e3", c4_lyapunov),
        ("EAG-C certificate at alpha=1/(8R), k<=1e3", c5_eag_c_certificate),
        ("lower-bound sandwich k=1..10 and span-counted runs", c6_sandwich),
        ("minimax polynomial values and equioscillation, k<=12", c7_minimax_values),
        ("flow closed form vs RK4, 1e4 steps on [1e-2, 20]", c8_flows),
        ("EG best-iterate bound, alphaR in {0.1, 0.5}, k<=1e4", c9_eg_best_iterate),
        ("EAG-V below EG and Popov at k=1e4", c10_ordering),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.2}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.2}s] {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
