use minimax_core::lowerbound::{
    build_hard_instance, chebyshev_solver, krylov_min_residual, residual_sq, verify_lower_bound,
    Applicability,
};
use minimax_core::{run, AlgoConfig, AlgoKind, Point, StoragePolicy};

use crate::cli::LowerboundArgs;
use crate::error::{CliError, CliResult};
use crate::output::{csv_writer, fmt_f64};

/// Relative agreement required between the three lower-bound values.
pub const SANDWICH_TOL: f64 = 1e-8;

fn default_step(kind: AlgoKind, r: f64) -> f64 {
    let a = match kind {
        AlgoKind::EagC => 0.125,
        AlgoKind::EagV => 0.618,
        AlgoKind::Eg => 0.5,
        AlgoKind::Popov => 0.3,
        _ => 0.1,
    };
    a / r
}

pub fn cmd_lowerbound(args: &LowerboundArgs) -> CliResult<()> {
    if args.k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let n = args.n.unwrap_or(args.k + 2);
    let h = build_hard_instance(args.k, args.r, args.d, n)?;
    if let Some(path) = args.save.as_deref() {
        std::fs::write(path, h.to_text())?;
    }
    let (a, b) = (h.matrix(), h.b_vector());
    let target = h.block_bound();
    let krylov = krylov_min_residual(&a, &b, args.k);
    let cheb = residual_sq(&a, &b, &chebyshev_solver(&a, &b, args.k, args.r)?.z);
    let rel = |v: f64| if target > 0.0 { (v - target).abs() / target } else { v.abs() };
    let sandwich_ok = rel(krylov) <= SANDWICH_TOL && rel(cheb) <= SANDWICH_TOL;

    println!("k={} m={} n={n} R={} D={}", args.k, args.k / 2, args.r, args.d);
    println!("M*^2 D^2            = {}", fmt_f64(target));
    println!("krylov least squares = {}  (rel {:.2e})", fmt_f64(krylov), rel(krylov));
    println!("chebyshev residual   = {}  (rel {:.2e})", fmt_f64(cheb), rel(cheb));
    println!("sandwich {}", if sandwich_ok { "PASS" } else { "FAIL" });

    let mut failure = None;
    if !sandwich_ok {
        failure = Some(format!(
            "values disagree beyond {SANDWICH_TOL:e}: krylov {krylov:e}, chebyshev {cheb:e}, bound {target:e}"
        ));
    }

    if let Some(kind) = args.algo {
        let alpha = args.alpha.unwrap_or_else(|| default_step(kind, args.r));
        let problem = h.saddle_problem()?;
        let cfg = AlgoConfig::new(kind, alpha, args.k).with_storage(StoragePolicy::Dense);
        let trace = run(&problem, &cfg, &Point::zeros(n, n))?;
        let report = verify_lower_bound(&h, &trace);
        println!("{kind} alpha={alpha}: gradient bound {} ({:?})", fmt_f64(report.bound), report.applicability);
        println!("{:>4} {:>5} {:>5} {:>24} {:>24} {:>5}", "k", "half", "span", "grad_sq", "krylov_floor", "ok");
        for c in &report.checks {
            println!(
                "{:>4} {:>5} {:>5} {:>24} {:>24} {:>5}",
                c.k,
                c.half,
                c.span_index,
                fmt_f64(c.grad_sq),
                fmt_f64(c.krylov_floor),
                c.ok()
            );
        }
        if let Some(path) = args.output.as_deref() {
            let mut w = csv_writer(Some(path))?;
            w.write_record(["k", "half", "span_index", "grad_sq", "bound", "krylov_floor", "span_residual", "ok"])?;
            for c in &report.checks {
                w.write_record([
                    c.k.to_string(),
                    c.half.to_string(),
                    c.span_index.to_string(),
                    fmt_f64(c.grad_sq),
                    fmt_f64(c.bound),
                    fmt_f64(c.krylov_floor),
                    c.span_residual.map(fmt_f64).unwrap_or_default(),
                    c.ok().to_string(),
                ])?;
            }
            w.flush()?;
        }
        println!("bound {}", if report.passed() { "PASS" } else { "FAIL" });
        if failure.is_none() && !report.passed() {
            failure = Some(match (&report.applicability, report.first_failure()) {
                (Applicability::Inapplicable(why), _) => why.clone(),
                (_, Some(c)) => format!("{kind} below the bound at k={} (half={}): {:e}", c.k, c.half, c.grad_sq),
                _ => format!("{kind} failed the lower-bound check"),
            });
        }
    }
    match failure {
        Some(m) => Err(CliError::Failed(m)),
        None => Ok(()),
    }
}
