use log::{info, warn};
use minimax_core::algorithms::{BoundKind, RateBound};
use minimax_core::certificates::check_eag_c_stepsize;
use minimax_core::{run, AlgoConfig, AlgoKind, StoragePolicy};

use super::problem::load_problem;
use crate::cli::RunArgs;
use crate::error::{CliError, CliResult};
use crate::output::{csv_writer, fmt_f64, write_metadata};

/// Above this many iterations output is log-thinned unless `--dense`.
pub const THIN_ABOVE: usize = 10_000;

/// `k ∈ {0..10³}` plus rounded powers of 1.1 when thinning applies.
pub fn storage_for(iters: usize, dense: bool) -> StoragePolicy {
    if dense || iters <= THIN_ABOVE {
        StoragePolicy::Dense
    } else {
        StoragePolicy::Geometric { dense_limit: 1000, ratio: 1.1 }
    }
}

/// The last-iterate bound that applies to this configuration, if any.
fn applicable_bound(config: &AlgoConfig, r: f64, dist: f64) -> CliResult<Option<RateBound>> {
    let kind = match config.kind {
        AlgoKind::EagC if check_eag_c_stepsize(config.alpha0 * r) => BoundKind::EagC { alpha: config.alpha0 },
        AlgoKind::EagV => BoundKind::EagV { alpha0: config.alpha0, anchor_delta: config.anchor_delta },
        _ => return Ok(None),
    };
    Ok(Some(RateBound::new(kind, r, dist)?))
}

pub fn cmd_run(args: &RunArgs, seed: u64) -> CliResult<()> {
    let loaded = load_problem(&args.problem, seed)?;
    let p = &loaded.problem;
    let alpha = args.alpha.unwrap_or_else(|| loaded.steps.for_kind(args.algo));
    let mut config = AlgoConfig::new(args.algo, alpha, args.iters)
        .with_anchor_delta(args.delta)
        .with_storage(storage_for(args.iters, args.dense));
    if args.simgd_p.is_some() || args.simgd_gamma.is_some() {
        let (p, gamma) = (config.simgd_p, config.simgd_gamma);
        config = config.with_simgd(args.simgd_p.unwrap_or(p), args.simgd_gamma.unwrap_or(gamma));
    }
    config.validate(p.lipschitz()).map_err(|e| {
        CliError::Usage(format!("{} on {}: {e}", args.algo, loaded.name))
    })?;
    info!("{} on {} with alpha={alpha}, {} iterations", args.algo, loaded.name, args.iters);

    let trace = run(p, &config, &loaded.z0)?;
    let dist = p.distance_to_saddle(&loaded.z0);
    let bound = match (args.no_bound, dist) {
        (false, Some(d)) => applicable_bound(&config, p.lipschitz(), d)?,
        _ => None,
    };
    let z_star = p.saddle_point();

    let mut header = vec!["k".to_string(), "grad_sq".into()];
    if bound.is_some() {
        header.push("bound".into());
    }
    let eag_v = args.algo == AlgoKind::EagV;
    if eag_v {
        header.push("alpha_k".into());
    }
    header.push("oracle_calls".into());
    if z_star.is_some() {
        header.push("dist_to_saddle_sq".into());
    }
    if args.emit_iterates {
        header.extend((0..p.dim()).map(|i| format!("z_{i}")));
    }

    let mut w = csv_writer(args.output.as_deref())?;
    w.write_record(&header)?;
    let mut violations = 0usize;
    for (&k, z) in trace.iterate_ks().iter().zip(trace.iterates()) {
        let g = trace.grad_sq()[k];
        let mut row = vec![k.to_string(), fmt_f64(g)];
        if let Some(b) = &bound {
            let v = b.at(k);
            if g > v * (1.0 + 1e-9) {
                violations += 1;
            }
            row.push(fmt_f64(v));
        }
        if eag_v {
            row.push(fmt_f64(trace.alpha_at(k)));
        }
        row.push(trace.oracle_calls()[k].to_string());
        if let Some(zs) = z_star {
            row.push(fmt_f64(z.dist_sq(zs)));
        }
        if args.emit_iterates {
            row.extend(z.coords().iter().map(|c| fmt_f64(*c)));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    if violations > 0 {
        warn!("grad_sq exceeded the bound at {violations} emitted rows");
    }

    let mut meta = vec![
        ("problem".to_string(), loaded.name.clone()),
        ("algo".into(), args.algo.to_string()),
        ("alpha".into(), fmt_f64(alpha)),
        ("iters".into(), args.iters.to_string()),
        ("delta".into(), fmt_f64(args.delta)),
        ("seed".into(), seed.to_string()),
        ("storage".into(), format!("{:?}", config.storage)),
        ("lipschitz".into(), fmt_f64(p.lipschitz())),
    ];
    if let Some(b) = &bound {
        meta.push(("bound_constant".into(), fmt_f64(b.constant())));
        if let Some(a) = b.alpha_inf() {
            meta.push(("alpha_inf_lower".into(), fmt_f64(a)));
        }
    }
    meta.extend(loaded.notes.iter().enumerate().map(|(i, n)| (format!("note{i}"), n.clone())));
    write_metadata(args.output.as_deref(), &meta)
}
