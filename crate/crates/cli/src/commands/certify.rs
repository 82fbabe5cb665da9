use minimax_core::algorithms::eag_v_alpha_limit_lower;
use minimax_core::certificates::{
    check_eag_c_stepsize, check_lyapunov_monotone, check_rate_reconstruction, eag_c_certificate,
    eag_c_stepsize_polynomials, lyapunov_sequence, max_eag_c_stepsize, CertCase, LYAPUNOV_TOL,
};
use minimax_core::{run, AlgoConfig, AlgoKind, StoragePolicy};

use super::problem::load_problem;
use crate::cli::{EagcArgs, LyapunovArgs, StepsizeArgs};
use crate::error::{CliError, CliResult};
use crate::output::{csv_writer, fmt_f64};

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_stepsize(args: &StepsizeArgs) -> CliResult<()> {
    let a = args.alpha_r;
    if !(a > 0.0 && a.is_finite()) {
        return Err(CliError::Usage(format!("alphaR must be positive, got {a}")));
    }
    let (p1, p2) = eag_c_stepsize_polynomials(a);
    let ok = check_eag_c_stepsize(a);
    let threshold = max_eag_c_stepsize();
    println!("{} alphaR={a}", verdict(ok));
    println!("1-3a-a^2-a^3 = {}", fmt_f64(p1));
    println!("1-8a+a^2-2a^3 = {}", fmt_f64(p2));
    println!("largest admissible alphaR = {}", fmt_f64(threshold));
    if let Some(path) = args.output.as_deref() {
        let mut w = csv_writer(Some(path))?;
        w.write_record(["alpha_r", "p1", "p2", "threshold", "verdict"])?;
        w.write_record([fmt_f64(a), fmt_f64(p1), fmt_f64(p2), fmt_f64(threshold), verdict(ok).into()])?;
        w.flush()?;
    }
    if ok {
        Ok(())
    } else {
        let which = if p1 < 0.0 { "1-3a-a^2-a^3" } else { "1-8a+a^2-2a^3" };
        Err(CliError::Failed(format!("alphaR={a}: {which} is negative")))
    }
}

/// Rows of the summary table: 0..=10, then 20, 50, 100, 200, ... up to `k`.
fn summary_ks(k: usize) -> Vec<usize> {
    let mut ks: Vec<usize> = (0..=k.min(10)).collect();
    let mut base = 10;
    while base <= k {
        for m in [2, 5, 10] {
            let v = base * m;
            if v <= k {
                ks.push(v);
            }
        }
        base *= 10;
    }
    if ks.last() != Some(&k) {
        ks.push(k);
    }
    ks
}

pub fn cmd_eagc(args: &EagcArgs) -> CliResult<()> {
    let cert = eag_c_certificate(args.alpha_r, args.k)?;
    println!("alphaR={} k=0..{} step-size condition {}", args.alpha_r, args.k, verdict(cert.stepsize_ok));
    println!("{:>6} {:>6} {:>24} {:>24} {:>6}", "k", "case", "min_eig/scale", "|det|/scale^3", "ok");
    for k in summary_ks(args.k) {
        let s = &cert.steps[k];
        let case = if s.case == CertCase::IMinus { "I-" } else { "I+" };
        println!(
            "{:>6} {:>6} {:>24} {:>24} {:>6}",
            k,
            case,
            fmt_f64(s.min_eig / s.scale),
            fmt_f64(s.det.abs() / s.scale.powi(3)),
            verdict(s.all_ok())
        );
    }
    if let Some(path) = args.output.as_deref() {
        let mut w = csv_writer(Some(path))?;
        w.write_record([
            "k", "case", "a_k", "a_next", "tau", "min_eig_rel", "det_rel", "ell", "u", "in_interval", "growth_ok",
            "psd_ok", "det_ok",
        ])?;
        for s in &cert.steps {
            w.write_record([
                s.k.to_string(),
                if s.case == CertCase::IMinus { "I-".into() } else { "I+".into() },
                fmt_f64(s.a_k),
                fmt_f64(s.a_next),
                fmt_f64(s.tau),
                fmt_f64(s.min_eig / s.scale),
                fmt_f64(s.det.abs() / s.scale.powi(3)),
                fmt_f64(s.interval.ell),
                fmt_f64(s.interval.u),
                s.in_interval().to_string(),
                s.growth_ok().to_string(),
                s.psd_ok().to_string(),
                s.det_ok().to_string(),
            ])?;
        }
        w.flush()?;
    }
    let ok = cert.stepsize_ok && cert.passed();
    println!(
        "{} worst min_eig/scale {} worst |det|/scale^3 {}",
        verdict(ok),
        fmt_f64(cert.worst_relative_min_eig()),
        fmt_f64(cert.worst_relative_det())
    );
    if let Some(s) = cert.first_failure() {
        return Err(CliError::Failed(format!(
            "k={}: psd {} det {} interval {} growth {}",
            s.k,
            s.psd_ok(),
            s.det_ok(),
            s.in_interval(),
            s.growth_ok()
        )));
    }
    if !cert.stepsize_ok {
        return Err(CliError::Failed(format!("alphaR={} violates the step-size condition", args.alpha_r)));
    }
    Ok(())
}

pub fn cmd_lyapunov(args: &LyapunovArgs, seed: u64) -> CliResult<()> {
    let loaded = load_problem(&args.problem, seed)?;
    let p = &loaded.problem;
    let r = p.lipschitz();
    let alpha0 = args.alpha0.unwrap_or(0.618 / r);
    let d = p
        .distance_to_saddle(&loaded.z0)
        .ok_or_else(|| CliError::Usage(format!("{} has no known saddle point", loaded.name)))?;
    let cfg = AlgoConfig::new(AlgoKind::EagV, alpha0, args.iters)
        .with_anchor_delta(args.delta)
        .with_storage(StoragePolicy::Dense);
    let trace = run(p, &cfg, &loaded.z0)?;
    let seq = lyapunov_sequence(&trace, p, args.delta)?;
    let scale = r * r * d * d;
    let report = check_lyapunov_monotone(&seq, scale);
    let reconstruction = if args.delta == 2.0 {
        let a_inf = eag_v_alpha_limit_lower(alpha0, r, 2.0)?;
        Some(check_rate_reconstruction(&seq, a_inf, d * d))
    } else {
        None
    };

    if let Some(path) = args.output.as_deref() {
        let mut w = csv_writer(Some(path))?;
        w.write_record(["k", "v", "grad_sq", "alpha_k"])?;
        for i in 0..seq.ks.len() {
            let k = seq.ks[i];
            w.write_record([k.to_string(), fmt_f64(seq.values[i]), fmt_f64(seq.grad_sq[i]), fmt_f64(trace.alpha_at(k))])?;
        }
        w.flush()?;
    }
    println!(
        "{} on {}: alpha0={alpha0} delta={} k=0..{} tolerance {}",
        verdict(report.passed()),
        loaded.name,
        args.delta,
        args.iters,
        fmt_f64(LYAPUNOV_TOL * scale)
    );
    println!("V_0 = {}  V_last = {}", fmt_f64(seq.values[0]), fmt_f64(*seq.values.last().unwrap()));
    if let Some(rec) = &reconstruction {
        println!(
            "rate reconstruction with alpha_inf >= {}: {} (min relative slack {})",
            fmt_f64(rec.alpha_inf),
            verdict(rec.passed()),
            fmt_f64(rec.min_relative_slack)
        );
    }
    if let Some(v) = report.first_violation() {
        return Err(CliError::Failed(format!("V increased at k={}: {v:?}", v.k)));
    }
    if let Some(rec) = reconstruction {
        if let Some(k) = rec.first_failure {
            return Err(CliError::Failed(format!("rate reconstruction fails at k={k}")));
        }
    }
    Ok(())
}
