use minimax_core::problems::{flow_closed_form, integrate_flow, make_bilinear, FlowSpec};
use minimax_core::{run, AlgoConfig, Point, StoragePolicy};

use crate::cli::{FlowArgs, FlowKindArg};
use crate::error::{CliError, CliResult};
use crate::output::{csv_writer, fmt_f64, write_metadata};

pub fn cmd_flow(args: &FlowArgs) -> CliResult<()> {
    let z0 = Point::from_blocks(&[args.x0], &[args.y0])?;
    let mut spec = match args.kind {
        FlowKindArg::Anchored => FlowSpec::anchored(z0.clone(), args.t_end, args.steps),
        FlowKindArg::MoreauYosida => FlowSpec::moreau_yosida(args.lambda, z0.clone(), args.t_end, args.steps),
    };
    spec.t0 = args.t0;
    let traj = integrate_flow(&spec)?;

    let discrete = match args.algo {
        Some(kind) => {
            if !(args.alpha > 0.0) {
                return Err(CliError::Usage(format!("alpha must be positive, got {}", args.alpha)));
            }
            let iters = (args.t_end / args.alpha).round() as usize;
            let cfg = AlgoConfig::new(kind, args.alpha, iters).with_storage(StoragePolicy::Dense);
            Some(run(&make_bilinear(1.0)?, &cfg, &z0)?)
        }
        None => None,
    };

    let mut w = csv_writer(args.output.as_deref())?;
    let mut header = vec!["t", "x_closed", "y_closed", "x_rk4", "y_rk4", "deviation"];
    if discrete.is_some() {
        header.extend(["k", "x_algo", "y_algo"]);
    }
    w.write_record(&header)?;
    let mut worst = 0.0f64;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let exact = flow_closed_form(&spec, *t)?;
        let e = exact.coords();
        let dev = (s[0] - e[0]).hypot(s[1] - e[1]);
        worst = worst.max(dev);
        let mut row = vec![fmt_f64(*t), fmt_f64(e[0]), fmt_f64(e[1]), fmt_f64(s[0]), fmt_f64(s[1]), fmt_f64(dev)];
        if let Some(tr) = &discrete {
            let k = ((t / args.alpha).round() as usize).min(tr.iters());
            let z = tr.iterate_at(k).expect("dense storage keeps every iterate");
            row.extend([k.to_string(), fmt_f64(z.coords()[0]), fmt_f64(z.coords()[1])]);
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    log::info!("max deviation {worst:e} over {} steps", args.steps);
    let mut meta = vec![
        ("kind".to_string(), format!("{:?}", spec.kind)),
        ("z0".into(), format!("({},{})", args.x0, args.y0)),
        ("t0".into(), fmt_f64(spec.t0)),
        ("t_end".into(), fmt_f64(spec.t_end)),
        ("steps".into(), spec.steps.to_string()),
        ("rk4_start".into(), "closed-form state at t0".into()),
        ("max_deviation".into(), fmt_f64(worst)),
    ];
    if args.kind == FlowKindArg::MoreauYosida {
        meta.push(("lambda".into(), fmt_f64(args.lambda)));
    }
    if let Some(k) = args.algo {
        meta.push(("algo".into(), format!("{k} alpha={} on bilinear-unit", args.alpha)));
    }
    write_metadata(args.output.as_deref(), &meta)
}
