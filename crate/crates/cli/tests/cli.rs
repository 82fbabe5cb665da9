use std::path::Path;
use std::process::{Command, Output};

use minimax_core::problems::resolve_preset;
use minimax_core::Point;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_anchored-minimax"));
    c.env_remove("ANCHORED_MINIMAX_SEED");
    c
}

fn exec(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn col(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
    }

    fn floats(&self, name: &str) -> Vec<f64> {
        let c = self.col(name);
        self.rows.iter().map(|r| r[c].parse().unwrap()).collect()
    }
}

fn read_csv(path: &Path) -> Table {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    Table { header, rows }
}

fn run_to(dir: &TempDir, name: &str, args: &[&str]) -> Table {
    let out = dir.path().join(name);
    let mut all = args.to_vec();
    all.extend(["--output", out.to_str().unwrap()]);
    let o = exec(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    read_csv(&out)
}

#[test]
fn eag_v_curve_stays_below_its_bound() {
    let dir = TempDir::new().unwrap();
    let t = run_to(&dir, "h.csv", &["run", "--problem", "huber-default", "--algo", "eag-v", "--alpha0", "0.618", "--iters", "100000"]);
    assert_eq!(t.header, ["k", "grad_sq", "bound", "alpha_k", "oracle_calls", "dist_to_saddle_sq"]);
    let g = t.floats("grad_sq");
    let b = t.floats("bound");
    assert!(g.iter().zip(&b).all(|(g, b)| g <= b));
    // thinned above 10^4
    assert!(t.rows.len() < 1200);
    assert_eq!(t.rows.last().unwrap()[0], "100000");
    let meta = std::fs::read_to_string(dir.path().join("h.csv.meta")).unwrap();
    assert!(meta.contains("problem=huber-default") && meta.contains("z0=(1,1)/sqrt(2)"));
}

#[test]
fn eg_on_ouyang_decreases_monotonically() {
    let dir = TempDir::new().unwrap();
    let t = run_to(&dir, "o.csv", &["run", "--problem", "ouyang-200", "--algo", "eg", "--alpha", "0.5", "--iters", "1000000"]);
    let g = t.floats("grad_sq");
    assert!(g.windows(2).all(|w| w[1] <= w[0]));
    assert!(t.header.iter().all(|h| h != "bound"));
}

#[test]
fn simgd_a_is_slower_than_eag_on_bilinear() {
    let dir = TempDir::new().unwrap();
    let last = |name: &str, algo: &str| {
        let t = run_to(&dir, name, &["run", "--problem", "bilinear-unit", "--algo", algo, "--iters", "10000"]);
        *t.floats("grad_sq").last().unwrap()
    };
    let slow = last("s.csv", "simgd-a");
    assert!(last("v.csv", "eag-v") < slow);
    assert!(last("c.csv", "eag-c") < slow);
    assert!(slow < 1.0);
}

#[test]
fn output_is_deterministic_and_reloadable() {
    let args = ["run", "--problem", "random-monotone:6:3", "--algo", "popov", "--iters", "300", "--emit-iterates"];
    let a = exec(&args);
    let b = exec(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = TempDir::new().unwrap();
    let t = run_to(&dir, "r.csv", &args);
    let p = resolve_preset("random-monotone:6:3").unwrap().problem;
    let g = t.floats("grad_sq");
    let first = t.col("z_0");
    for (i, row) in t.rows.iter().enumerate().step_by(3).take(100) {
        let coords: Vec<f64> = row[first..].iter().map(|c| c.parse().unwrap()).collect();
        let z = Point::new(coords, 6).unwrap();
        assert_eq!(p.grad_sq_norm(&z).unwrap(), g[i], "row {i}");
    }
}

#[test]
fn env_seed_and_config_file() {
    let dir = TempDir::new().unwrap();
    let seeded = bin()
        .env("ANCHORED_MINIMAX_SEED", "4")
        .args(["run", "--problem", "random-monotone:3", "--algo", "eg", "--iters", "5"])
        .output()
        .unwrap();
    let explicit = exec(&["run", "--problem", "random-monotone:3:4", "--algo", "eg", "--iters", "5"]);
    assert_eq!(seeded.stdout, explicit.stdout);

    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# experiment\nproblem=bilinear-unit\nalgo=eag-c\niters=50\nalpha=0.125\n").unwrap();
    let from_cfg = exec(&["--config", cfg.to_str().unwrap(), "run"]);
    assert!(from_cfg.status.success(), "{}", String::from_utf8_lossy(&from_cfg.stderr));
    assert_eq!(stdout(&from_cfg).lines().count(), 52);
    let overridden = exec(&["--config", cfg.to_str().unwrap(), "run", "--iters", "10"]);
    assert_eq!(stdout(&overridden).lines().count(), 12);

    std::fs::write(&cfg, "bogus=1\n").unwrap();
    assert_eq!(exec(&["--config", cfg.to_str().unwrap(), "run", "--problem", "bilinear-unit", "--algo", "eg"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(exec(&["run", "--problem", "nope", "--algo", "eg"]).status.code(), Some(2));
    assert_eq!(exec(&["run", "--problem", "bilinear-unit", "--algo", "warp"]).status.code(), Some(2));
    assert_eq!(exec(&["run", "--problem", "bilinear-unit", "--algo", "eag-v", "--alpha", "0.9"]).status.code(), Some(2));
    let nan = exec(&["run", "--problem", "bilinear-unit", "--algo", "simgd", "--alpha", "1e200", "--iters", "50"]);
    assert_eq!(nan.status.code(), Some(3));
    assert_eq!(exec(&["certify", "stepsize", "--alphaR", "0.1265"]).status.code(), Some(1));
    assert_eq!(exec(&[]).status.code(), Some(2));
}

#[test]
fn certify_commands() {
    let o = exec(&["certify", "stepsize", "--alphaR", "0.125"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS"));

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("eagc.csv");
    let o = exec(&["certify", "eagc", "--alphaR", "0.125", "--k", "1000", "--output", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("min_eig/scale"));
    let t = read_csv(&out);
    assert_eq!(t.rows.len(), 1001);
    assert!(t.floats("min_eig_rel").iter().all(|e| *e >= -1e-9));

    let o = exec(&["certify", "lyapunov", "--problem", "ouyang-200", "--alpha0", "0.618", "--iters", "1000"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn lowerbound_commands() {
    let o = exec(&["lowerbound", "--k", "4", "--R", "1", "--D", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let values: Vec<f64> = text
        .lines()
        .filter(|l| l.contains(" = "))
        .map(|l| l.split(" = ").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|v| (v - 0.04).abs() < 1e-12));

    let o = exec(&["lowerbound", "--k", "1", "--R", "2", "--D", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3.6000000000000000e1"));

    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("k6.txt");
    let o = exec(&["lowerbound", "--k", "6", "--algo", "eag-v", "--save", inst.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("bound PASS"));
    let o = exec(&["run", "--problem", inst.to_str().unwrap(), "--algo", "eg", "--iters", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn flow_commands() {
    let dir = TempDir::new().unwrap();
    let t = run_to(&dir, "a.csv", &["flow", "--kind", "anchored", "--x0", "1", "--y0", "0"]);
    assert_eq!(t.header, ["t", "x_closed", "y_closed", "x_rk4", "y_rk4", "deviation"]);
    assert!(t.floats("deviation").iter().all(|d| *d <= 1e-6));

    let t = run_to(&dir, "m.csv", &["flow", "--kind", "moreau-yosida", "--lambda", "0.01"]);
    let (ts, xs, ys) = (t.floats("t"), t.floats("x_closed"), t.floats("y_closed"));
    let rate = 0.01 / (1.0 + 1e-4);
    for i in [0, 5000, 10_000] {
        let radius = xs[i].hypot(ys[i]);
        assert!((radius - (-rate * ts[i]).exp()).abs() < 1e-12);
    }

    let t = run_to(&dir, "c.csv", &["flow", "--steps", "10"]);
    let d = t.floats("deviation");
    assert!(d.iter().all(|v| v.is_finite()));
    assert!(d.iter().cloned().fold(0.0, f64::max) > 1e-6);

    let t = run_to(&dir, "j.csv", &["flow", "--algo", "eag-v", "--alpha", "0.1", "--steps", "200"]);
    assert_eq!(t.header.len(), 9);
    assert_eq!(t.rows.last().unwrap()[t.col("k")], "200");
}
