//! Continuous-time flows for `L(x, y) = xy`, in closed form and by RK4.

use crate::error::{Error, Result};
use crate::saddle::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowKind {
    /// `ż = −G_λ(z)` with `G_λ` the Moreau–Yosida regularisation of `G`.
    MoreauYosida,
    /// `ż = −G(z) + (z⁰ − z)/t`.
    Anchored,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec {
    pub kind: FlowKind,
    /// Moreau–Yosida parameter; ignored by the anchored flow.
    pub lambda: f64,
    pub z0: Point,
    pub t0: f64,
    pub t_end: f64,
    pub steps: usize,
}

impl FlowSpec {
    pub const DEFAULT_T0: f64 = 1e-2;

    pub fn anchored(z0: Point, t_end: f64, steps: usize) -> Self {
        Self {
            kind: FlowKind::Anchored,
            lambda: 0.0,
            z0,
            t0: Self::DEFAULT_T0,
            t_end,
            steps,
        }
    }

    pub fn moreau_yosida(lambda: f64, z0: Point, t_end: f64, steps: usize) -> Self {
        Self {
            kind: FlowKind::MoreauYosida,
            lambda,
            z0,
            t0: Self::DEFAULT_T0,
            t_end,
            steps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.z0.len() != 2 || self.z0.split() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.z0.len(),
            });
        }
        if self.kind == FlowKind::MoreauYosida && !(self.lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be positive, got {}", self.lambda)));
        }
        let t0_ok = match self.kind {
            FlowKind::Anchored => self.t0 > 0.0,
            FlowKind::MoreauYosida => self.t0 >= 0.0,
        };
        if !t0_ok || !self.t0.is_finite() {
            return Err(Error::Domain(format!("invalid start time t0 = {}", self.t0)));
        }
        if !(self.t_end > self.t0 && self.t_end.is_finite()) {
            return Err(Error::Domain(format!(
                "t_end = {} must exceed t0 = {}",
                self.t_end, self.t0
            )));
        }
        if self.steps == 0 {
            return Err(Error::Domain("steps must be positive".into()));
        }
        Ok(())
    }

    fn rhs(&self, t: f64, z: [f64; 2]) -> [f64; 2] {
        let [x, y] = z;
        match self.kind {
            FlowKind::MoreauYosida => {
                let c = 1.0 / (1.0 + self.lambda * self.lambda);
                [-(self.lambda * x + y) * c, -(self.lambda * y - x) * c]
            }
            FlowKind::Anchored => {
                let z0 = self.z0.coords();
                [-y + (z0[0] - x) / t, x + (z0[1] - y) / t]
            }
        }
    }
}

/// Exact solution of the flow at time `t`.
pub fn flow_closed_form(spec: &FlowSpec, t: f64) -> Result<Point> {
    spec.validate()?;
    let (x0, y0) = (spec.z0.coords()[0], spec.z0.coords()[1]);
    let (x, y) = match spec.kind {
        FlowKind::MoreauYosida => {
            let c = 1.0 / (1.0 + spec.lambda * spec.lambda);
            let decay = (-spec.lambda * t * c).exp();
            let (s, co) = (t * c).sin_cos();
            (decay * (x0 * co - y0 * s), decay * (y0 * co + x0 * s))
        }
        FlowKind::Anchored => {
            if !(t > 0.0) {
                return Err(Error::Domain(format!("anchored flow needs t > 0, got {t}")));
            }
            let (s, co) = t.sin_cos();
            ((y0 * co + x0 * s - y0) / t, (y0 * s - x0 * co + x0) / t)
        }
    };
    Point::new(vec![x, y], 1)
}

/// Sampled flow trajectory; `states[i]` is the state at `times[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 2]>,
}

/// Fixed-step classical RK4 on `[t0, t_end]`.
///
/// The initial state is the exact solution at `t0`, so the integrator tracks
/// the same trajectory as [`flow_closed_form`]; for the anchored flow the
/// anchor stays `z⁰`.
pub fn integrate_flow(spec: &FlowSpec) -> Result<FlowTrajectory> {
    spec.validate()?;
    let h = (spec.t_end - spec.t0) / spec.steps as f64;
    let start = flow_closed_form(spec, spec.t0)?;
    let mut z = [start.coords()[0], start.coords()[1]];
    let limit = 1e6 * (1.0 + spec.z0.norm());
    let mut times = Vec::with_capacity(spec.steps + 1);
    let mut states = Vec::with_capacity(spec.steps + 1);
    times.push(spec.t0);
    states.push(z);
    for i in 0..spec.steps {
        let t = spec.t0 + i as f64 * h;
        let k1 = spec.rhs(t, z);
        let k2 = spec.rhs(t + h / 2.0, axpy(z, h / 2.0, k1));
        let k3 = spec.rhs(t + h / 2.0, axpy(z, h / 2.0, k2));
        let k4 = spec.rhs(t + h, axpy(z, h, k3));
        for j in 0..2 {
            z[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if !(z[0].is_finite() && z[1].is_finite()) || z[0].hypot(z[1]) > limit {
            return Err(Error::Numerical(format!(
                "RK4 blew up at step {} (h = {h:e}); retry with more than {} steps",
                i + 1,
                4 * spec.steps
            )));
        }
        times.push(spec.t0 + (i + 1) as f64 * h);
        states.push(z);
    }
    Ok(FlowTrajectory { times, states })
}

fn axpy(z: [f64; 2], a: f64, d: [f64; 2]) -> [f64; 2] {
    [z[0] + a * d[0], z[1] + a * d[1]]
}

/// Largest Euclidean gap between the RK4 trajectory and the closed form.
pub fn max_flow_deviation(spec: &FlowSpec, trajectory: &FlowTrajectory) -> Result<f64> {
    let mut worst = 0.0f64;
    for (t, s) in trajectory.times.iter().zip(&trajectory.states) {
        let exact = flow_closed_form(spec, *t)?;
        let e = exact.coords();
        worst = worst.max((s[0] - e[0]).hypot(s[1] - e[1]));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_x() -> Point {
        Point::new(vec![1.0, 0.0], 1).unwrap()
    }

    #[test]
    fn anchored_closed_form_from_unit_x() {
        let spec = FlowSpec::anchored(unit_x(), 20.0, 100);
        for &t in &[0.3, 1.0, 2.5, 7.0] {
            let z = flow_closed_form(&spec, t).unwrap();
            assert!((z.coords()[0] - t.sin() / t).abs() < 1e-15);
            assert!((z.coords()[1] - (1.0 - t.cos()) / t).abs() < 1e-15);
        }
        assert!(flow_closed_form(&spec, PI).unwrap().coords()[0].abs() < 1e-15);
        assert!(flow_closed_form(&spec, 0.0).is_err());
        assert!(flow_closed_form(&spec, 1e6).unwrap().norm() < 3e-6);
    }

    #[test]
    fn moreau_yosida_radius_decay() {
        let lambda = 0.01;
        let spec = FlowSpec::moreau_yosida(lambda, Point::new(vec![0.6, 0.8], 1).unwrap(), 20.0, 10);
        for &t in &[0.5, 3.0, 17.0] {
            let r = flow_closed_form(&spec, t).unwrap().norm();
            let want = (-lambda * t / (1.0 + lambda * lambda)).exp();
            assert!((r - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rk4_tracks_closed_form() {
        for spec in [
            FlowSpec::anchored(unit_x(), 20.0, 10_000),
            FlowSpec::moreau_yosida(0.01, unit_x(), 20.0, 10_000),
        ] {
            let traj = integrate_flow(&spec).unwrap();
            assert_eq!(traj.states.len(), 10_001);
            assert!((traj.times.last().unwrap() - 20.0).abs() < 1e-12);
            assert!(max_flow_deviation(&spec, &traj).unwrap() <= 1e-6);
        }
    }

    #[test]
    fn coarse_run_stays_finite() {
        let spec = FlowSpec::anchored(unit_x(), 20.0, 10);
        let traj = integrate_flow(&spec).unwrap();
        let dev = max_flow_deviation(&spec, &traj).unwrap();
        assert!(dev.is_finite() && dev > 1e-6);
    }

    #[test]
    fn zero_start_is_equilibrium() {
        let spec = FlowSpec::anchored(Point::zeros(1, 1), 20.0, 200);
        let traj = integrate_flow(&spec).unwrap();
        assert!(traj.states.iter().all(|s| s == &[0.0, 0.0]));
    }
}
