//! Single-iteration updates. The run loop and the public `Point` wrappers
//! share these slice kernels, so both paths produce identical bits.

use crate::error::{Error, Result};
use crate::saddle::{OracleCounter, Point, SaddleProblem};

/// `out = z + β(z⁰ − z)`; with `β = 0` this is a plain copy.
pub(crate) fn anchor_into(z: &[f64], z0: &[f64], beta: f64, out: &mut [f64]) {
    if beta == 0.0 {
        out.copy_from_slice(z);
    } else {
        for ((o, zi), z0i) in out.iter_mut().zip(z).zip(z0) {
            *o = zi + beta * (z0i - zi);
        }
    }
}

/// Buffers for one extragradient-type step.
pub(crate) struct EagBuffers {
    pub anchored: Vec<f64>,
    pub half: Vec<f64>,
    pub g_half: Vec<f64>,
}

impl EagBuffers {
    pub fn new(n: usize) -> Self {
        Self {
            anchored: vec![0.0; n],
            half: vec![0.0; n],
            g_half: vec![0.0; n],
        }
    }
}

/// Given `g = G(z)`, writes `z^{k+1/2}` into `buf.half`, `G(z^{k+1/2})` into
/// `buf.g_half` and `z^{k+1}` into `next`. One counted operator call.
pub(crate) fn eag_kernel(
    problem: &SaddleProblem,
    z: &[f64],
    g: &[f64],
    z0: &[f64],
    alpha: f64,
    beta: f64,
    buf: &mut EagBuffers,
    next: &mut [f64],
    counter: &mut OracleCounter,
) {
    anchor_into(z, z0, beta, &mut buf.anchored);
    for ((h, a), gi) in buf.half.iter_mut().zip(&buf.anchored).zip(g) {
        *h = a - alpha * gi;
    }
    problem.apply_raw(&buf.half, &mut buf.g_half);
    counter.record();
    for ((n, a), gi) in next.iter_mut().zip(&buf.anchored).zip(&buf.g_half) {
        *n = a - alpha * gi;
    }
}

fn checked_pair(problem: &SaddleProblem, z_k: &Point, z0: &Point) -> Result<()> {
    problem.check_dims(z_k)?;
    problem.check_dims(z0)?;
    Ok(())
}

/// One EAG step: `z^{k+1/2} = z^k + β(z⁰−z^k) − αG(z^k)`,
/// `z^{k+1} = z^k + β(z⁰−z^k) − αG(z^{k+1/2})`. Two counted operator calls.
pub fn eag_step(
    problem: &SaddleProblem,
    z_k: &Point,
    z0: &Point,
    alpha: f64,
    beta: f64,
    counter: &mut OracleCounter,
) -> Result<(Point, Point)> {
    checked_pair(problem, z_k, z0)?;
    if !(alpha > 0.0) || !(0.0..1.0).contains(&beta) {
        return Err(Error::Domain(format!(
            "EAG step needs alpha > 0 and beta in [0,1), got alpha={alpha}, beta={beta}"
        )));
    }
    let n = z_k.len();
    let g = problem.eval_counted(z_k, counter)?;
    let mut buf = EagBuffers::new(n);
    let mut next = vec![0.0; n];
    eag_kernel(
        problem,
        z_k.coords(),
        g.coords(),
        z0.coords(),
        alpha,
        beta,
        &mut buf,
        &mut next,
        counter,
    );
    let split = z_k.split();
    Ok((Point::from_raw(buf.half, split), Point::from_raw(next, split)))
}

/// One extragradient step (EAG with `β = 0`).
pub fn eg_step(
    problem: &SaddleProblem,
    z_k: &Point,
    alpha: f64,
    counter: &mut OracleCounter,
) -> Result<(Point, Point)> {
    eag_step(problem, z_k, z_k, alpha, 0.0, counter)
}

pub(crate) fn popov_kernel(z: &[f64], g: &[f64], g_prev: &[f64], alpha: f64, next: &mut [f64]) {
    for (((n, zi), gi), gp) in next.iter_mut().zip(z).zip(g).zip(g_prev) {
        *n = zi - alpha * gi - alpha * (gi - gp);
    }
}

pub(crate) fn simgd_a_coefficients(k: usize, p: f64, gamma: f64) -> (f64, f64) {
    let kp1 = k as f64 + 1.0;
    ((1.0 - p) / kp1.powf(p), (1.0 - p) * gamma / kp1)
}

pub(crate) fn simgd_a_kernel(z: &[f64], g: &[f64], z0: &[f64], step: f64, pull: f64, next: &mut [f64]) {
    for (((n, zi), gi), z0i) in next.iter_mut().zip(z).zip(g).zip(z0) {
        *n = zi - step * gi + pull * (z0i - zi);
    }
}

pub(crate) fn gd_kernel(z: &[f64], g: &[f64], alpha: f64, next: &mut [f64]) {
    for ((n, zi), gi) in next.iter_mut().zip(z).zip(g) {
        *n = zi - alpha * gi;
    }
}

/// Alternating GDA given `g = G(z)`: `x ← x − α∇ₓL(x, y)`, then
/// `y ← y + α∇ᵧL(x_new, y)`. One further counted call at `(x_new, y)`.
pub(crate) fn alt_gda_kernel(
    problem: &SaddleProblem,
    z: &[f64],
    g: &[f64],
    alpha: f64,
    scratch: &mut [f64],
    next: &mut [f64],
    counter: &mut OracleCounter,
) {
    let split = problem.dim_x();
    next.copy_from_slice(z);
    for i in 0..split {
        next[i] = z[i] - alpha * g[i];
    }
    problem.apply_raw(next, scratch);
    counter.record();
    for i in split..z.len() {
        next[i] = z[i] - alpha * scratch[i];
    }
}

/// State carried between baseline iterations.
#[derive(Debug, Clone)]
pub struct BaselineState {
    pub k: usize,
    pub z: Point,
    pub z0: Point,
    /// `G(z^{k−1})` for Popov; `None` before the first step.
    pub g_prev: Option<Point>,
}

impl BaselineState {
    pub fn new(z0: Point) -> Self {
        Self {
            k: 0,
            z: z0.clone(),
            z0,
            g_prev: None,
        }
    }
}

/// Parameters for [`baseline_step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineParams {
    pub alpha: f64,
    pub simgd_p: f64,
    pub simgd_gamma: f64,
}

/// Advances a baseline method by one iteration in place.
///
/// Popov starts from `G(z^{−1}) := G(z⁰)`, so its first step is a plain
/// gradient step.
pub fn baseline_step(
    kind: super::AlgoKind,
    problem: &SaddleProblem,
    state: &mut BaselineState,
    params: BaselineParams,
    counter: &mut OracleCounter,
) -> Result<()> {
    use super::AlgoKind::*;
    problem.check_dims(&state.z)?;
    let n = state.z.len();
    let split = state.z.split();
    let z = state.z.coords();
    let g = problem.eval_counted(&state.z, counter)?;
    let mut next = vec![0.0; n];
    match kind {
        Eg => {
            let mut buf = EagBuffers::new(n);
            eag_kernel(problem, z, g.coords(), z, params.alpha, 0.0, &mut buf, &mut next, counter);
        }
        Popov => {
            let g_prev = state.g_prev.clone().unwrap_or_else(|| g.clone());
            popov_kernel(z, g.coords(), g_prev.coords(), params.alpha, &mut next);
            state.g_prev = Some(g);
        }
        SimGdA => {
            let (step, pull) = simgd_a_coefficients(state.k, params.simgd_p, params.simgd_gamma);
            simgd_a_kernel(z, g.coords(), state.z0.coords(), step, pull, &mut next);
        }
        AltGda => {
            let mut scratch = vec![0.0; n];
            alt_gda_kernel(problem, z, g.coords(), params.alpha, &mut scratch, &mut next, counter);
        }
        SimGd => gd_kernel(z, g.coords(), params.alpha, &mut next),
        EagC | EagV => {
            return Err(Error::Domain(format!("{kind} is not a baseline method; use eag_step")));
        }
    }
    let next = Point::from_raw(next, split);
    if !next.is_finite() {
        return Err(Error::NonFinite { iteration: state.k + 1 });
    }
    state.z = next;
    state.k += 1;
    Ok(())
}
