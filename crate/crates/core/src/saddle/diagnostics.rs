use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dist_sq, dot, norm_sq, Point, SaddleProblem};
use crate::error::{Error, Result};

/// Outcome of the monotonicity inequality on one pair of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCheck {
    /// `⟨G(z₁) − G(z₂), z₁ − z₂⟩`.
    pub inner: f64,
    /// `‖z₁ − z₂‖²`.
    pub dist_sq: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport {
    pub pairs: Vec<PairCheck>,
    pub tol: f64,
    pub passed: bool,
}

impl MonotoneReport {
    /// Smallest `⟨ΔG, Δz⟩ / ‖Δz‖²` over the checked pairs.
    pub fn worst_ratio(&self) -> f64 {
        self.pairs
            .iter()
            .filter(|p| p.dist_sq > 0.0)
            .map(|p| p.inner / p.dist_sq)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Checks `⟨G(z₁) − G(z₂), z₁ − z₂⟩ ≥ −tol·‖z₁ − z₂‖²` for each pair.
/// Violations are reported, not raised.
pub fn check_monotone(
    problem: &SaddleProblem,
    pairs: &[(Point, Point)],
    tol: f64,
) -> Result<MonotoneReport> {
    let mut checks = Vec::with_capacity(pairs.len());
    for (z1, z2) in pairs {
        let g1 = problem.eval(z1)?;
        let g2 = problem.eval(z2)?;
        let dz = z1.sub(z2);
        let dg = g1.sub(&g2);
        let inner = dot(dg.coords(), dz.coords());
        let d2 = dz.norm_sq();
        checks.push(PairCheck {
            inner,
            dist_sq: d2,
            ok: inner >= -tol * d2,
        });
    }
    let passed = checks.iter().all(|c| c.ok);
    Ok(MonotoneReport {
        pairs: checks,
        tol,
        passed,
    })
}

fn sample_center(problem: &SaddleProblem) -> Vec<f64> {
    problem
        .saddle_point()
        .map(|s| s.coords().to_vec())
        .unwrap_or_else(|| vec![0.0; problem.dim()])
}

fn sample_pair(
    rng: &mut ChaCha8Rng,
    center: &[f64],
    split: usize,
    radius: f64,
) -> (Point, Point) {
    let z1: Vec<f64> = center
        .iter()
        .map(|c| c + rng.random_range(-radius..=radius))
        .collect();
    // Half the pairs are local perturbations, which probe the Jacobian and
    // the small-scale regions (e.g. the quadratic core of a Huber term).
    let z2: Vec<f64> = if rng.random_bool(0.5) {
        let scale = radius * 10f64.powf(rng.random_range(-6.0..0.0));
        z1.iter()
            .map(|c| c + scale * rng.random_range(-1.0..=1.0))
            .collect()
    } else {
        center
            .iter()
            .map(|c| c + rng.random_range(-radius..=radius))
            .collect()
    };
    (Point::from_raw(z1, split), Point::from_raw(z2, split))
}

/// Random pairs in the cube of half-width `radius` around the saddle point
/// (or the origin when none is known).
pub fn random_pairs(
    problem: &SaddleProblem,
    count: usize,
    radius: f64,
    seed: u64,
) -> Vec<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = sample_center(problem);
    (0..count)
        .map(|_| sample_pair(&mut rng, &center, problem.dim_x(), radius))
        .collect()
}

/// Empirical lower estimate of the Lipschitz constant of `G`:
/// `max ‖G(z₁) − G(z₂)‖ / ‖z₁ − z₂‖` over sampled pairs.
pub fn estimate_lipschitz(
    problem: &SaddleProblem,
    samples: usize,
    radius: f64,
    seed: u64,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    if !(radius > 0.0) {
        return Err(Error::Domain("radius must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = sample_center(problem);
    let dim = problem.dim();
    let mut g1 = vec![0.0; dim];
    let mut g2 = vec![0.0; dim];
    let mut best: f64 = 0.0;
    let mut taken = 0;
    while taken < samples {
        let (z1, z2) = sample_pair(&mut rng, &center, problem.dim_x(), radius);
        let d2 = dist_sq(z1.coords(), z2.coords());
        if d2 == 0.0 {
            continue;
        }
        problem.apply_raw(z1.coords(), &mut g1);
        problem.apply_raw(z2.coords(), &mut g2);
        let ratio = (dist_sq(&g1, &g2) / d2).sqrt();
        best = best.max(ratio);
        taken += 1;
    }
    Ok(best)
}

/// Default relative step for [`gradient_fd_error`].
pub const FD_REL_STEP: f64 = 1e-5;

/// Largest relative discrepancy between `G` and central finite differences
/// of `L` over `points`; `None` when the problem has no closed-form `L`.
///
/// The step for coordinate `i` is `h_rel·max(1, |zᵢ|)`. The error at a point
/// is `‖G − G_fd‖ / max(‖G‖, 1e-12)`.
pub fn gradient_fd_error(
    problem: &SaddleProblem,
    points: &[Point],
    h_rel: f64,
) -> Result<Option<f64>> {
    let mut worst: f64 = 0.0;
    for z in points {
        problem.check_dims(z)?;
        let op = problem.operator();
        if op.lagrangian(z.coords()).is_none() {
            return Ok(None);
        }
        let g = problem.eval(z)?;
        let mut fd = vec![0.0; z.len()];
        let mut probe = z.coords().to_vec();
        for i in 0..z.len() {
            let h = h_rel * z.coords()[i].abs().max(1.0);
            let orig = probe[i];
            probe[i] = orig + h;
            let lp = op.lagrangian(&probe).unwrap_or(f64::NAN);
            probe[i] = orig - h;
            let lm = op.lagrangian(&probe).unwrap_or(f64::NAN);
            probe[i] = orig;
            let d = (lp - lm) / (2.0 * h);
            // G carries −∇ᵧL in the y-block.
            fd[i] = if i < z.split() { d } else { -d };
        }
        let err = dist_sq(g.coords(), &fd).sqrt() / norm_sq(g.coords()).sqrt().max(1e-12);
        worst = worst.max(err);
    }
    Ok(Some(worst))
}
