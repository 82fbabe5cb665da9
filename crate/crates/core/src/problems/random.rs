use std::sync::Arc;

use log::debug;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::affine::AffineSaddle;
use crate::error::{Error, Result};
use crate::saddle::{Point, SaddleProblem};

const MAX_ATTEMPTS: u64 = 32;

/// Options for [`make_random_monotone_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomMonotoneOptions {
    /// Drop the Gram blocks, leaving a purely skew operator `[[0, C], [−Cᵀ, 0]]`.
    pub skew_only: bool,
}

impl Default for RandomMonotoneOptions {
    fn default() -> Self {
        Self { skew_only: false }
    }
}

/// Random monotone affine problem in `n + n` variables, `G(z) = Mz + v` with
/// `M = [[P₁, C], [−Cᵀ, P₂]]`, `P₁, P₂` Gram matrices, scaled so `‖M‖ = R`.
pub fn make_random_monotone(n: usize, lipschitz: f64, seed: u64) -> Result<SaddleProblem> {
    make_random_monotone_with(n, lipschitz, seed, RandomMonotoneOptions::default())
}

pub fn make_random_monotone_with(
    n: usize,
    lipschitz: f64,
    seed: u64,
    options: RandomMonotoneOptions,
) -> Result<SaddleProblem> {
    if n == 0 {
        return Err(Error::Domain("random monotone problem needs n >= 1".into()));
    }
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return Err(Error::Domain(format!("R must be positive, got {lipschitz}")));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let stream_seed = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
        let (m, v) = sample(n, &mut rng, options);
        let svd = m.clone().svd(false, false);
        let sigma_max = svd.singular_values.max();
        let sigma_min = svd.singular_values.min();
        if sigma_max <= 0.0 || sigma_min <= 1e-8 * sigma_max {
            debug!("random monotone attempt {attempt} nearly singular, resampling");
            continue;
        }
        let factor = lipschitz / sigma_max;
        let m = m * factor;
        let v = v * lipschitz;
        let Some(sol) = m.clone().lu().solve(&v) else {
            continue;
        };
        let z_star = Point::new((-sol).as_slice().to_vec(), n)?;
        let name = if options.skew_only {
            format!("random-skew:{n}:{seed}")
        } else {
            format!("random-monotone:{n}:{seed}")
        };
        let op = AffineSaddle::new(m, v, n);
        return SaddleProblem::new(name, n, n, lipschitz, Arc::new(op))?.with_saddle_point(z_star);
    }
    Err(Error::Numerical(format!(
        "no invertible random monotone operator after {MAX_ATTEMPTS} draws"
    )))
}

fn sample(n: usize, rng: &mut ChaCha8Rng, options: RandomMonotoneOptions) -> (DMatrix<f64>, DVector<f64>) {
    let mut gauss = |r: usize, c: usize| DMatrix::<f64>::from_fn(r, c, |_, _| rng.sample(StandardNormal));
    let c = gauss(n, n);
    let (p1, p2) = if options.skew_only {
        (DMatrix::zeros(n, n), DMatrix::zeros(n, n))
    } else {
        let f1 = gauss(n, n);
        let f2 = gauss(n, n);
        let scale = 1.0 / n as f64;
        (f1.transpose() * &f1 * scale, f2.transpose() * &f2 * scale)
    };
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&p1);
    m.view_mut((0, n), (n, n)).copy_from(&c);
    m.view_mut((n, 0), (n, n)).copy_from(&(-c.transpose()));
    m.view_mut((n, n), (n, n)).copy_from(&p2);
    let v = DVector::from_fn(2 * n, |_, _| rng.sample::<f64, _>(StandardNormal));
    (m, v)
}
