use crate::error::{Error, Result};
use crate::saddle::Point;

use super::config::{AlgoConfig, AlgoKind};

/// Which iterates a run keeps. Scalar series are always stored densely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoragePolicy {
    /// Every iterate.
    Dense,
    /// All `k ≤ dense_limit`, then powers of two, plus the final iterate.
    PowersOfTwo { dense_limit: usize },
    /// All `k ≤ dense_limit`, then `round(ratioʲ)`, plus the final iterate.
    Geometric { dense_limit: usize, ratio: f64 },
    /// Only `z⁰` and the final iterate.
    Endpoints,
}

impl Default for StoragePolicy {
    fn default() -> Self {
        StoragePolicy::PowersOfTwo { dense_limit: 10_000 }
    }
}

impl StoragePolicy {
    pub fn validate(&self) -> Result<()> {
        if let StoragePolicy::Geometric { ratio, .. } = self {
            if !(*ratio > 1.0 && ratio.is_finite()) {
                return Err(Error::Domain(format!("geometric ratio must exceed 1, got {ratio}")));
            }
        }
        Ok(())
    }

    /// Sorted iteration indices kept for a run of `iters` iterations.
    pub fn kept_indices(&self, iters: usize) -> Vec<usize> {
        let mut ks: Vec<usize> = match *self {
            StoragePolicy::Dense => (0..=iters).collect(),
            StoragePolicy::Endpoints => vec![0, iters],
            StoragePolicy::PowersOfTwo { dense_limit } => {
                let mut v: Vec<usize> = (0..=dense_limit.min(iters)).collect();
                let mut p = 1usize;
                while p <= iters {
                    if p > dense_limit {
                        v.push(p);
                    }
                    p = match p.checked_mul(2) {
                        Some(q) => q,
                        None => break,
                    };
                }
                v.push(iters);
                v
            }
            StoragePolicy::Geometric { dense_limit, ratio } => {
                let mut v: Vec<usize> = (0..=dense_limit.min(iters)).collect();
                let mut x = 1.0f64;
                while x.round() <= iters as f64 {
                    let k = x.round() as usize;
                    if k > dense_limit {
                        v.push(k);
                    }
                    x *= ratio;
                }
                v.push(iters);
                v
            }
        };
        ks.sort_unstable();
        ks.dedup();
        ks
    }
}

/// Record of one run.
#[derive(Debug, Clone)]
pub struct Trace {
    pub(crate) config: AlgoConfig,
    pub(crate) z0: Point,
    pub(crate) iterate_ks: Vec<usize>,
    pub(crate) iterates: Vec<Point>,
    pub(crate) half_ks: Vec<usize>,
    pub(crate) half_iterates: Vec<Point>,
    pub(crate) grad_sq: Vec<f64>,
    pub(crate) half_grad_sq: Vec<f64>,
    pub(crate) alphas: Vec<f64>,
    pub(crate) oracle_calls: Vec<u64>,
}

impl Trace {
    pub fn config(&self) -> &AlgoConfig {
        &self.config
    }

    pub fn kind(&self) -> AlgoKind {
        self.config.kind
    }

    pub fn iters(&self) -> usize {
        self.config.iters
    }

    pub fn z0(&self) -> &Point {
        &self.z0
    }

    /// Indices `k` of the stored iterates, ascending.
    pub fn iterate_ks(&self) -> &[usize] {
        &self.iterate_ks
    }

    pub fn iterates(&self) -> &[Point] {
        &self.iterates
    }

    pub fn iterate_at(&self, k: usize) -> Option<&Point> {
        self.iterate_ks
            .binary_search(&k)
            .ok()
            .map(|i| &self.iterates[i])
    }

    pub fn final_iterate(&self) -> &Point {
        self.iterates.last().expect("trace holds z0")
    }

    /// `(k, z^{k+1/2})` pairs for the stored half-iterates.
    pub fn half_iterates(&self) -> impl Iterator<Item = (usize, &Point)> {
        self.half_ks.iter().copied().zip(&self.half_iterates)
    }

    /// `‖G(z^k)‖²` for every `k = 0..=iters`.
    pub fn grad_sq(&self) -> &[f64] {
        &self.grad_sq
    }

    /// `‖G(z^{k+1/2})‖²` for `k = 0..iters` (extragradient-type methods only).
    pub fn half_grad_sq(&self) -> &[f64] {
        &self.half_grad_sq
    }

    /// EAG-V step sizes `α_0..=α_iters`; empty for other methods.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Step size used at iteration `k`.
    pub fn alpha_at(&self, k: usize) -> f64 {
        if self.alphas.is_empty() {
            self.config.alpha0
        } else {
            self.alphas[k]
        }
    }

    /// Cumulative counted operator calls needed to produce `z^k`.
    pub fn oracle_calls(&self) -> &[u64] {
        &self.oracle_calls
    }

    /// `min_{i≤k} ‖G(z^i)‖²` for every `k`.
    pub fn best_grad_sq(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.grad_sq
            .iter()
            .map(|&g| {
                best = best.min(g);
                best
            })
            .collect()
    }
}
