//! Worst-case biaffine instances.

use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::chebyshev::extremal_nodes;
use super::dual::dual_weights;
use crate::error::{Error, Result};
use crate::saddle::{Operator, Point, SaddleProblem};

const FORMAT_HEADER: &str = "# anchored-minimax hard instance v1";

/// A symmetric `A = diag(λ₀, …, λ_{2m+1}, 0, …)` with `b = Ax*`,
/// `x* = D Σ √μ_j e_j`, embedded in `L(x, y) = ⟨Ax − b, y − x*⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct HardInstance {
    pub k: usize,
    pub n: usize,
    pub r: f64,
    pub d: f64,
    pub lambdas: Vec<f64>,
    pub mu_star: Vec<f64>,
    pub x_star: Vec<f64>,
    pub b: Vec<f64>,
}

/// `G(x, y) = (A(y − c), −(Ax − b))` with diagonal `A` and `c = x*`.
#[derive(Debug, Clone)]
struct DiagonalBiaffine {
    diag: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl Operator for DiagonalBiaffine {
    fn apply(&self, z: &[f64], out: &mut [f64]) {
        let n = self.diag.len();
        let (x, y) = z.split_at(n);
        let (gx, gy) = out.split_at_mut(n);
        for i in 0..n {
            gx[i] = self.diag[i] * (y[i] - self.c[i]);
            gy[i] = -(self.diag[i] * x[i] - self.b[i]);
        }
    }

    fn lagrangian(&self, z: &[f64]) -> Option<f64> {
        let n = self.diag.len();
        let (x, y) = z.split_at(n);
        Some((0..n).map(|i| (self.diag[i] * x[i] - self.b[i]) * (y[i] - self.c[i])).sum())
    }
}

/// Builds the instance for `k`, `‖A‖ = R`, `‖x*‖ = D` in dimension `n ≥ k+2`.
pub fn build_hard_instance(k: usize, r: f64, d: f64, n: usize) -> Result<HardInstance> {
    if k == 0 {
        return Err(Error::Domain("hard instance needs k >= 1".into()));
    }
    if n < k + 2 {
        return Err(Error::Domain(format!("hard instance needs n >= k+2 = {}, got {n}", k + 2)));
    }
    if !(r > 0.0 && r.is_finite()) || !(d >= 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("need R > 0 and D >= 0, got R={r}, D={d}")));
    }
    let lambdas = extremal_nodes(k / 2, r);
    let mu_star = dual_weights(k)?;
    Ok(assemble(k, n, r, d, lambdas, mu_star))
}

fn assemble(k: usize, n: usize, r: f64, d: f64, lambdas: Vec<f64>, mu_star: Vec<f64>) -> HardInstance {
    let mut x_star = vec![0.0; n];
    let mut b = vec![0.0; n];
    for (j, (&l, &w)) in lambdas.iter().zip(&mu_star).enumerate() {
        x_star[j] = d * w.sqrt();
        b[j] = l * x_star[j];
    }
    HardInstance {
        k,
        n,
        r,
        d,
        lambdas,
        mu_star,
        x_star,
        b,
    }
}

impl HardInstance {
    /// Diagonal of `A` padded with zeros to length `n`.
    pub fn diag(&self) -> Vec<f64> {
        let mut diag = vec![0.0; self.n];
        diag[..self.lambdas.len()].copy_from_slice(&self.lambdas);
        diag
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_vec(self.diag()))
    }

    pub fn b_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.b)
    }

    /// `R²D²/(2⌊k/2⌋+1)²`, the per-block residual floor.
    pub fn block_bound(&self) -> f64 {
        let d = (2 * (self.k / 2) + 1) as f64;
        (self.r * self.d / d).powi(2)
    }

    /// `R²‖z*‖²/(2⌊k/2⌋+1)²` with `‖z*‖² = 2D²`.
    pub fn gradient_bound(&self) -> f64 {
        2.0 * self.block_bound()
    }

    /// `z* = (x*, x*)`.
    pub fn saddle_point(&self) -> Point {
        Point::from_blocks(&self.x_star, &self.x_star).expect("finite instance")
    }

    /// The embedded biaffine problem; its saddle operator is `R`-Lipschitz.
    pub fn saddle_problem(&self) -> Result<SaddleProblem> {
        let op = DiagonalBiaffine {
            diag: self.diag(),
            b: self.b.clone(),
            c: self.x_star.clone(),
        };
        SaddleProblem::new(format!("hard-instance-k{}", self.k), self.n, self.n, self.r, Arc::new(op))?
            .with_saddle_point(self.saddle_point())
    }

    /// The skew operator matrix `[[0, A], [−A, 0]]` and offset `v` with
    /// `G(z) = Bz − v`.
    pub fn skew_system(&self) -> (DMatrix<f64>, DVector<f64>) {
        let n = self.n;
        let a = self.matrix();
        let mut bmat = DMatrix::zeros(2 * n, 2 * n);
        bmat.view_mut((0, n), (n, n)).copy_from(&a);
        bmat.view_mut((n, 0), (n, n)).copy_from(&(-&a));
        let mut v = DVector::zeros(2 * n);
        for i in 0..n {
            v[i] = self.b[i];
            v[n + i] = -self.b[i];
        }
        (bmat, v)
    }

    /// Self-describing text form; floats carry 17 significant digits.
    pub fn to_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "{FORMAT_HEADER}");
        let _ = writeln!(s, "k {}", self.k);
        let _ = writeln!(s, "n {}", self.n);
        let _ = writeln!(s, "R {:.16e}", self.r);
        let _ = writeln!(s, "D {:.16e}", self.d);
        let _ = writeln!(s, "lambdas {}", list(&self.lambdas));
        let _ = writeln!(s, "mu {}", list(&self.mu_star));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some(FORMAT_HEADER) {
            return Err(Error::Parse("missing hard-instance header".into()));
        }
        let (mut k, mut n, mut r, mut d, mut lambdas, mut mu) = (None, None, None, None, None, None);
        for line in lines {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let floats = || -> Result<Vec<f64>> {
                rest.split_whitespace()
                    .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
                    .collect()
            };
            let int = || rest.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{key}: {e}")));
            match key {
                "k" => k = Some(int()?),
                "n" => n = Some(int()?),
                "R" => r = floats()?.first().copied(),
                "D" => d = floats()?.first().copied(),
                "lambdas" => lambdas = Some(floats()?),
                "mu" => mu = Some(floats()?),
                _ => return Err(Error::Parse(format!("unknown field `{key}`"))),
            }
        }
        let missing = |f: &str| Error::Parse(format!("missing field `{f}`"));
        let (k, n) = (k.ok_or_else(|| missing("k"))?, n.ok_or_else(|| missing("n"))?);
        let (r, d) = (r.ok_or_else(|| missing("R"))?, d.ok_or_else(|| missing("D"))?);
        let lambdas = lambdas.ok_or_else(|| missing("lambdas"))?;
        let mu = mu.ok_or_else(|| missing("mu"))?;
        if lambdas.len() != 2 * (k / 2) + 2 || mu.len() != lambdas.len() || n < k + 2 {
            return Err(Error::Parse("inconsistent hard-instance sizes".into()));
        }
        if mu.iter().any(|w| *w < 0.0) || (mu.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::Parse("weights are not on the simplex".into()));
        }
        if lambdas.iter().any(|l| l.abs() > r * (1.0 + 1e-12)) {
            return Err(Error::Parse("eigenvalue exceeds R".into()));
        }
        Ok(assemble(k, n, r, d, lambdas, mu))
    }
}
