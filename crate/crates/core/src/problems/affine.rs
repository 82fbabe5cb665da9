use nalgebra::{DMatrix, DVector};

use crate::saddle::Operator;

/// Affine saddle operator `G(z) = M z + v`.
///
/// When `M` has the block form `[[P, C], [−Cᵀ, Q]]` with `P`, `Q` symmetric,
/// `G` is the saddle operator of
/// `L(x, y) = ½xᵀPx + xᵀCy − ½yᵀQy + vₓᵀx − vᵧᵀy`, and
/// [`Operator::lagrangian`] returns that value.
#[derive(Debug, Clone)]
pub struct AffineSaddle {
    matrix: DMatrix<f64>,
    offset: DVector<f64>,
    split: usize,
    has_lagrangian: bool,
}

impl AffineSaddle {
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>, split: usize) -> Self {
        assert!(matrix.is_square(), "affine saddle operator must be square");
        assert_eq!(matrix.nrows(), offset.len());
        assert!(split <= matrix.nrows());
        let has_lagrangian = saddle_block_structure(&matrix, split);
        Self {
            matrix,
            offset,
            split,
            has_lagrangian,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn offset(&self) -> &DVector<f64> {
        &self.offset
    }

    pub fn split(&self) -> usize {
        self.split
    }
}

fn saddle_block_structure(m: &DMatrix<f64>, split: usize) -> bool {
    let n = m.nrows();
    let scale = m.amax().max(f64::MIN_POSITIVE);
    let tol = 1e-13 * scale;
    for i in 0..n {
        for j in 0..n {
            let same_block = (i < split) == (j < split);
            let mirrored = if same_block { m[(j, i)] } else { -m[(j, i)] };
            if (m[(i, j)] - mirrored).abs() > tol {
                return false;
            }
        }
    }
    true
}

impl Operator for AffineSaddle {
    fn apply(&self, z: &[f64], out: &mut [f64]) {
        let n = self.offset.len();
        out.copy_from_slice(self.offset.as_slice());
        let data = self.matrix.as_slice();
        for (j, &zj) in z.iter().enumerate() {
            if zj == 0.0 {
                continue;
            }
            let col = &data[j * n..(j + 1) * n];
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * zj;
            }
        }
    }

    fn lagrangian(&self, z: &[f64]) -> Option<f64> {
        if !self.has_lagrangian {
            return None;
        }
        let s = self.split;
        let n = z.len();
        let m = &self.matrix;
        let mut value = 0.0;
        for i in 0..n {
            for j in 0..n {
                let w = z[i] * m[(i, j)] * z[j];
                value += match (i < s, j < s) {
                    (true, true) => 0.5 * w,
                    (true, false) => w,
                    (false, false) => -0.5 * w,
                    (false, true) => 0.0,
                };
            }
            value += if i < s {
                self.offset[i] * z[i]
            } else {
                -self.offset[i] * z[i]
            };
        }
        Some(value)
    }
}
