//! Exact least squares over Krylov subspaces.

use nalgebra::{DMatrix, DVector};

/// Relative threshold below which a new Krylov direction counts as dependent.
const DEPENDENCE_TOL: f64 = 1e-13;

/// Orthonormal basis of `span{b, Ab, …, A^{k−1}b}` by Arnoldi with modified
/// Gram–Schmidt and one reorthogonalisation pass. Stops early if the space
/// stops growing, so the column count may be below `k`.
pub fn krylov_basis(a: &DMatrix<f64>, b: &DVector<f64>, k: usize) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(k);
    let bn = b.norm();
    if bn == 0.0 {
        return basis;
    }
    for j in 0..k {
        let mut v = if j == 0 { b.clone() } else { a * &basis[j - 1] };
        let before = v.norm();
        orthogonalize(&mut v, &basis);
        orthogonalize(&mut v, &basis);
        let after = v.norm();
        if after <= DEPENDENCE_TOL * before.max(bn) {
            break;
        }
        basis.push(v / after);
    }
    basis
}

fn orthogonalize(v: &mut DVector<f64>, basis: &[DVector<f64>]) {
    for q in basis {
        let c = q.dot(v);
        v.axpy(-c, q, 1.0);
    }
}

/// `min ‖Ax − b‖²` over `x ∈ span{b, Ab, …, A^{k−1}b}`.
pub fn krylov_min_residual(a: &DMatrix<f64>, b: &DVector<f64>, k: usize) -> f64 {
    let basis = krylov_basis(a, b, k);
    least_squares_residual(a, b, &basis)
}

/// `min ‖Ax − b‖²` over `x` in the span of the given orthonormal columns.
pub(crate) fn least_squares_residual(a: &DMatrix<f64>, b: &DVector<f64>, basis: &[DVector<f64>]) -> f64 {
    let mut images: Vec<DVector<f64>> = Vec::with_capacity(basis.len());
    for q in basis {
        let mut w = a * q;
        let before = w.norm();
        orthogonalize(&mut w, &images);
        orthogonalize(&mut w, &images);
        let after = w.norm();
        if after > DEPENDENCE_TOL * before.max(f64::MIN_POSITIVE) && after > 0.0 {
            images.push(w / after);
        }
    }
    let mut r = b.clone();
    orthogonalize(&mut r, &images);
    orthogonalize(&mut r, &images);
    r.norm_squared()
}

/// Distance from `x` to the span of the orthonormal columns, relative to `‖x‖`.
pub(crate) fn relative_projection_residual(x: &DVector<f64>, basis: &[DVector<f64>]) -> f64 {
    let n = x.norm();
    if n == 0.0 {
        return 0.0;
    }
    let mut r = x.clone();
    orthogonalize(&mut r, basis);
    orthogonalize(&mut r, basis);
    r.norm() / n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rhs() {
        let a = DMatrix::<f64>::identity(3, 3);
        assert_eq!(krylov_min_residual(&a, &DVector::zeros(3), 2), 0.0);
    }

    #[test]
    fn identity_solves_in_one_step() {
        let a = DMatrix::<f64>::identity(4, 4);
        let b = DVector::from_vec(vec![1.0, -2.0, 0.5, 3.0]);
        assert!(krylov_min_residual(&a, &b, 1) < 1e-28);
    }

    #[test]
    fn matches_normal_equations_on_raw_power_basis() {
        let a = DMatrix::from_fn(5, 5, |i, j| if i == j { (i as f64 + 1.0) / 5.0 } else { 0.0 });
        let b = DVector::from_vec(vec![1.0, 1.0, 1.0, 1.0, 1.0]);
        for k in 1..=3 {
            // independent route: solve the projected normal equations on powers of A
            let mut cols = Vec::new();
            let mut v = b.clone();
            for _ in 0..k {
                cols.push(v.clone());
                v = &a * v;
            }
            let kmat = DMatrix::from_columns(&cols);
            let ak = &a * &kmat;
            let coef = (ak.transpose() * &ak).lu().solve(&(ak.transpose() * &b)).unwrap();
            let want = (&ak * coef - &b).norm_squared();
            let got = krylov_min_residual(&a, &b, k);
            assert!((got - want).abs() < 1e-10, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn saturated_space_gives_exact_solution() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 0.0]));
        let b = DVector::from_vec(vec![1.0, 1.0, 0.0]);
        assert!(krylov_min_residual(&a, &b, 5) < 1e-24);
        assert_eq!(krylov_basis(&a, &b, 5).len(), 2);
    }
}
