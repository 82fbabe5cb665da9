//! Eigenvalues and determinant of real symmetric 3×3 matrices.

pub type Sym3 = [[f64; 3]; 3];

pub fn max_abs(m: &Sym3) -> f64 {
    m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

pub fn det3(m: &Sym3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat_vec(m: &Sym3, v: [f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

/// Eigenvalues in ascending order by the trigonometric solution of the
/// characteristic cubic. The matrix is scaled by its largest entry first.
pub fn sym3_eigenvalues(m: &Sym3) -> [f64; 3] {
    let scale = max_abs(m);
    if scale == 0.0 {
        return [0.0; 3];
    }
    let a: Sym3 = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] / scale));
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let mut eig = if p1 == 0.0 {
        [a[0][0], a[1][1], a[2][2]]
    } else {
        let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        let b: Sym3 = std::array::from_fn(|i| {
            std::array::from_fn(|j| (a[i][j] - if i == j { q } else { 0.0 }) / p)
        });
        let r = (det3(&b) / 2.0).clamp(-1.0, 1.0);
        let phi = r.acos() / 3.0;
        let hi = q + 2.0 * p * phi.cos();
        let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
        [lo, 3.0 * q - hi - lo, hi]
    };
    eig.sort_by(f64::total_cmp);
    eig.map(|e| e * scale)
}
