/// Whether `αR` satisfies both EAG-C step conditions
/// `1 − 3a − a² − a³ ≥ 0` and `1 − 8a + a² − 2a³ ≥ 0` with `a = αR`.
pub fn check_eag_c_stepsize(alpha_r: f64) -> bool {
    if !(alpha_r >= 0.0) {
        return false;
    }
    let (p1, p2) = eag_c_stepsize_polynomials(alpha_r);
    p1 >= 0.0 && p2 >= 0.0
}

/// The two polynomials of the EAG-C step condition at `a = αR`.
pub fn eag_c_stepsize_polynomials(a: f64) -> (f64, f64) {
    let a2 = a * a;
    let a3 = a2 * a;
    (1.0 - 3.0 * a - a2 - a3, 1.0 - 8.0 * a + a2 - 2.0 * a3)
}

/// Largest `αR` passing [`check_eag_c_stepsize`], by bisection.
pub fn max_eag_c_stepsize() -> f64 {
    // the second polynomial binds; it is decreasing on [0, 1/2]
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if check_eag_c_stepsize(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
