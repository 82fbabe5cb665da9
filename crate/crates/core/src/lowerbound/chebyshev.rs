//! Chebyshev polynomials and the minimax polynomial `p_k*`.

use crate::error::{Error, Result};

/// `T_N(t)` by the three-term recurrence.
pub fn chebyshev_eval(n: usize, t: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => t,
        _ => {
            let (mut prev, mut cur) = (1.0, t);
            for _ in 1..n {
                let next = 2.0 * t * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Monomial coefficients of `T_N`, lowest degree first.
pub fn chebyshev_coeffs(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..n {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, p) in prev.iter().enumerate() {
            next[i] -= p;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Horner evaluation of `Σ cᵢ tⁱ`.
pub fn poly_eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// `(p(t) + p(−t))/2` in coefficient form.
pub fn even_part(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { *c } else { 0.0 })
        .collect()
}

/// `p_k*(t) = ((−1)^m/(2m+1))(R/t)T_{2m+1}(t/R)` with `m = ⌊k/2⌋`, the
/// degree-`≤k` polynomial with `p(0) = 1` minimising `max_{[−R,R]} |t·p(t)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxPoly {
    pub k: usize,
    pub m: usize,
    pub r: f64,
    /// Monomial coefficients, lowest degree first; degree `2m`, odd entries zero.
    pub coeffs: Vec<f64>,
    /// `M*(k, R) = R/(2m+1)`
    pub m_star: f64,
}

impl MinimaxPoly {
    pub fn eval(&self, t: f64) -> f64 {
        poly_eval(&self.coeffs, t)
    }

    /// `t·p_k*(t)`, evaluated through `T_{2m+1}` for stability.
    pub fn weighted(&self, t: f64) -> f64 {
        let sign = if self.m % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.r / (2 * self.m + 1) as f64 * chebyshev_eval(2 * self.m + 1, t / self.r)
    }

    /// The `2m+2` extremal nodes `λ_j = R cos((2m+1−j)π/(2m+1))`, ascending.
    pub fn nodes(&self) -> Vec<f64> {
        extremal_nodes(self.m, self.r)
    }
}

pub fn extremal_nodes(m: usize, r: f64) -> Vec<f64> {
    let d = (2 * m + 1) as f64;
    (0..2 * m + 2)
        .map(|j| r * ((d - j as f64) * std::f64::consts::PI / d).cos())
        .collect()
}

pub fn minimax_poly(k: usize, r: f64) -> Result<MinimaxPoly> {
    if k == 0 {
        return Err(Error::Domain("minimax polynomial needs k >= 1".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    let m = k / 2;
    let d = 2 * m + 1;
    let t = chebyshev_coeffs(d);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    // (R/t)·T(t/R): the coefficient of t^j in T contributes to t^{j−1} with R^{1−j}
    let coeffs: Vec<f64> = (1..=d)
        .map(|j| sign * t[j] / (d as f64 * r.powi(j as i32 - 1)))
        .collect();
    Ok(MinimaxPoly {
        k,
        m,
        r,
        coeffs,
        m_star: r / d as f64,
    })
}
