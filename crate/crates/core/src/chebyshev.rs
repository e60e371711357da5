//! The monic Chebyshev polynomial of `[-2, 2]`, `2 T_n(x / 2)`.
//!
//! Roots come straight from the closed-form angles
//! `theta_k = (2k - 1) pi / (2n)`, never from the three-term recurrence.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{CompensatedSum, MonicPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChebyshevSpec {
    pub n: usize,
}

impl ChebyshevSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Chebyshev degree must be >= 1".into()));
        }
        Ok(Self { n })
    }

    pub fn polynomial(&self) -> MonicPolynomial {
        monic_chebyshev(self.n).expect("validated degree")
    }
}

fn theta(n: usize, k: usize) -> f64 {
    (2 * k - 1) as f64 * PI / (2 * n) as f64
}

/// Zero `x_k = 2 cos(theta_k)`, written as `2 sin((n - 2k + 1) pi / (2n))`
/// so the middle zero of odd degree is exactly 0 and the set is exactly
/// symmetric.
fn zero(n: usize, k: usize) -> f64 {
    let m = n as i64 - 2 * k as i64 + 1;
    2.0 * (m as f64 * PI / (2 * n) as f64).sin()
}

/// Monic Chebyshev polynomial of degree `n`, zeros in decreasing order.
pub fn monic_chebyshev(n: usize) -> Result<MonicPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("Chebyshev degree must be >= 1".into()));
    }
    MonicPolynomial::from_real_roots(&(1..=n).map(|k| zero(n, k)).collect::<Vec<_>>())
}

/// `|T'_n(x_k)| = n / sin(theta_k)` for `1 <= k <= n`.
pub fn derivative_magnitude_at_zero(n: usize, k: usize) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, degree: n });
    }
    Ok(n as f64 / theta(n, k).sin())
}

/// `sum_k 1 / |T'_n(x_k)|^2`. Equals `1/(2n)` for `n >= 2` and 1 for `n = 1`.
pub fn inverse_derivative_square_sum(n: usize) -> f64 {
    let nf = n as f64;
    let s: CompensatedSum = (1..=n)
        .map(|k| {
            let s = theta(n, k).sin() / nf;
            s * s
        })
        .collect();
    s.value()
}

/// `sum_k cos((2k - 1) pi / n)`; zero for `n >= 2`, `-1` for `n = 1`.
pub fn cosine_identity_residual(n: usize) -> f64 {
    let s: CompensatedSum = (1..=n).map(|k| (2.0 * theta(n, k)).cos()).collect();
    s.value()
}

/// Every critical value of the degree-`n` monic Chebyshev polynomial has
/// modulus 2.
pub fn critical_values_magnitude(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::NoCriticalPoints(n));
    }
    Ok(2.0)
}

/// Ascending coefficients of the degree-`d` monic Chebyshev polynomial.
///
/// Only meant for small `d`, where the polynomial serves as an inner map
/// of a composition.
pub fn chebyshev_coefficients(d: usize) -> Result<Vec<Complex64>> {
    if d == 0 {
        return Err(Error::InvalidParameter("Chebyshev degree must be >= 1".into()));
    }
    let mut prev = vec![2.0];
    let mut cur = vec![0.0, 1.0];
    for _ in 1..d {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur.into_iter().map(|c| Complex64::new(c, 0.0)).collect())
}
