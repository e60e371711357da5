//! Fiber solving: all solutions of `q(z) = x` for a low-degree monic `q`.
//!
//! Degrees one and two use closed forms. Higher degrees use Aberth-Ehrlich
//! simultaneous iteration from a randomly perturbed initial circle, followed
//! by a residual check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberSolveConfig {
    /// Residual tolerance is `residual_scale * max(1, |x|)`.
    pub residual_scale: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for FiberSolveConfig {
    fn default() -> Self {
        Self {
            residual_scale: 1e-12,
            max_iterations: 200,
            seed: 0,
        }
    }
}

/// Value and derivative of a polynomial with ascending coefficients.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

fn check_monic(q: &[Complex64]) -> Result<()> {
    if q.len() < 2 {
        return Err(Error::InvalidParameter("polynomial degree must be >= 1".into()));
    }
    if q.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("polynomial coefficients"));
    }
    if q[q.len() - 1] != Complex64::new(1.0, 0.0) {
        return Err(Error::InvalidParameter("polynomial must be monic".into()));
    }
    Ok(())
}

/// All `deg q` solutions of `q(z) = x`, counted with multiplicity.
pub fn solve_fiber(q: &[Complex64], x: Complex64, config: &FiberSolveConfig) -> Result<Vec<Complex64>> {
    check_monic(q)?;
    let degree = q.len() - 1;
    let mut f = q.to_vec();
    f[0] -= x;
    let roots = match degree {
        1 => vec![-f[0]],
        2 => quadratic(f[1], f[0]),
        _ => aberth(&f, config)?,
    };
    let tolerance = config.residual_scale * x.norm().max(1.0);
    for z in &roots {
        let residual = horner(&f, *z).0.norm();
        if !(residual <= tolerance) {
            return Err(Error::RootSolveFailed {
                fiber: x.re,
                residual,
                tolerance,
            });
        }
    }
    Ok(roots)
}

/// Roots of `z^2 + b z + c` without cancellation in the larger root.
fn quadratic(b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - 4.0 * c).sqrt();
    // pick the sign that avoids subtractive cancellation
    let s = if (b.conj() * disc).re >= 0.0 {
        -b - disc
    } else {
        -b + disc
    };
    if s.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    let r1 = s / 2.0;
    let r2 = 2.0 * c / s;
    vec![r1, r2]
}

fn aberth(f: &[Complex64], config: &FiberSolveConfig) -> Result<Vec<Complex64>> {
    let degree = f.len() - 1;
    let center = -f[degree - 1] / degree as f64;
    // Fujiwara-style radius bound on the roots
    let radius = (1..=degree)
        .map(|i| f[degree - i].norm().powf(1.0 / i as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let jitter: f64 = rng.gen_range(-0.05..0.05);
            let angle = phase + std::f64::consts::TAU * k as f64 / degree as f64;
            center + Complex64::from_polar(radius * (1.0 + jitter), angle)
        })
        .collect();

    for _ in 0..config.max_iterations {
        let mut max_step: f64 = 0.0;
        for k in 0..degree {
            let (value, deriv) = horner(f, z[k]);
            if value.norm() == 0.0 {
                continue;
            }
            let ratio = value / deriv;
            let repulsion: Complex64 = (0..degree).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // a couple of Newton polish steps
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let (value, deriv) = horner(f, *zk);
            if deriv.norm() > 0.0 {
                let step = value / deriv;
                if step.re.is_finite() && step.im.is_finite() {
                    *zk -= step;
                }
            }
        }
    }
    Ok(z)
}
