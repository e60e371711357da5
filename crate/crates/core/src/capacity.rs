//! Compact set models and their logarithmic capacity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fekete::logarithmic_energy;
use crate::polycore::ComplexPoint;
use crate::roots::{horner, solve_fiber, FiberSolveConfig};

fn origin() -> ComplexPoint {
    ComplexPoint::new(0.0, 0.0)
}

/// A compact subset `K` of the plane.
///
/// Serialized as a JSON object tagged by `"kind"`, e.g.
/// `{"kind":"pair","p":2,"q":2.5}`. Points are `[re, im]` pairs and
/// preimage coefficients are ascending with a trailing 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompactSetModel {
    Disk {
        #[serde(default = "origin")]
        center: ComplexPoint,
        radius: f64,
    },
    Interval {
        a: f64,
        b: f64,
    },
    /// `[p, q] U [-q, -p]`
    #[serde(rename = "pair")]
    SymmetricIntervalPair {
        p: f64,
        q: f64,
    },
    Circle {
        #[serde(default = "origin")]
        center: ComplexPoint,
        radius: f64,
    },
    /// `Q^{-1}([-2, 2])` for a real monic `Q`.
    #[serde(rename = "preimage")]
    PolynomialPreimage {
        coeffs: Vec<f64>,
    },
    #[serde(rename = "points")]
    FinitePointSet {
        points: Vec<ComplexPoint>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityValue {
    pub value: f64,
    /// Closed form rather than estimate.
    pub exact: bool,
}

fn finite(z: ComplexPoint) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl CompactSetModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        match self {
            Self::Disk { center, radius } | Self::Circle { center, radius } => {
                if !finite(*center) || !radius.is_finite() {
                    return Err(Error::NonFinite("set model"));
                }
                if *radius <= 0.0 {
                    return bad("radius must be positive");
                }
            }
            Self::Interval { a, b } => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::NonFinite("set model"));
                }
                if a >= b {
                    return bad("interval requires a < b");
                }
            }
            Self::SymmetricIntervalPair { p, q } => {
                if !p.is_finite() || !q.is_finite() {
                    return Err(Error::NonFinite("set model"));
                }
                if !(0.0 < *p && p < q) {
                    return bad("pair requires 0 < p < q");
                }
            }
            Self::PolynomialPreimage { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::NonFinite("set model"));
                }
                if coeffs.len() < 2 || *coeffs.last().unwrap() != 1.0 {
                    return bad("preimage requires monic coefficients of degree >= 1");
                }
            }
            Self::FinitePointSet { points } => {
                if points.iter().any(|z| !finite(*z)) {
                    return Err(Error::NonFinite("set model"));
                }
                if points.is_empty() {
                    return bad("point set must be non-empty");
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    /// Ascending complex coefficients of the generating polynomial, if any.
    pub fn generating_polynomial(&self) -> Option<Vec<Complex64>> {
        match self {
            Self::PolynomialPreimage { coeffs } => Some(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect()),
            _ => None,
        }
    }
}

/// Logarithmic capacity, exact for every supported model.
pub fn capacity(model: &CompactSetModel) -> CapacityValue {
    let value = match model {
        CompactSetModel::Disk { radius, .. } | CompactSetModel::Circle { radius, .. } => *radius,
        CompactSetModel::Interval { a, b } => (b - a) / 4.0,
        CompactSetModel::SymmetricIntervalPair { p, q } => 0.5 * ((q - p) * (q + p)).sqrt(),
        CompactSetModel::PolynomialPreimage { .. } => 1.0,
        CompactSetModel::FinitePointSet { .. } => 0.0,
    };
    CapacityValue { value, exact: true }
}

/// The `eps > 0` for which `[j, j + eps] U [-j - eps, -j]` has capacity `t`.
pub fn epsilon_for_capacity(j: f64, t: f64) -> Result<f64> {
    if !(j >= 2.0) || !j.is_finite() {
        return Err(Error::InvalidParameter(format!("j must be >= 2, got {j}")));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t must lie in (0, 1), got {t}")));
    }
    // sqrt(j^2 + 4t^2) - j without cancellation
    let s = 4.0 * t * t;
    Ok(s / ((j * j + s).sqrt() + j))
}

const PREIMAGE_SAMPLES: usize = 2001;

/// Points on `Q^{-1}([-2, 2])` over Chebyshev-distributed fiber values.
pub(crate) fn preimage_samples(q: &[Complex64], count: usize, seed: u64) -> Result<Vec<ComplexPoint>> {
    let count = count.max(2);
    let mut out = Vec::with_capacity(count * (q.len() - 1));
    let config = FiberSolveConfig {
        seed,
        ..Default::default()
    };
    for i in 0..count {
        let x = 2.0 * (std::f64::consts::PI * i as f64 / (count - 1) as f64).cos();
        out.extend(solve_fiber(q, Complex64::new(x, 0.0), &config)?);
    }
    Ok(out)
}

fn max_pairwise_distance(points: &[ComplexPoint]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

/// Diameter of the set. The preimage variant is estimated from a dense
/// fiber sampling of the set.
pub fn diameter(model: &CompactSetModel) -> f64 {
    match model {
        CompactSetModel::Disk { radius, .. } | CompactSetModel::Circle { radius, .. } => 2.0 * radius,
        CompactSetModel::Interval { a, b } => b - a,
        CompactSetModel::SymmetricIntervalPair { q, .. } => 2.0 * q,
        CompactSetModel::FinitePointSet { points } => max_pairwise_distance(points),
        CompactSetModel::PolynomialPreimage { .. } => {
            let q = model.generating_polynomial().expect("preimage");
            match preimage_samples(&q, PREIMAGE_SAMPLES, 0) {
                Ok(pts) => max_pairwise_distance(&pts),
                Err(_) => f64::NAN,
            }
        }
    }
}

pub fn diameter_is_exact(model: &CompactSetModel) -> bool {
    !matches!(model, CompactSetModel::PolynomialPreimage { .. })
}

/// `(prod_{j<k} |w_j - w_k|)^{2/(n(n-1))}`, zero when two points coincide.
pub fn transfinite_diameter_estimate(points: &[ComplexPoint]) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "transfinite diameter needs n >= 2 points".into(),
        ));
    }
    let e = logarithmic_energy(points);
    if e == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok((2.0 * e / (n * (n - 1)) as f64).exp())
}

fn distance_to_segment(z: ComplexPoint, a: f64, b: f64) -> f64 {
    let dx = (a - z.re).max(0.0).max(z.re - b);
    dx.hypot(z.im)
}

/// Whether `z` lies within distance `tol` of the set.
///
/// The preimage test maps `tol` through a sampled local Lipschitz bound of
/// `Q`; it is a heuristic used only by the Fekete optimizer.
pub fn membership(model: &CompactSetModel, z: ComplexPoint, tol: f64) -> bool {
    match model {
        CompactSetModel::Disk { center, radius } => (z - center).norm() <= radius + tol,
        CompactSetModel::Circle { center, radius } => ((z - center).norm() - radius).abs() <= tol,
        CompactSetModel::Interval { a, b } => distance_to_segment(z, *a, *b) <= tol,
        CompactSetModel::SymmetricIntervalPair { p, q } => {
            distance_to_segment(z, *p, *q).min(distance_to_segment(z, -q, -p)) <= tol
        }
        CompactSetModel::FinitePointSet { points } => points.iter().any(|w| (z - w).norm() <= tol),
        CompactSetModel::PolynomialPreimage { .. } => {
            let q = model.generating_polynomial().expect("preimage");
            let (w, dw) = horner(&q, z);
            let mut lipschitz = dw.norm();
            if tol > 0.0 {
                for k in 0..8 {
                    let u = z + Complex64::from_polar(tol, std::f64::consts::TAU * k as f64 / 8.0);
                    lipschitz = lipschitz.max(horner(&q, u).1.norm());
                }
            }
            let slack = 1e-12 * w.norm().max(1.0);
            distance_to_segment(w, -2.0, 2.0) <= tol * lipschitz + slack
        }
    }
}
