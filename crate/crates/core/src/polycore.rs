//! Roots-based monic polynomials.
//!
//! A [`MonicPolynomial`] is stored only as its root multiset; every magnitude
//! is accumulated in the log domain so that high-degree products with large
//! or tiny factors neither overflow nor underflow. Coefficient form is never
//! formed on any evaluation or area path.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::monic_chebyshev;
use crate::error::{Error, Result};
use crate::roots::{solve_fiber, FiberSolveConfig};

pub type ComplexPoint = Complex64;

/// Padding applied to each log term of a disk bound, in units of
/// `f64::EPSILON * max(1, |term|)`.
pub const LOG_TERM_PADDING_ULPS: f64 = 4.0;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// A monic complex polynomial `p(z) = prod_j (z - z_j)` held as its roots.
///
/// Repeated roots encode multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RootsRepr", into = "RootsRepr")]
pub struct MonicPolynomial {
    roots: Vec<ComplexPoint>,
}

#[derive(Serialize, Deserialize)]
struct RootsRepr {
    roots: Vec<ComplexPoint>,
}

impl TryFrom<RootsRepr> for MonicPolynomial {
    type Error = Error;
    fn try_from(r: RootsRepr) -> Result<Self> {
        MonicPolynomial::new(r.roots)
    }
}

impl From<MonicPolynomial> for RootsRepr {
    fn from(p: MonicPolynomial) -> Self {
        RootsRepr { roots: p.roots }
    }
}

impl MonicPolynomial {
    pub fn new(roots: Vec<ComplexPoint>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("polynomial roots"));
        }
        Ok(Self { roots })
    }

    pub fn from_real_roots(roots: &[f64]) -> Result<Self> {
        Self::new(roots.iter().map(|&x| ComplexPoint::new(x, 0.0)).collect())
    }

    pub fn roots(&self) -> &[ComplexPoint] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Mean of the roots, used to anchor subdivision grids.
    pub fn centroid(&self) -> ComplexPoint {
        let n = self.roots.len() as f64;
        let s: ComplexPoint = self.roots.iter().sum();
        s / n
    }

    /// The polynomial whose roots are all shifted by `w`.
    pub fn translate(&self, w: ComplexPoint) -> Self {
        Self {
            roots: self.roots.iter().map(|z| z + w).collect(),
        }
    }

    /// Largest pairwise distance between roots (0 for degree one).
    pub fn root_diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Distinct root values together with the indices that share them.
    pub fn distinct_roots(&self) -> Vec<(ComplexPoint, Vec<usize>)> {
        let mut out: Vec<(ComplexPoint, Vec<usize>)> = Vec::new();
        for (i, z) in self.roots.iter().enumerate() {
            match out.iter_mut().find(|(w, _)| w == z) {
                Some((_, idx)) => idx.push(i),
                None => out.push((*z, vec![i])),
            }
        }
        out
    }
}

/// Two-sided bounds on `log|p|` over a closed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskBound {
    /// May be `-inf` when the disk can contain a root.
    pub log_lower: f64,
    pub log_upper: f64,
}

#[inline]
fn term_padding(term: f64) -> f64 {
    LOG_TERM_PADDING_ULPS * f64::EPSILON * term.abs().max(1.0)
}

/// `log|p(z)|` as a compensated sum of `log|z - z_j|`; `-inf` at a root.
pub fn log_abs_eval(p: &MonicPolynomial, z: ComplexPoint) -> f64 {
    let mut s = CompensatedSum::new();
    for zj in p.roots() {
        let d = (z - zj).norm();
        if d == 0.0 {
            return f64::NEG_INFINITY;
        }
        s.add(d.ln());
    }
    s.value()
}

/// Bounds on `log|p|` over the closed disk `|z - center| <= radius`.
///
/// With `d_j = |center - z_j|`, each factor satisfies
/// `d_j - radius <= |z - z_j| <= d_j + radius`. Every log term is padded by
/// [`LOG_TERM_PADDING_ULPS`] before summation and the sum itself is padded
/// for its rounding, so the bounds are certified up to that FP padding.
pub fn eval_bounds_on_disk(p: &MonicPolynomial, center: ComplexPoint, radius: f64) -> DiskBound {
    debug_assert!(radius > 0.0);
    let mut upper = CompensatedSum::new();
    let mut lower = CompensatedSum::new();
    let mut upper_mag = 0.0;
    let mut lower_mag = 0.0;
    let mut may_contain_root = false;
    for zj in p.roots() {
        let d = (center - zj).norm();
        let hi = (d + radius).ln();
        upper.add(hi + term_padding(hi));
        upper_mag += hi.abs();
        if !may_contain_root {
            if d > radius {
                let lo = (d - radius).ln();
                lower.add(lo - term_padding(lo));
                lower_mag += lo.abs();
            } else {
                may_contain_root = true;
            }
        }
    }
    let log_upper = upper.value() + 2.0 * f64::EPSILON * upper_mag;
    let log_lower = if may_contain_root {
        f64::NEG_INFINITY
    } else {
        lower.value() - 2.0 * f64::EPSILON * lower_mag
    };
    DiskBound { log_lower, log_upper }
}

/// `log prod_{j != k} |z_k - z_j|`; `-inf` when `z_k` is a repeated root.
pub fn log_derivative_magnitude_at_root(p: &MonicPolynomial, k: usize) -> Result<f64> {
    let roots = p.roots();
    let zk = *roots.get(k).ok_or(Error::IndexOutOfRange {
        index: k,
        degree: roots.len(),
    })?;
    let mut s = CompensatedSum::new();
    for (j, zj) in roots.iter().enumerate() {
        if j == k {
            continue;
        }
        let d = (zk - zj).norm();
        if d == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        s.add(d.ln());
    }
    Ok(s.value())
}

/// `|p'(z_k)| = prod_{j != k} |z_k - z_j|`, zero exactly for a repeated root.
pub fn derivative_magnitude_at_root(p: &MonicPolynomial, k: usize) -> Result<f64> {
    log_derivative_magnitude_at_root(p, k).map(f64::exp)
}

/// `p'(z)/p(z) = sum_j 1/(z - z_j)`. Best effort: no error bound is claimed.
pub fn log_derivative_ratio(p: &MonicPolynomial, z: ComplexPoint) -> Result<ComplexPoint> {
    let mut acc = ComplexPoint::new(0.0, 0.0);
    for (index, zj) in p.roots().iter().enumerate() {
        let diff = z - zj;
        if diff.norm() == 0.0 {
            return Err(Error::EvaluationAtRoot { index });
        }
        acc += diff.inv();
    }
    Ok(acc)
}

/// Roots of the monic Chebyshev polynomial of degree `n` composed with the
/// monic polynomial `q` (coefficients in ascending order, leading 1).
///
/// Each fiber `q(z) = x_l` over the zeros `x_l` of the Chebyshev factor is
/// solved in closed form when `deg q <= 2` and by simultaneous iteration
/// otherwise.
pub fn compose_with_chebyshev(n: usize, q: &[ComplexPoint], config: &FiberSolveConfig) -> Result<MonicPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("Chebyshev degree must be >= 1".into()));
    }
    let outer = monic_chebyshev(n)?;
    let mut roots = Vec::with_capacity(n * q.len().saturating_sub(1));
    for (l, x) in outer.roots().iter().enumerate() {
        let fiber_config = FiberSolveConfig {
            seed: config.seed.wrapping_add(l as u64),
            ..config.clone()
        };
        roots.extend(solve_fiber(q, *x, &fiber_config)?);
    }
    MonicPolynomial::new(roots)
}
