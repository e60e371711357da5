//! Approximate Fekete tuples by logarithmic energy maximization.
//!
//! The optimizer starts from a greedy Leja sequence over a boundary-biased
//! candidate discretization of the set, then alternates best-improvement
//! exchange rounds against the candidates with projected coordinate ascent
//! in the continuum.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{membership, preimage_samples, CompactSetModel};
use crate::error::{Error, Result};
use crate::polycore::{log_derivative_magnitude_at_root, CompensatedSum, ComplexPoint, MonicPolynomial};
use crate::roots::horner;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeketeConfig {
    pub candidate_count: usize,
    pub max_exchange_rounds: usize,
    /// Initial coordinate-ascent step, relative to the candidate spread.
    pub local_step: f64,
    /// Stop once a full round improves the energy by less than this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for FeketeConfig {
    fn default() -> Self {
        Self {
            candidate_count: 256,
            max_exchange_rounds: 100,
            local_step: 0.05,
            tolerance: 1e-12,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeketeResult {
    pub points: Vec<ComplexPoint>,
    /// `sum_{j<k} log|w_j - w_k|`
    pub energy: f64,
    pub transfinite_estimate: f64,
    pub converged: bool,
}

/// `sum_{j<k} log|w_j - w_k|`; 0 for fewer than two points, `-inf` when two
/// points coincide.
pub fn logarithmic_energy(points: &[ComplexPoint]) -> f64 {
    let mut s = CompensatedSum::new();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = (a - b).norm();
            if d == 0.0 {
                return f64::NEG_INFINITY;
            }
            s.add(d.ln());
        }
    }
    s.value()
}

/// Candidate discretization concentrated where Fekete points live.
pub fn model_candidates(model: &CompactSetModel, count: usize, seed: u64) -> Result<Vec<ComplexPoint>> {
    let count = count.max(2);
    let cheb = |a: f64, b: f64, m: usize| -> Vec<ComplexPoint> {
        let m = m.max(2);
        (0..m)
            .map(|i| {
                let x = 0.5 * (a + b) + 0.5 * (b - a) * (std::f64::consts::PI * i as f64 / (m - 1) as f64).cos();
                ComplexPoint::new(x, 0.0)
            })
            .collect()
    };
    let ring = |center: ComplexPoint, radius: f64, m: usize| -> Vec<ComplexPoint> {
        (0..m)
            .map(|k| center + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / m as f64))
            .collect()
    };
    let out = match model {
        CompactSetModel::Interval { a, b } => cheb(*a, *b, count),
        CompactSetModel::Circle { center, radius } | CompactSetModel::Disk { center, radius } => {
            ring(*center, *radius, count)
        }
        CompactSetModel::SymmetricIntervalPair { p, q } => {
            let mut v = cheb(*p, *q, count / 2);
            v.extend(cheb(-q, -p, count / 2));
            v
        }
        CompactSetModel::PolynomialPreimage { coeffs } => {
            let q = model.generating_polynomial().expect("preimage");
            let d = coeffs.len() - 1;
            preimage_samples(&q, (count / d).max(2), seed)?
        }
        CompactSetModel::FinitePointSet { points } => points.clone(),
    };
    Ok(dedup(out))
}

fn dedup(points: Vec<ComplexPoint>) -> Vec<ComplexPoint> {
    let mut out: Vec<ComplexPoint> = Vec::with_capacity(points.len());
    for z in points {
        if !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

/// Nearest point of the set to `z`, or `None` when the set has no
/// continuum to move along.
fn project(model: &CompactSetModel, z: ComplexPoint) -> Option<ComplexPoint> {
    match model {
        CompactSetModel::Interval { a, b } => Some(ComplexPoint::new(z.re.clamp(*a, *b), 0.0)),
        CompactSetModel::Circle { center, radius } => {
            let d = z - center;
            let r = d.norm();
            (r > 0.0).then(|| center + d * (radius / r))
        }
        CompactSetModel::Disk { center, radius } => {
            let d = z - center;
            let r = d.norm();
            Some(if r <= *radius { z } else { center + d * (radius / r) })
        }
        CompactSetModel::SymmetricIntervalPair { p, q } => {
            let x = if z.re >= 0.0 {
                z.re.clamp(*p, *q)
            } else {
                z.re.clamp(-q, -p)
            };
            Some(ComplexPoint::new(x, 0.0))
        }
        CompactSetModel::PolynomialPreimage { .. } => {
            let q = model.generating_polynomial().expect("preimage");
            let (w, _) = horner(&q, z);
            let target = Complex64::new(w.re.clamp(-2.0, 2.0), 0.0);
            let mut u = z;
            for _ in 0..30 {
                let (v, dv) = horner(&q, u);
                let r = v - target;
                if r.norm() <= 1e-15 * target.norm().max(1.0) {
                    break;
                }
                if dv.norm() == 0.0 {
                    return None;
                }
                u -= r / dv;
            }
            membership(model, u, 1e-10).then_some(u)
        }
        CompactSetModel::FinitePointSet { .. } => None,
    }
}

/// Sum of `log|z - w_k|` over all `k` except `skip`.
fn point_potential(z: ComplexPoint, points: &[ComplexPoint], skip: Option<usize>) -> f64 {
    let mut s = CompensatedSum::new();
    for (k, w) in points.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        let d = (z - w).norm();
        if d == 0.0 {
            return f64::NEG_INFINITY;
        }
        s.add(d.ln());
    }
    s.value()
}

fn leja(candidates: &[ComplexPoint], n: usize) -> Vec<ComplexPoint> {
    let m = candidates.len() as f64;
    let centroid: ComplexPoint = candidates.iter().sum::<ComplexPoint>() / m;
    let mut first = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, c) in candidates.iter().enumerate() {
        let d = (c - centroid).norm();
        if d > best {
            best = d;
            first = i;
        }
    }
    let mut chosen = vec![candidates[first]];
    // running potential of each candidate against the chosen points
    let mut potential: Vec<f64> = candidates.iter().map(|c| (c - candidates[first]).norm().ln()).collect();
    while chosen.len() < n {
        let mut arg = 0;
        let mut best = f64::NEG_INFINITY;
        for (i, &v) in potential.iter().enumerate() {
            if v > best {
                best = v;
                arg = i;
            }
        }
        let z = candidates[arg];
        chosen.push(z);
        for (v, c) in potential.iter_mut().zip(candidates) {
            *v += (c - z).norm().ln();
        }
    }
    chosen
}

/// Best single swap of a point for a candidate; ties go to the lowest
/// (candidate index, point index).
fn best_exchange(points: &[ComplexPoint], candidates: &[ComplexPoint]) -> Option<(f64, usize, usize)> {
    let own: Vec<f64> = (0..points.len())
        .map(|i| point_potential(points[i], points, Some(i)))
        .collect();
    let per_candidate: Vec<(f64, usize)> = candidates
        .par_iter()
        .map(|c| {
            let mut best = (f64::NEG_INFINITY, 0usize);
            let logs: Vec<f64> = points.iter().map(|w| (c - w).norm().ln()).collect();
            if logs.contains(&f64::NEG_INFINITY) {
                return best;
            }
            let total: f64 = logs.iter().sum();
            for i in 0..points.len() {
                let delta = (total - logs[i]) - own[i];
                if delta > best.0 {
                    best = (delta, i);
                }
            }
            best
        })
        .collect();
    let mut out: Option<(f64, usize, usize)> = None;
    for (ci, &(delta, pi)) in per_candidate.iter().enumerate() {
        if out.is_none_or(|(d, _, _)| delta > d) {
            out = Some((delta, ci, pi));
        }
    }
    out
}

fn exchange_phase(points: &mut [ComplexPoint], candidates: &[ComplexPoint], energy: &mut f64) {
    for _ in 0..10 * candidates.len().max(1) {
        match best_exchange(points, candidates) {
            Some((delta, ci, pi)) if delta > 1e-14 * energy.abs().max(1.0) => {
                points[pi] = candidates[ci];
                *energy = logarithmic_energy(points);
            }
            _ => break,
        }
    }
}

fn local_phase(model: &CompactSetModel, points: &mut [ComplexPoint], initial_step: f64, energy: &mut f64) {
    if matches!(model, CompactSetModel::FinitePointSet { .. }) {
        return;
    }
    let dirs = [
        ComplexPoint::new(1.0, 0.0),
        ComplexPoint::new(-1.0, 0.0),
        ComplexPoint::new(0.0, 1.0),
        ComplexPoint::new(0.0, -1.0),
    ];
    let floor = initial_step * 1e-12;
    let mut step = initial_step;
    let mut sweeps = 0;
    while step > floor && sweeps < 10_000 {
        sweeps += 1;
        let mut moved = false;
        for i in 0..points.len() {
            let current = point_potential(points[i], points, Some(i));
            let mut best = (0.0, points[i]);
            for d in dirs {
                let Some(z) = project(model, points[i] + d * step) else {
                    continue;
                };
                if z == points[i] {
                    continue;
                }
                let gain = point_potential(z, points, Some(i)) - current;
                if gain > best.0 {
                    best = (gain, z);
                }
            }
            if best.0 > 0.0 {
                points[i] = best.1;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    *energy = logarithmic_energy(points);
}

fn spread(candidates: &[ComplexPoint]) -> f64 {
    let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in candidates {
        lo_re = lo_re.min(z.re);
        hi_re = hi_re.max(z.re);
        lo_im = lo_im.min(z.im);
        hi_im = hi_im.max(z.im);
    }
    (hi_re - lo_re).max(hi_im - lo_im).max(1e-6)
}

/// Approximate Fekete `n`-tuple of `model`.
pub fn fekete_points(model: &CompactSetModel, n: usize, config: &FeketeConfig) -> Result<FeketeResult> {
    fekete_points_with_candidates(model, n, &[], config)
}

/// As [`fekete_points`], with `extra` points added to the candidate set.
pub fn fekete_points_with_candidates(
    model: &CompactSetModel,
    n: usize,
    extra: &[ComplexPoint],
    config: &FeketeConfig,
) -> Result<FeketeResult> {
    model.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut candidates = model_candidates(model, config.candidate_count, config.seed)?;
    candidates.extend_from_slice(extra);
    let candidates = dedup(candidates);
    if candidates.len() < n {
        return Err(Error::InfeasibleModel {
            available: candidates.len(),
            requested: n,
        });
    }
    let mut points = leja(&candidates, n);
    if n == 1 {
        return Ok(FeketeResult {
            points,
            energy: 0.0,
            transfinite_estimate: 0.0,
            converged: true,
        });
    }
    let mut energy = logarithmic_energy(&points);
    let step = config.local_step * spread(&candidates);
    let mut converged = false;
    for _ in 0..config.max_exchange_rounds {
        let before = energy;
        exchange_phase(&mut points, &candidates, &mut energy);
        local_phase(model, &mut points, step, &mut energy);
        if energy - before < config.tolerance {
            converged = true;
            break;
        }
    }
    let energy = logarithmic_energy(&points);
    Ok(FeketeResult {
        transfinite_estimate: (2.0 * energy / (n * (n - 1)) as f64).exp(),
        points,
        energy,
        converged,
    })
}

pub fn fekete_polynomial(result: &FeketeResult) -> Result<MonicPolynomial> {
    MonicPolynomial::new(result.points.clone())
}

/// Exact Fekete tuple of `Circle(center, radius)`: the rotated `n`-th roots.
pub fn circle_fekete_polynomial(center: ComplexPoint, radius: f64, n: usize) -> Result<MonicPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    MonicPolynomial::new(
        (0..n)
            .map(|k| center + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCheck {
    pub derivative: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Compares `|p'(z_k)|` with `t^{n-1}` at every root, in the log domain.
pub fn check_derivative_lower_bound(p: &MonicPolynomial, t: f64) -> Vec<DerivativeCheck> {
    let n = p.degree();
    let log_bound = (n - 1) as f64 * t.ln();
    (0..n)
        .map(|k| {
            let log_d = log_derivative_magnitude_at_root(p, k).expect("index in range");
            DerivativeCheck {
                derivative: log_d.exp(),
                bound: log_bound.exp(),
                pass: log_d >= log_bound,
            }
        })
        .collect()
}

pub const ORACLE_MAX_CANDIDATES: usize = 64;
pub const ORACLE_MAX_POINTS: usize = 6;

/// Exhaustive maximization of the energy over all `n`-subsets.
pub fn brute_force_fekete_oracle(candidates: &[ComplexPoint], n: usize) -> Result<(Vec<ComplexPoint>, f64)> {
    let m = candidates.len();
    if m > ORACLE_MAX_CANDIDATES || n > ORACLE_MAX_POINTS {
        return Err(Error::InstanceTooLarge { candidates: m, n });
    }
    if n == 0 || n > m {
        return Err(Error::InfeasibleModel {
            available: m,
            requested: n,
        });
    }
    let logd: Vec<Vec<f64>> = candidates
        .iter()
        .map(|a| candidates.iter().map(|b| (a - b).norm().ln()).collect())
        .collect();

    struct Search<'a> {
        logd: &'a [Vec<f64>],
        n: usize,
        current: Vec<usize>,
        best: (f64, Vec<usize>),
    }
    impl Search<'_> {
        fn go(&mut self, start: usize, energy: f64) {
            if self.current.len() == self.n {
                if energy > self.best.0 {
                    self.best = (energy, self.current.clone());
                }
                return;
            }
            let m = self.logd.len();
            let remaining = self.n - self.current.len();
            for i in start..=m - remaining {
                let add: f64 = self.current.iter().map(|&j| self.logd[i][j]).sum();
                self.current.push(i);
                self.go(i + 1, energy + add);
                self.current.pop();
            }
        }
    }
    let mut s = Search {
        logd: &logd,
        n,
        current: Vec::with_capacity(n),
        best: (f64::NEG_INFINITY, (0..n).collect()),
    };
    s.go(0, 0.0);
    let points: Vec<ComplexPoint> = s.best.1.iter().map(|&i| candidates[i]).collect();
    let energy = logarithmic_energy(&points);
    Ok((points, energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::diameter;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn energy_examples() {
        assert!((logarithmic_energy(&[c(0.0, 0.0), c(2.0, 0.0)]) - LN_2).abs() < 1e-16);
        let sq = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        assert!((logarithmic_energy(&sq) - 4.0 * LN_2).abs() < 1e-14);
        assert_eq!(logarithmic_energy(&[c(0.0, 0.0), c(0.0, 0.0)]), f64::NEG_INFINITY);
        assert_eq!(logarithmic_energy(&[c(3.0, 0.0)]), 0.0);
    }

    #[test]
    fn circle_four_points() {
        let m = CompactSetModel::Circle {
            center: c(0.0, 0.0),
            radius: 1.0,
        };
        let r = fekete_points(&m, 4, &FeketeConfig::default()).unwrap();
        assert!((r.energy - 4.0 * LN_2).abs() < 1e-9, "{}", r.energy);
        assert!(r.converged);
        assert_eq!(r.energy, logarithmic_energy(&r.points));
    }

    #[test]
    fn interval_two_points_are_endpoints() {
        let m = CompactSetModel::Interval { a: -2.0, b: 2.0 };
        let r = fekete_points(&m, 2, &FeketeConfig::default()).unwrap();
        let mut xs: Vec<f64> = r.points.iter().map(|z| z.re).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(xs, vec![-2.0, 2.0]);
        let p = fekete_polynomial(&r).unwrap();
        assert_eq!(p.degree(), 2);
        assert!((r.transfinite_estimate - 4.0).abs() < 1e-15);
    }

    #[test]
    fn single_point() {
        let m = CompactSetModel::Disk {
            center: c(1.0, 0.0),
            radius: 0.5,
        };
        let r = fekete_points(&m, 1, &FeketeConfig::default()).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.energy, 0.0);
        let p = fekete_polynomial(&r).unwrap();
        assert_eq!(p.roots(), &r.points[..]);
    }

    #[test]
    fn infeasible_point_set() {
        let m = CompactSetModel::FinitePointSet {
            points: vec![c(0.0, 0.0), c(1.0, 0.0)],
        };
        assert_eq!(
            fekete_points(&m, 3, &FeketeConfig::default()),
            Err(Error::InfeasibleModel {
                available: 2,
                requested: 3
            })
        );
        let r = fekete_points(&m, 2, &FeketeConfig::default()).unwrap();
        assert!((r.energy - 0.0).abs() < 1e-16);
    }

    #[test]
    fn points_stay_on_the_set() {
        let cfg = FeketeConfig {
            candidate_count: 64,
            ..Default::default()
        };
        let models = [
            CompactSetModel::Disk {
                center: c(0.5, -0.5),
                radius: 1.3,
            },
            CompactSetModel::SymmetricIntervalPair { p: 1.0, q: 2.0 },
            CompactSetModel::PolynomialPreimage {
                coeffs: vec![-4.0, 0.0, 1.0],
            },
            CompactSetModel::PolynomialPreimage {
                coeffs: vec![0.0, -3.0, 0.0, 1.0],
            },
        ];
        for m in &models {
            let r = fekete_points(m, 6, &cfg).unwrap();
            for z in &r.points {
                assert!(membership(m, *z, 1e-9), "{m:?} {z}");
            }
            assert_eq!(r.energy, logarithmic_energy(&r.points));
        }
    }

    #[test]
    fn circle_transfinite_sandwich() {
        let m = CompactSetModel::Circle {
            center: c(0.0, 0.0),
            radius: 1.0,
        };
        let cfg = FeketeConfig {
            candidate_count: 128,
            ..Default::default()
        };
        for n in 2..=30 {
            let r = fekete_points(&m, n, &cfg).unwrap();
            // exact value for the n-th roots of unity is n^{1/(n-1)}
            let exact = (n as f64).powf(1.0 / (n - 1) as f64);
            assert!(r.transfinite_estimate >= 1.0 - 1e-6);
            assert!(r.transfinite_estimate <= diameter(&m) * (1.0 + 1e-12));
            assert!((r.transfinite_estimate - exact).abs() < 1e-6 * exact, "n={n}");
        }
    }

    #[test]
    fn interval_transfinite_trend() {
        let m = CompactSetModel::Interval { a: -2.0, b: 2.0 };
        let cfg = FeketeConfig {
            candidate_count: 128,
            ..Default::default()
        };
        let mut prev = f64::INFINITY;
        for n in 2..=30 {
            let r = fekete_points(&m, n, &cfg).unwrap();
            assert!(r.transfinite_estimate <= prev + 1e-4, "n={n}");
            assert!(r.transfinite_estimate >= 1.0);
            prev = r.transfinite_estimate;
        }
    }

    #[test]
    fn deterministic() {
        let m = CompactSetModel::PolynomialPreimage {
            coeffs: vec![0.0, -3.0, 0.0, 1.0],
        };
        let cfg = FeketeConfig {
            candidate_count: 96,
            seed: 7,
            ..Default::default()
        };
        let a = fekete_points(&m, 7, &cfg).unwrap();
        let b = fekete_points(&m, 7, &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn derivative_checks() {
        let p = circle_fekete_polynomial(c(0.0, 0.0), 1.2, 5).unwrap();
        for chk in check_derivative_lower_bound(&p, 1.2) {
            assert!((chk.derivative - 10.368).abs() < 1e-12);
            assert!((chk.bound - 2.0736).abs() < 1e-12);
            assert!(chk.pass);
        }
        let t = crate::chebyshev::monic_chebyshev(9).unwrap();
        assert!(check_derivative_lower_bound(&t, 1.0)
            .iter()
            .all(|c| c.pass && c.bound == 1.0));
        let d = MonicPolynomial::from_real_roots(&[1.0, 1.0, -2.0]).unwrap();
        let chk = check_derivative_lower_bound(&d, 1.0);
        assert_eq!(chk[0].derivative, 0.0);
        assert!(!chk[0].pass && !chk[1].pass);
        for t in [1.1, 1.2, 1.5] {
            for n in 1..=40 {
                let p = circle_fekete_polynomial(c(0.0, 0.0), t, n).unwrap();
                assert!(
                    check_derivative_lower_bound(&p, t).iter().all(|c| c.pass),
                    "t={t} n={n}"
                );
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let oct: Vec<_> = (0..8)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 8.0))
            .collect();
        let (pts, e) = brute_force_fekete_oracle(&oct, 4).unwrap();
        assert!((e - 4.0 * LN_2).abs() < 1e-13);
        assert_eq!(pts.len(), 4);
        let line: Vec<_> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|&x| c(x, 0.0)).collect();
        let (pts, _) = brute_force_fekete_oracle(&line, 2).unwrap();
        assert_eq!(pts, vec![c(-2.0, 0.0), c(2.0, 0.0)]);
        let three = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)];
        let (pts, e) = brute_force_fekete_oracle(&three, 3).unwrap();
        assert_eq!(pts, three.to_vec());
        assert!((e - LN_2).abs() < 1e-15);
        let big: Vec<_> = (0..65).map(|i| c(i as f64, 0.0)).collect();
        assert!(matches!(
            brute_force_fekete_oracle(&big, 2),
            Err(Error::InstanceTooLarge { .. })
        ));
        assert!(matches!(
            brute_force_fekete_oracle(&line, 7),
            Err(Error::InstanceTooLarge { .. })
        ));
    }
}
