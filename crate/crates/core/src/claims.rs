//! Named, parameterised verifications of the quantitative statements about
//! minimal lemniscate areas.
//!
//! Every inequality is decided from certified enclosures only: a check
//! passes when the certified side of the bracket satisfies it, fails when the
//! opposite side already violates it, and is otherwise left undecided, which
//! makes the whole claim inconclusive. Monte Carlo values appear only as
//! agreement diagnostics.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::capacity::{capacity, epsilon_for_capacity, membership, CompactSetModel};
use crate::chebyshev::{cosine_identity_residual, inverse_derivative_square_sum, monic_chebyshev};
use crate::error::{Error, Result};
use crate::fekete::{check_derivative_lower_bound, circle_fekete_polynomial};
use crate::json::{format_f64, to_json_line};
use crate::lemniscate::{
    certified_area, component_ball_bound, components, components_with_cells, containment_check, crane_bound,
    monte_carlo_area, AreaCertificate, AreaOptions, CellClass, Disk,
};
use crate::polycore::{compose_with_chebyshev, ComplexPoint, MonicPolynomial};
use crate::roots::FiberSolveConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Inconclusive => "inconclusive",
        }
    }
}

/// One certified area in a claim's table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaRow {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub cells_inside: u64,
    pub cells_undecided: u64,
    pub elapsed_ms: f64,
}

impl AreaRow {
    fn new(n: usize, c: &AreaCertificate) -> Self {
        Self {
            n,
            lower: c.lower,
            upper: c.upper,
            cells_inside: c.cells_inside,
            cells_undecided: c.cells_undecided,
            elapsed_ms: c.elapsed_ms,
        }
    }
}

pub const CSV_HEADER: &str = "n,lower,upper,cells_inside,cells_undecided,elapsed_ms";

/// CSV with [`CSV_HEADER`] columns.
pub fn rows_to_csv(rows: &[AreaRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            format_f64(r.lower),
            format_f64(r.upper),
            r.cells_inside,
            r.cells_undecided,
            format_f64(r.elapsed_ms)
        ));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub status: ClaimStatus,
    pub numbers: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<AreaRow>,
    pub artifacts: Vec<String>,
}

impl ClaimResult {
    /// Zeroes wall-clock fields so reruns serialize identically.
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.table {
            r.elapsed_ms = 0.0;
        }
        self
    }
}

/// Parameters of one claim run; the tag is the claim id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum ClaimParams {
    #[serde(rename = "example_2_1")]
    Example21 {
        j: f64,
        t: f64,
        l_max: usize,
        depth: u32,
    },
    MainTheoremDecay {
        t: f64,
        n_min: usize,
        n_max: usize,
        depth: u32,
    },
    ChebyshevIdentities {
        n_max: usize,
    },
    ChebyshevAreaSandwich {
        n_list: Vec<usize>,
        depth: u32,
        mc_samples: u64,
        seed: u64,
    },
    LemmaBall {
        n_list: Vec<usize>,
        r: f64,
        depth: u32,
    },
    CraneComposition {
        a: f64,
        n_list: Vec<usize>,
        depth: u32,
    },
    IntervalRate {
        n_list: Vec<usize>,
        depth: u32,
    },
    DiskNonDecay {
        n_list: Vec<usize>,
        contrast_radius: f64,
        contrast_n: Vec<usize>,
        depth: u32,
    },
}

pub const CLAIM_IDS: [&str; 8] = [
    "example_2_1",
    "main_theorem_decay",
    "chebyshev_identities",
    "chebyshev_area_sandwich",
    "lemma_ball",
    "crane_composition",
    "interval_rate",
    "disk_non_decay",
];

const POWERS_OF_TWO: [usize; 5] = [2, 4, 8, 16, 32];

impl ClaimParams {
    pub fn claim_id(&self) -> &'static str {
        match self {
            ClaimParams::Example21 { .. } => CLAIM_IDS[0],
            ClaimParams::MainTheoremDecay { .. } => CLAIM_IDS[1],
            ClaimParams::ChebyshevIdentities { .. } => CLAIM_IDS[2],
            ClaimParams::ChebyshevAreaSandwich { .. } => CLAIM_IDS[3],
            ClaimParams::LemmaBall { .. } => CLAIM_IDS[4],
            ClaimParams::CraneComposition { .. } => CLAIM_IDS[5],
            ClaimParams::IntervalRate { .. } => CLAIM_IDS[6],
            ClaimParams::DiskNonDecay { .. } => CLAIM_IDS[7],
        }
    }

    /// Default parameters for a registered claim id.
    pub fn defaults(claim_id: &str) -> Option<Self> {
        Some(match claim_id {
            "example_2_1" => ClaimParams::Example21 {
                j: 4.0,
                t: 0.5,
                l_max: 4,
                depth: 10,
            },
            "main_theorem_decay" => ClaimParams::MainTheoremDecay {
                t: 1.2,
                n_min: 2,
                n_max: 16,
                depth: 12,
            },
            "chebyshev_identities" => ClaimParams::ChebyshevIdentities { n_max: 256 },
            "chebyshev_area_sandwich" => ClaimParams::ChebyshevAreaSandwich {
                n_list: POWERS_OF_TWO.to_vec(),
                depth: 12,
                mc_samples: 1_000_000,
                seed: 0,
            },
            "lemma_ball" => ClaimParams::LemmaBall {
                n_list: vec![2, 3, 4],
                r: 1.5,
                depth: 10,
            },
            "crane_composition" => ClaimParams::CraneComposition {
                a: 4.0,
                n_list: vec![2, 4, 8],
                depth: 12,
            },
            "interval_rate" => ClaimParams::IntervalRate {
                n_list: POWERS_OF_TWO.to_vec(),
                depth: 12,
            },
            "disk_non_decay" => ClaimParams::DiskNonDecay {
                n_list: vec![2, 4, 8, 16],
                contrast_radius: 1.2,
                contrast_n: (6..=16).collect(),
                depth: 11,
            },
            _ => return None,
        })
    }

    /// Replaces the quadtree depth of claims that certify areas.
    pub fn with_depth(mut self, d: u32) -> Self {
        match &mut self {
            ClaimParams::Example21 { depth, .. }
            | ClaimParams::MainTheoremDecay { depth, .. }
            | ClaimParams::ChebyshevAreaSandwich { depth, .. }
            | ClaimParams::LemmaBall { depth, .. }
            | ClaimParams::CraneComposition { depth, .. }
            | ClaimParams::IntervalRate { depth, .. }
            | ClaimParams::DiskNonDecay { depth, .. } => *depth = d,
            ClaimParams::ChebyshevIdentities { .. } => {}
        }
        self
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON parameters.
    pub fn params_hash(&self) -> String {
        let canonical = to_json_line(self).expect("parameters serialize");
        hex::encode(&Sha256::digest(canonical.as_bytes())[..8])
    }
}

/// Running verdict over a claim's checks.
#[derive(Default)]
struct Verdict {
    violated: bool,
    undecided: bool,
}

impl Verdict {
    /// A check evaluated exactly (no certificate involved).
    fn require(&mut self, ok: bool) -> bool {
        self.violated |= !ok;
        ok
    }

    /// `holds`: certified true; `refuted`: certified false.
    fn certified(&mut self, holds: bool, refuted: bool) -> bool {
        if !holds {
            if refuted {
                self.violated = true;
            } else {
                self.undecided = true;
            }
        }
        holds
    }

    fn area_at_most(&mut self, c: &AreaCertificate, bound: f64) -> bool {
        self.certified(c.upper <= bound, c.lower > bound)
    }

    fn area_at_least(&mut self, c: &AreaCertificate, bound: f64) -> bool {
        self.certified(c.lower >= bound, c.upper < bound)
    }

    fn status(&self) -> ClaimStatus {
        if self.violated {
            ClaimStatus::Fail
        } else if self.undecided {
            ClaimStatus::Inconclusive
        } else {
            ClaimStatus::Pass
        }
    }
}

struct Builder {
    id: &'static str,
    verdict: Verdict,
    numbers: BTreeMap<String, f64>,
    table: Vec<AreaRow>,
}

impl Builder {
    fn new(id: &'static str) -> Self {
        Self {
            id,
            verdict: Verdict::default(),
            numbers: BTreeMap::new(),
            table: Vec::new(),
        }
    }

    fn num(&mut self, key: impl Into<String>, v: f64) {
        self.numbers.insert(key.into(), v);
    }

    fn flag(&mut self, key: impl Into<String>, v: bool) {
        self.num(key, if v { 1.0 } else { 0.0 });
    }

    fn finish(self) -> ClaimResult {
        ClaimResult {
            claim_id: self.id.to_string(),
            status: self.verdict.status(),
            numbers: self.numbers,
            table: self.table,
            artifacts: Vec::new(),
        }
    }
}

fn check_list(n_list: &[usize], min: usize) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidParameter("n_list must not be empty".into()));
    }
    if let Some(n) = n_list.iter().find(|&&n| n < min) {
        return Err(Error::InvalidParameter(format!("n = {n} is below the minimum {min}")));
    }
    Ok(())
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `(z - j)^l (z + j)^l` for even `n = 2l`, with one extra factor `z - j`
/// for odd `n = 2l + 1`.
pub fn example_polynomial(j: f64, n: usize) -> Result<MonicPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let l = n / 2;
    let roots: Vec<f64> = std::iter::repeat_n(j, n - l)
        .chain(std::iter::repeat_n(-j, l))
        .collect();
    MonicPolynomial::from_real_roots(&roots)
}

pub fn verify_example_2_1(j: f64, t: f64, l_max: usize, depth: u32) -> Result<ClaimResult> {
    if !(j >= 2.0) || !(t > 0.0 && t < 1.0) || l_max == 0 {
        return Err(Error::InvalidParameter("need j >= 2, 0 < t < 1, l_max >= 1".into()));
    }
    let mut b = Builder::new(CLAIM_IDS[0]);
    let eps = epsilon_for_capacity(j, t)?;
    let cap = capacity(&CompactSetModel::SymmetricIntervalPair { p: j, q: j + eps }).value;
    b.num("epsilon", eps);
    b.num("capacity", cap);
    b.num("capacity_error", (cap - t).abs());
    b.verdict.require((cap - t).abs() <= 1e-12);

    let bound = 2.0 * PI / j;
    b.num("area_bound", bound);
    let radius = 1.0 / j.sqrt();
    let disks = [
        Disk {
            center: ComplexPoint::new(-j, 0.0),
            radius,
        },
        Disk {
            center: ComplexPoint::new(j, 0.0),
            radius,
        },
    ];
    let opts = AreaOptions::depth(depth);
    let mut max_upper: f64 = 0.0;
    for l in 1..=l_max {
        for n in [2 * l, 2 * l + 1] {
            let p = example_polynomial(j, n)?;
            let v = containment_check(&p, &disks, &opts)?;
            b.verdict.certified(v.certified, v.refuted);
            b.flag(format!("contained_n{n}"), v.certified);
            let c = certified_area(&p, &opts)?;
            b.verdict.area_at_most(&c, bound);
            max_upper = max_upper.max(c.upper);
            b.table.push(AreaRow::new(n, &c));
        }
    }
    b.num("max_upper", max_upper);
    Ok(b.finish())
}

pub fn verify_main_theorem_decay(t: f64, n_min: usize, n_max: usize, depth: u32) -> Result<ClaimResult> {
    if !(t > 1.0) || !t.is_finite() || n_min < 2 || n_max <= n_min {
        return Err(Error::InvalidParameter("need t > 1 and n_max > n_min >= 2".into()));
    }
    let mut b = Builder::new(CLAIM_IDS[1]);
    let opts = AreaOptions::depth(depth);
    let origin = ComplexPoint::new(0.0, 0.0);
    let mut certs = Vec::new();
    for n in n_min..=n_max {
        let p = circle_fekete_polynomial(origin, t, n)?;
        let derivative_ok = check_derivative_lower_bound(&p, t).iter().all(|c| c.pass);
        b.verdict.require(derivative_ok);
        b.flag(format!("derivative_check_n{n}"), derivative_ok);
        let c = certified_area(&p, &opts)?;
        b.table.push(AreaRow::new(n, &c));
        certs.push((n, c));
    }

    let mut decreasing = true;
    for w in certs.windows(2) {
        let (prev, next) = (&w[0].1, &w[1].1);
        decreasing &= b.verdict.certified(next.upper < prev.upper, next.lower >= prev.upper);
    }
    b.flag("strictly_decreasing", decreasing);

    // skip the preasymptotic bend
    let fit: Vec<_> = certs.iter().filter(|(n, _)| *n >= n_min.max(4)).collect();
    let fit = if fit.len() >= 2 { fit } else { certs.iter().collect() };
    let xs: Vec<f64> = fit.iter().map(|(n, _)| *n as f64).collect();
    let ys: Vec<f64> = fit.iter().map(|(_, c)| c.upper.ln()).collect();
    let slope = ols_slope(&xs, &ys);
    b.verdict.certified(slope < 0.0, false);
    b.num("slope", slope);
    b.num("rho_hat", -slope);
    b.num("predicted_slope", -2.0 * t.ln());
    b.num("fit_n_min", xs[0]);
    Ok(b.finish())
}

pub fn verify_chebyshev_identities(n_max: usize) -> Result<ClaimResult> {
    if n_max < 2 {
        return Err(Error::InvalidParameter("n_max must be >= 2".into()));
    }
    let mut b = Builder::new(CLAIM_IDS[2]);
    let mut max_sum_error: f64 = 0.0;
    let mut max_cos_ratio: f64 = 0.0;
    for n in 2..=n_max {
        let err = (inverse_derivative_square_sum(n) - 1.0 / (2.0 * n as f64)).abs();
        max_sum_error = max_sum_error.max(err);
        b.verdict.require(err <= 1e-12);
        let r = cosine_identity_residual(n).abs();
        max_cos_ratio = max_cos_ratio.max(r / n as f64);
        b.verdict.require(r <= 1e-11 * n as f64);
    }
    b.num("max_inverse_square_error", max_sum_error);
    b.num("max_cosine_residual_over_n", max_cos_ratio);
    b.num("inverse_square_sum_n2", inverse_derivative_square_sum(2));
    b.num("inverse_square_sum_n1", inverse_derivative_square_sum(1));
    b.num("cosine_residual_n1", cosine_identity_residual(1));
    Ok(b.finish())
}

pub fn verify_chebyshev_area_sandwich(n_list: &[usize], depth: u32, mc_samples: u64, seed: u64) -> Result<ClaimResult> {
    check_list(n_list, 1)?;
    let mut b = Builder::new(CLAIM_IDS[3]);
    let opts = AreaOptions::depth(depth);
    for &n in n_list {
        let p = monic_chebyshev(n)?;
        let c = certified_area(&p, &opts)?;
        let nf = n as f64;
        let up = b.verdict.area_at_most(&c, 81.0 * PI / (2.0 * nf));
        let lo = b.verdict.area_at_least(&c, PI / (32.0 * nf));
        b.flag(format!("sandwich_n{n}"), up && lo);
        if n == 4 && mc_samples > 0 {
            let mc = monte_carlo_area(&p, 1.0, mc_samples, seed)?;
            b.num("mc_estimate_n4", mc.estimate);
            b.num("mc_half_width_n4", mc.half_width);
            b.flag("mc_agrees_n4", mc.overlaps(c.lower, c.upper, 1.0));
        }
        b.table.push(AreaRow::new(n, &c));
    }
    Ok(b.finish())
}

pub fn verify_lemma_ball(n_list: &[usize], r: f64, depth: u32) -> Result<ClaimResult> {
    check_list(n_list, 1)?;
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("r must exceed 1, got {r}")));
    }
    let mut b = Builder::new(CLAIM_IDS[4]);
    for &n in n_list {
        let p = monic_chebyshev(n)?;
        // hypothesis: every component of {|p| < r} holds a single zero
        let outer = components(&p, &AreaOptions::at_level(r, depth))?;
        let separated = outer.count_range == (n, n) && outer.components.iter().all(|c| c.certified_disjoint);
        b.flag(format!("separated_n{n}"), separated);
        if !b.verdict.certified(separated, false) {
            continue;
        }
        let (summary, cells) = components_with_cells(&p, &AreaOptions::depth(depth))?;
        let mut worst: f64 = 0.0;
        let mut inside = 0u64;
        for (info, leaves) in summary.components.iter().zip(&cells.groups) {
            let k = info.root_indices[0];
            let (center, radius) = component_ball_bound(&p, k, r)?;
            for leaf in leaves.iter().filter(|l| l.class == CellClass::Inside) {
                inside += 1;
                worst = worst.max(cells.grid.rect(leaf.cell).farthest_distance(center) / radius);
            }
        }
        b.verdict.certified(worst <= 1.0, worst > 1.0);
        b.num(format!("max_distance_over_radius_n{n}"), worst);
        b.num(format!("inside_cells_n{n}"), inside as f64);
        b.num(format!("ball_radius_scale_n{n}"), r * r / ((r - 1.0) * (r - 1.0)));
    }
    Ok(b.finish())
}

pub fn verify_crane_composition(a: f64, n_list: &[usize], depth: u32) -> Result<ClaimResult> {
    check_list(n_list, 1)?;
    if !(a > 2.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("a must exceed 2, got {a}")));
    }
    let mut b = Builder::new(CLAIM_IDS[5]);
    let q = [
        ComplexPoint::new(-a, 0.0),
        ComplexPoint::new(0.0, 0.0),
        ComplexPoint::new(1.0, 0.0),
    ];
    let set = CompactSetModel::SymmetricIntervalPair {
        p: (a - 2.0).sqrt(),
        q: (a + 2.0).sqrt(),
    };
    b.num("set_capacity", capacity(&set).value);
    let opts = AreaOptions::depth(depth);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &n in n_list {
        let inner = certified_area(&monic_chebyshev(n)?, &opts)?;
        let composed = compose_with_chebyshev(n, &q, &FiberSolveConfig::default())?;
        let in_set = composed.roots().iter().all(|&z| membership(&set, z, 1e-9));
        b.verdict.require(in_set);
        b.flag(format!("roots_in_set_n{n}"), in_set);
        let c = certified_area(&composed, &opts)?;
        let bound = crane_bound(inner.upper, 2);
        b.verdict
            .certified(c.upper <= bound, c.lower > crane_bound(inner.lower, 2));
        b.num(format!("crane_bound_n{n}"), bound);
        let x = (n as f64).powf(-0.5);
        sxy += x * c.upper;
        sxx += x * x;
        b.table.push(AreaRow::new(2 * n, &c));
    }
    b.num("fitted_c", sxy / sxx);
    Ok(b.finish())
}

pub fn verify_interval_rate(n_list: &[usize], depth: u32) -> Result<ClaimResult> {
    check_list(n_list, 1)?;
    let mut b = Builder::new(CLAIM_IDS[6]);
    let opts = AreaOptions::depth(depth);
    let mut certs = BTreeMap::new();
    let mut c1_hat: f64 = 0.0;
    let mut min_scaled_lower = f64::INFINITY;
    for &n in n_list {
        let c = certified_area(&monic_chebyshev(n)?, &opts)?;
        let nf = n as f64;
        b.verdict.area_at_most(&c, 81.0 * PI / (2.0 * nf));
        b.verdict.area_at_least(&c, PI / (32.0 * nf));
        c1_hat = c1_hat.max(nf * c.upper);
        min_scaled_lower = min_scaled_lower.min(nf * c.lower);
        b.table.push(AreaRow::new(n, &c));
        certs.insert(n, c);
    }
    b.num("c1_hat", c1_hat);
    b.num("min_n_times_lower", min_scaled_lower);
    for (&n, small) in &certs {
        if let Some(big) = certs.get(&(2 * n)) {
            // enclosure of the true ratio
            let hi = if small.lower > 0.0 {
                big.upper / small.lower
            } else {
                f64::INFINITY
            };
            let lo = big.lower / small.upper;
            b.verdict.certified(lo >= 0.3 && hi <= 0.8, hi < 0.3 || lo > 0.8);
            b.num(format!("ratio_{}_{n}", 2 * n), big.upper / small.upper);
        }
    }
    Ok(b.finish())
}

pub fn verify_disk_non_decay(
    n_list: &[usize],
    contrast_radius: f64,
    contrast_n: &[usize],
    depth: u32,
) -> Result<ClaimResult> {
    check_list(n_list, 1)?;
    if !(contrast_radius > 1.0) {
        return Err(Error::InvalidParameter("contrast radius must exceed 1".into()));
    }
    let mut b = Builder::new(CLAIM_IDS[7]);
    let opts = AreaOptions::depth(depth);
    let origin = ComplexPoint::new(0.0, 0.0);
    let mut min_lower = f64::INFINITY;
    for &n in n_list {
        let c = certified_area(&circle_fekete_polynomial(origin, 1.0, n)?, &opts)?;
        b.verdict.area_at_least(&c, 0.5);
        min_lower = min_lower.min(c.lower);
        b.table.push(AreaRow::new(n, &c));
    }
    b.num("min_lower", min_lower);
    let mut max_contrast: f64 = 0.0;
    for &n in contrast_n {
        let c = certified_area(&circle_fekete_polynomial(origin, contrast_radius, n)?, &opts)?;
        b.verdict.certified(c.upper < 0.5, c.lower >= 0.5);
        max_contrast = max_contrast.max(c.upper);
        b.num(format!("contrast_upper_n{n}"), c.upper);
    }
    if !contrast_n.is_empty() {
        b.num("contrast_max_upper", max_contrast);
    }
    Ok(b.finish())
}

pub fn run(params: &ClaimParams) -> Result<ClaimResult> {
    match params {
        &ClaimParams::Example21 { j, t, l_max, depth } => verify_example_2_1(j, t, l_max, depth),
        &ClaimParams::MainTheoremDecay { t, n_min, n_max, depth } => verify_main_theorem_decay(t, n_min, n_max, depth),
        &ClaimParams::ChebyshevIdentities { n_max } => verify_chebyshev_identities(n_max),
        ClaimParams::ChebyshevAreaSandwich {
            n_list,
            depth,
            mc_samples,
            seed,
        } => verify_chebyshev_area_sandwich(n_list, *depth, *mc_samples, *seed),
        ClaimParams::LemmaBall { n_list, r, depth } => verify_lemma_ball(n_list, *r, *depth),
        ClaimParams::CraneComposition { a, n_list, depth } => verify_crane_composition(*a, n_list, *depth),
        ClaimParams::IntervalRate { n_list, depth } => verify_interval_rate(n_list, *depth),
        ClaimParams::DiskNonDecay {
            n_list,
            contrast_radius,
            contrast_n,
            depth,
        } => verify_disk_non_decay(n_list, *contrast_radius, contrast_n, *depth),
    }
}

/// Writes `claims/<claim_id>/<params-hash>.json` (and `.csv` when the claim
/// has a table) under `out`, recording the paths in `artifacts`.
pub fn write_artifacts(result: &ClaimResult, params: &ClaimParams, out: &Path) -> Result<ClaimResult> {
    let dir = out.join("claims").join(params.claim_id());
    fs::create_dir_all(&dir)?;
    let hash = params.params_hash();
    let mut result = result.clone();
    let rel = |ext: &str| format!("claims/{}/{hash}.{ext}", params.claim_id());
    if !result.table.is_empty() {
        fs::write(dir.join(format!("{hash}.csv")), rows_to_csv(&result.table))?;
        result.artifacts.push(rel("csv"));
    }
    result.artifacts.push(rel("json"));
    fs::write(dir.join(format!("{hash}.json")), to_json_line(&result)?)?;
    Ok(result)
}
