//! Certified areas and geometry of polynomial lemniscates `{|p| < level}`.

mod components;
mod containment;
mod montecarlo;
pub mod quadtree;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use components::{components, components_with_cells, ComponentInfo, ComponentSummary, GroupCells};
pub use containment::{containment_check, ContainmentVerdict, Disk, WitnessCell};
pub use montecarlo::{monte_carlo_area, MonteCarloEstimate};
pub use quadtree::{CellClass, CellIndex, Grid, Leaf, Rect};

use crate::error::{Error, Result};
use crate::polycore::{derivative_magnitude_at_root, ComplexPoint, MonicPolynomial};
use quadtree::{subdivide, Budget};

pub const DEFAULT_MAX_DEPTH: u32 = 14;
/// Default smallest cell side, relative to the bounding region's longer side.
pub const DEFAULT_MIN_CELL_FRACTION: f64 = 1.0 / (1u64 << 20) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaOptions {
    pub level: f64,
    pub max_depth: u32,
    /// Absolute smallest cell side; `None` uses the default fraction of the
    /// bounding region.
    pub min_cell: Option<f64>,
}

impl Default for AreaOptions {
    fn default() -> Self {
        Self {
            level: 1.0,
            max_depth: DEFAULT_MAX_DEPTH,
            min_cell: None,
        }
    }
}

impl AreaOptions {
    pub fn depth(max_depth: u32) -> Self {
        Self {
            max_depth,
            ..Default::default()
        }
    }

    pub fn at_level(level: f64, max_depth: u32) -> Self {
        Self {
            level,
            max_depth,
            min_cell: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.level > 0.0 && self.level.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "level must be positive, got {}",
                self.level
            )));
        }
        if self.max_depth == 0 || self.max_depth > 40 {
            return Err(Error::InvalidParameter(format!(
                "max_depth must lie in 1..=40, got {}",
                self.max_depth
            )));
        }
        if let Some(m) = self.min_cell {
            if !(m > 0.0) {
                return Err(Error::InvalidParameter("min_cell must be positive".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn budget(&self, grid: &Grid) -> Budget {
        let region = grid.bounding_region();
        let min_cell = self
            .min_cell
            .unwrap_or(DEFAULT_MIN_CELL_FRACTION * region.width().max(region.height()));
        Budget {
            max_depth: self.max_depth,
            min_cell,
        }
    }
}

/// Two-sided enclosure of `m({|p| < level})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaCertificate {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub max_depth: u32,
    pub min_cell: f64,
    pub cells_inside: u64,
    pub cells_outside: u64,
    pub cells_undecided: u64,
    /// Undecided mass remained when the depth budget ran out.
    pub budget_exhausted: bool,
    pub elapsed_ms: f64,
}

impl AreaCertificate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn brackets(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Smallest axis-aligned box containing the closed unit disks around the
/// roots; the lemniscate `{|p| < 1}` lies inside it.
pub fn bounding_region(p: &MonicPolynomial) -> Rect {
    bounding_region_at_level(p, 1.0)
}

/// As [`bounding_region`] for `{|p| < level}`, using disks of radius
/// `level^(1/n)`.
pub fn bounding_region_at_level(p: &MonicPolynomial, level: f64) -> Rect {
    let r = level.powf(1.0 / p.degree() as f64);
    let mut b = Rect {
        min: ComplexPoint::new(f64::INFINITY, f64::INFINITY),
        max: ComplexPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    };
    for z in p.roots() {
        b.min.re = b.min.re.min(z.re - r);
        b.min.im = b.min.im.min(z.im - r);
        b.max.re = b.max.re.max(z.re + r);
        b.max.im = b.max.im.max(z.im + r);
    }
    b
}

/// Certified lower and upper bounds on the area of `{|p| < level}`.
pub fn certified_area(p: &MonicPolynomial, options: &AreaOptions) -> Result<AreaCertificate> {
    certified_area_with_cells(p, options, false).map(|(c, _)| c)
}

/// Grid plus its non-outside leaves.
pub type CellDecomposition = (Grid, Vec<Leaf>);

/// Certificate plus the non-outside leaves of the decomposition (absolute
/// rectangles are recovered through the returned grid).
pub fn certified_area_with_cells(
    p: &MonicPolynomial,
    options: &AreaOptions,
    keep_leaves: bool,
) -> Result<(AreaCertificate, Option<CellDecomposition>)> {
    options.validate()?;
    let start = Instant::now();
    let grid = Grid::new(p, options.level);
    let budget = options.budget(&grid);
    let tally = subdivide(&grid, &budget, keep_leaves);
    let lower = tally.inside_area(&grid);
    let upper = lower + tally.undecided_area;
    let cert = AreaCertificate {
        lower,
        upper,
        level: options.level,
        max_depth: options.max_depth,
        min_cell: budget.min_cell,
        cells_inside: tally.cells_inside,
        cells_outside: tally.cells_outside,
        cells_undecided: tally.cells_undecided,
        budget_exhausted: tally.cells_undecided > 0,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let cells = keep_leaves.then_some((grid, tally.leaves));
    Ok((cert, cells))
}

/// Ball around the simple root `z_k` that contains its component of
/// `{|p| < 1}`, provided the component of `{|p| < r}` around it holds no
/// other zero: radius `r^2 / ((r - 1)^2 |p'(z_k)|)`.
pub fn component_ball_bound(p: &MonicPolynomial, k: usize, r: f64) -> Result<(ComplexPoint, f64)> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("r must exceed 1, got {r}")));
    }
    let d = derivative_magnitude_at_root(p, k)?;
    if d == 0.0 {
        return Err(Error::MultipleRoot(k));
    }
    Ok((p.roots()[k], r * r / ((r - 1.0) * (r - 1.0) * d)))
}

/// The ball `B(z_1, d^-n)` inside `{|p| < 1}` when
/// `d^-n (d + d^-n)^(n-1) < 1`; `None` while that inequality fails.
///
/// `d` must exceed 1 and bound the diameter of the root set.
pub fn inclusion_ball(p: &MonicPolynomial, d: f64) -> Result<Option<(ComplexPoint, f64)>> {
    if !(d > 1.0) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("d must exceed 1, got {d}")));
    }
    if d < p.root_diameter() {
        return Err(Error::InvalidParameter(format!(
            "d = {d} is smaller than the root diameter {}",
            p.root_diameter()
        )));
    }
    let n = p.degree() as f64;
    let log_radius = -n * d.ln();
    let radius = log_radius.exp();
    let log_check = log_radius + (n - 1.0) * (d + radius).ln();
    Ok((log_check < 0.0).then(|| (p.roots()[0], radius)))
}

/// `pi (inner_area / pi)^(1/d)`: area bound for the preimage of a set of
/// area `inner_area` under a monic polynomial of degree `d`.
pub fn crane_bound(inner_area: f64, d: u32) -> f64 {
    use std::f64::consts::PI;
    PI * (inner_area / PI).powf(1.0 / d as f64)
}
