//! Adaptive quadtree over the sublevel set `{|p| < level}`.
//!
//! The grid is anchored at the root centroid with base cells of side
//! `R = level^(1/n)`: outside the union of the disks `B(z_j, R)` every factor
//! exceeds `R`, so `|p| >= level` there. Only base cells meeting that union
//! are visited, which seeds refinement locally around each root.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polycore::{eval_bounds_on_disk, ComplexPoint, MonicPolynomial};

/// Closed axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: ComplexPoint,
    pub max: ComplexPoint,
}

impl Rect {
    pub fn width(&self) -> f64 {
        self.max.re - self.min.re
    }

    pub fn height(&self) -> f64 {
        self.max.im - self.min.im
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn intersection_area(&self, other: &Rect) -> f64 {
        let w = self.max.re.min(other.max.re) - self.min.re.max(other.min.re);
        let h = self.max.im.min(other.max.im) - self.min.im.max(other.min.im);
        if w <= 0.0 || h <= 0.0 {
            0.0
        } else {
            w * h
        }
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.min.re <= z.re && z.re <= self.max.re && self.min.im <= z.im && z.im <= self.max.im
    }

    /// Euclidean distance from the rectangle to `z` (0 inside).
    pub fn distance_to(&self, z: ComplexPoint) -> f64 {
        let dx = (self.min.re - z.re).max(0.0).max(z.re - self.max.re);
        let dy = (self.min.im - z.im).max(0.0).max(z.im - self.max.im);
        dx.hypot(dy)
    }

    /// Largest distance from `z` to a point of the rectangle.
    pub fn farthest_distance(&self, z: ComplexPoint) -> f64 {
        let dx = (z.re - self.min.re).abs().max((self.max.re - z.re).abs());
        let dy = (z.im - self.min.im).abs().max((self.max.im - z.im).abs());
        dx.hypot(dy)
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            min: ComplexPoint::new(self.min.re.min(other.min.re), self.min.im.min(other.min.im)),
            max: ComplexPoint::new(self.max.re.max(other.max.re), self.max.im.max(other.max.im)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellClass {
    Inside,
    Outside,
    Undecided,
}

/// Square cell `[i h, (i+1) h] x [k h, (k+1) h]` relative to the grid origin,
/// with `h = base_side / 2^depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellIndex {
    pub depth: u32,
    pub i: i64,
    pub k: i64,
}

impl CellIndex {
    pub fn children(&self) -> [CellIndex; 4] {
        let (d, i, k) = (self.depth + 1, 2 * self.i, 2 * self.k);
        [
            CellIndex { depth: d, i, k },
            CellIndex { depth: d, i: i + 1, k },
            CellIndex { depth: d, i, k: k + 1 },
            CellIndex {
                depth: d,
                i: i + 1,
                k: k + 1,
            },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    pub cell: CellIndex,
    pub class: CellClass,
}

/// Subdivision grid and per-cell classifier for one polynomial and level.
#[derive(Debug, Clone)]
pub struct Grid {
    /// Roots relative to `origin`.
    relative: MonicPolynomial,
    pub origin: ComplexPoint,
    pub base_side: f64,
    /// Radius of the root disks whose union contains the sublevel set.
    pub root_radius: f64,
    log_level_lo: f64,
    log_level_hi: f64,
    /// Bounding region in relative coordinates.
    relative_box: Rect,
}

impl Grid {
    pub fn new(p: &MonicPolynomial, level: f64) -> Self {
        assert!(level > 0.0 && level.is_finite(), "level must be positive");
        let origin = p.centroid();
        let relative = p.translate(-origin);
        let n = p.degree() as f64;
        let root_radius = level.powf(1.0 / n) * (1.0 + 1e-12);
        let log_level = level.ln();
        let pad = 4.0 * f64::EPSILON * log_level.abs();
        let relative_box = disk_union_box(relative.roots(), root_radius);
        Self {
            relative,
            origin,
            base_side: root_radius,
            root_radius,
            log_level_lo: log_level - pad,
            log_level_hi: log_level + pad,
            relative_box,
        }
    }

    pub fn side(&self, depth: u32) -> f64 {
        self.base_side / (1u64 << depth) as f64
    }

    /// Cell rectangle in relative coordinates.
    pub fn relative_rect(&self, c: CellIndex) -> Rect {
        let h = self.side(c.depth);
        Rect {
            min: ComplexPoint::new(c.i as f64 * h, c.k as f64 * h),
            max: ComplexPoint::new((c.i + 1) as f64 * h, (c.k + 1) as f64 * h),
        }
    }

    /// Cell rectangle in absolute coordinates.
    pub fn rect(&self, c: CellIndex) -> Rect {
        let r = self.relative_rect(c);
        Rect {
            min: r.min + self.origin,
            max: r.max + self.origin,
        }
    }

    pub fn bounding_region(&self) -> Rect {
        Rect {
            min: self.relative_box.min + self.origin,
            max: self.relative_box.max + self.origin,
        }
    }

    pub fn relative_box(&self) -> Rect {
        self.relative_box
    }

    pub fn relative_roots(&self) -> &[ComplexPoint] {
        self.relative.roots()
    }

    /// Base cells whose interior meets some open root disk, in index order.
    pub fn base_cells(&self) -> Vec<CellIndex> {
        let h = self.base_side;
        let r = self.root_radius;
        let mut cells = std::collections::BTreeSet::new();
        for z in self.relative.roots() {
            let i0 = ((z.re - r) / h).floor() as i64;
            let i1 = ((z.re + r) / h).floor() as i64;
            let k0 = ((z.im - r) / h).floor() as i64;
            let k1 = ((z.im + r) / h).floor() as i64;
            for i in i0..=i1 {
                for k in k0..=k1 {
                    let c = CellIndex { depth: 0, i, k };
                    if self.relative_rect(c).distance_to(*z) < r {
                        cells.insert((k, i));
                    }
                }
            }
        }
        cells.into_iter().map(|(k, i)| CellIndex { depth: 0, i, k }).collect()
    }

    pub fn classify(&self, c: CellIndex) -> CellClass {
        let rect = self.relative_rect(c);
        if self
            .relative
            .roots()
            .iter()
            .all(|z| rect.distance_to(*z) >= self.root_radius)
        {
            return CellClass::Outside;
        }
        let h = self.side(c.depth);
        let center = ComplexPoint::new((c.i as f64 + 0.5) * h, (c.k as f64 + 0.5) * h);
        let radius = h * std::f64::consts::FRAC_1_SQRT_2 * (1.0 + 4.0 * f64::EPSILON);
        let b = eval_bounds_on_disk(&self.relative, center, radius);
        if b.log_upper < self.log_level_lo {
            CellClass::Inside
        } else if b.log_lower >= self.log_level_hi {
            CellClass::Outside
        } else {
            CellClass::Undecided
        }
    }

    /// Area of the cell clipped to the bounding region.
    pub fn clipped_area(&self, c: CellIndex) -> f64 {
        self.relative_rect(c).intersection_area(&self.relative_box)
    }
}

fn disk_union_box(roots: &[ComplexPoint], radius: f64) -> Rect {
    let mut b = Rect {
        min: ComplexPoint::new(f64::INFINITY, f64::INFINITY),
        max: ComplexPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    };
    for z in roots {
        b.min.re = b.min.re.min(z.re - radius);
        b.min.im = b.min.im.min(z.im - radius);
        b.max.re = b.max.re.max(z.re + radius);
        b.max.im = b.max.im.max(z.im + radius);
    }
    b
}

/// Stopping rule shared by every subdivision walk.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_depth: u32,
    pub min_cell: f64,
}

impl Budget {
    pub fn may_split(&self, grid: &Grid, c: CellIndex) -> bool {
        c.depth < self.max_depth && grid.side(c.depth + 1) >= self.min_cell
    }
}

#[derive(Debug, Clone, Default)]
pub struct Tally {
    /// Inside leaves per depth.
    pub inside_by_depth: Vec<u64>,
    pub cells_inside: u64,
    pub cells_outside: u64,
    pub cells_undecided: u64,
    pub undecided_area: f64,
    pub max_depth_reached: u32,
    pub leaves: Vec<Leaf>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        if self.inside_by_depth.len() < other.inside_by_depth.len() {
            self.inside_by_depth.resize(other.inside_by_depth.len(), 0);
        }
        for (a, b) in self.inside_by_depth.iter_mut().zip(&other.inside_by_depth) {
            *a += b;
        }
        self.cells_inside += other.cells_inside;
        self.cells_outside += other.cells_outside;
        self.cells_undecided += other.cells_undecided;
        self.undecided_area += other.undecided_area;
        self.max_depth_reached = self.max_depth_reached.max(other.max_depth_reached);
        self.leaves.extend(other.leaves);
    }

    pub fn inside_area(&self, grid: &Grid) -> f64 {
        self.inside_by_depth
            .iter()
            .enumerate()
            .map(|(d, &count)| {
                let h = grid.side(d as u32);
                count as f64 * h * h
            })
            // an empty f64 sum is -0.0
            .fold(0.0, |a, b| a + b)
    }
}

fn walk(grid: &Grid, budget: &Budget, c: CellIndex, keep_leaves: bool, tally: &mut Tally) {
    let class = grid.classify(c);
    if class == CellClass::Undecided && budget.may_split(grid, c) {
        for child in c.children() {
            walk(grid, budget, child, keep_leaves, tally);
        }
        return;
    }
    tally.max_depth_reached = tally.max_depth_reached.max(c.depth);
    match class {
        CellClass::Inside => {
            let d = c.depth as usize;
            if tally.inside_by_depth.len() <= d {
                tally.inside_by_depth.resize(d + 1, 0);
            }
            tally.inside_by_depth[d] += 1;
            tally.cells_inside += 1;
        }
        CellClass::Outside => tally.cells_outside += 1,
        CellClass::Undecided => {
            tally.cells_undecided += 1;
            tally.undecided_area += grid.clipped_area(c);
        }
    }
    if keep_leaves && class != CellClass::Outside {
        tally.leaves.push(Leaf { cell: c, class });
    }
}

/// Full subdivision; base cells are processed in parallel and merged in
/// index order, so the result does not depend on scheduling.
pub fn subdivide(grid: &Grid, budget: &Budget, keep_leaves: bool) -> Tally {
    let parts: Vec<Tally> = grid
        .base_cells()
        .par_iter()
        .map(|&c| {
            let mut t = Tally::default();
            walk(grid, budget, c, keep_leaves, &mut t);
            t
        })
        .collect();
    let mut total = Tally::default();
    for t in parts {
        total.merge(t);
    }
    total
}
