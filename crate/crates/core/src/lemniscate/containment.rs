//! Certificates that `{|p| < level}` lies inside a union of open disks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadtree::{CellClass, CellIndex, Grid, Rect};
use super::AreaOptions;
use crate::error::{Error, Result};
use crate::polycore::{ComplexPoint, MonicPolynomial};

/// Open disk `B(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: ComplexPoint,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessCell {
    pub center: ComplexPoint,
    /// Circumscribed radius of the square cell.
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentVerdict {
    pub certified: bool,
    /// A cell certified inside the lemniscate lies outside every disk.
    pub refuted: bool,
    pub witness: Option<WitnessCell>,
}

enum Outcome {
    Resolved,
    Unresolved(CellIndex),
    Refuted(CellIndex),
}

fn strictly_inside(rect: &Rect, disk: &Disk) -> bool {
    rect.farthest_distance(disk.center) < disk.radius
}

fn check(grid: &Grid, disks: &[Disk], max_depth: u32, c: CellIndex) -> Outcome {
    let rect = grid.rect(c);
    if disks.iter().any(|d| strictly_inside(&rect, d)) {
        return Outcome::Resolved;
    }
    let class = grid.classify(c);
    if class == CellClass::Outside {
        return Outcome::Resolved;
    }
    if class == CellClass::Inside && disks.iter().all(|d| rect.distance_to(d.center) >= d.radius) {
        return Outcome::Refuted(c);
    }
    if c.depth >= max_depth {
        return Outcome::Unresolved(c);
    }
    let mut first_unresolved = None;
    for child in c.children() {
        match check(grid, disks, max_depth, child) {
            Outcome::Resolved => {}
            Outcome::Refuted(w) => return Outcome::Refuted(w),
            Outcome::Unresolved(w) => {
                first_unresolved.get_or_insert(w);
            }
        }
    }
    first_unresolved.map_or(Outcome::Resolved, Outcome::Unresolved)
}

/// Tries to certify `{|p| < level} ⊂ ⋃ disks`.
///
/// Cells straddling a disk boundary are refined up to `max_depth`. The
/// verdict is certified only when every cell meeting the complement of the
/// disks is certified outside; a cell certified inside the lemniscate yet
/// disjoint from all disks refutes the containment.
pub fn containment_check(p: &MonicPolynomial, disks: &[Disk], options: &AreaOptions) -> Result<ContainmentVerdict> {
    options.validate()?;
    if disks.iter().any(|d| !(d.radius > 0.0)) {
        return Err(Error::InvalidParameter("disk radius must be positive".into()));
    }
    let grid = Grid::new(p, options.level);
    let outcomes: Vec<Outcome> = grid
        .base_cells()
        .par_iter()
        .map(|&c| check(&grid, disks, options.max_depth, c))
        .collect();
    let witness_of = |c: CellIndex| {
        let r = grid.rect(c);
        WitnessCell {
            center: (r.min + r.max) / 2.0,
            radius: r.diagonal() / 2.0,
        }
    };
    if let Some(c) = outcomes.iter().find_map(|o| match o {
        Outcome::Refuted(c) => Some(*c),
        _ => None,
    }) {
        return Ok(ContainmentVerdict {
            certified: false,
            refuted: true,
            witness: Some(witness_of(c)),
        });
    }
    let unresolved = outcomes.iter().find_map(|o| match o {
        Outcome::Unresolved(c) => Some(*c),
        _ => None,
    });
    Ok(ContainmentVerdict {
        certified: unresolved.is_none(),
        refuted: false,
        witness: unresolved.map(witness_of),
    })
}
