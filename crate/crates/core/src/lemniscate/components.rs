//! Connected components of `{|p| < level}` from the quadtree leaves.
//!
//! Inside and undecided leaves are merged by 4-adjacency (shared edge of
//! positive length). Every component of a lemniscate contains a zero, so a
//! cell group holding no root holds no part of the set and is dropped; a
//! group holding a single distinct root is exactly one component.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::quadtree::{subdivide, CellIndex, Grid, Leaf, Rect};
use super::AreaOptions;
use crate::error::Result;
use crate::polycore::MonicPolynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentInfo {
    /// Indices into the polynomial's root list.
    pub root_indices: Vec<usize>,
    pub diameter_upper: f64,
    /// The group is separated from all others by outside cells and holds a
    /// single distinct zero.
    pub certified_disjoint: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub component_count: usize,
    /// `(lower, upper)` on the true number of components.
    pub count_range: (usize, usize),
    /// Undecided cells join groups holding distinct zeros.
    pub budget_exhausted: bool,
    pub components: Vec<ComponentInfo>,
}

/// Leaves of one component group together with the grid they index.
#[derive(Debug, Clone)]
pub struct GroupCells {
    pub grid: Grid,
    pub groups: Vec<Vec<Leaf>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index becomes the representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Integer extent of a cell at the finest depth.
fn extent(c: &CellIndex, finest: u32) -> (i64, i64, i64, i64) {
    let s = 1i64 << (finest - c.depth);
    (c.i * s, (c.i + 1) * s, c.k * s, (c.k + 1) * s)
}

/// Joins leaves that share an edge of positive length: left/right
/// neighbours when `vertical` is false, bottom/top neighbours otherwise.
fn link_along(extents: &[(i64, i64, i64, i64)], vertical: bool, uf: &mut UnionFind) {
    let split = |e: &(i64, i64, i64, i64)| {
        let &(x0, x1, y0, y1) = e;
        if vertical {
            (y0, y1, x0, x1)
        } else {
            (x0, x1, y0, y1)
        }
    };
    // cells keyed by their low edge, each list sorted along the edge
    let mut by_low: HashMap<i64, Vec<(i64, i64, usize)>> = HashMap::new();
    for (idx, e) in extents.iter().enumerate() {
        let (low, _, a, b) = split(e);
        by_low.entry(low).or_default().push((a, b, idx));
    }
    for list in by_low.values_mut() {
        list.sort_unstable();
    }
    for (idx, e) in extents.iter().enumerate() {
        let (_, high, a, b) = split(e);
        let Some(list) = by_low.get(&high) else { continue };
        let first = list.partition_point(|&(_, end, _)| end <= a);
        for &(start, _, other) in &list[first..] {
            if start >= b {
                break;
            }
            uf.union(idx, other);
        }
    }
}

/// Components of `{|p| < level}` at the given depth budget.
pub fn components(p: &MonicPolynomial, options: &AreaOptions) -> Result<ComponentSummary> {
    components_with_cells(p, options).map(|(s, _)| s)
}

/// As [`components`], also returning the leaves of each reported component
/// in the same order.
pub fn components_with_cells(p: &MonicPolynomial, options: &AreaOptions) -> Result<(ComponentSummary, GroupCells)> {
    options.validate()?;
    let grid = Grid::new(p, options.level);
    let budget = options.budget(&grid);
    let tally = subdivide(&grid, &budget, true);
    let leaves = tally.leaves;
    let finest = leaves.iter().map(|l| l.cell.depth).max().unwrap_or(0);
    let extents: Vec<_> = leaves.iter().map(|l| extent(&l.cell, finest)).collect();

    let mut uf = UnionFind((0..leaves.len()).collect());
    link_along(&extents, false, &mut uf);
    link_along(&extents, true, &mut uf);

    // locate each root in a leaf
    let mut group_roots: HashMap<usize, Vec<usize>> = HashMap::new();
    for (ri, z) in grid.relative_roots().iter().enumerate() {
        let hit = leaves
            .iter()
            .position(|l| grid.relative_rect(l.cell).contains(*z))
            .expect("every root lies in a non-outside cell");
        let g = uf.find(hit);
        group_roots.entry(g).or_default().push(ri);
    }

    let mut reps: Vec<usize> = group_roots.keys().copied().collect();
    reps.sort_unstable();
    let mut group_leaves: HashMap<usize, Vec<Leaf>> = reps.iter().map(|&r| (r, Vec::new())).collect();
    for (idx, leaf) in leaves.iter().enumerate() {
        let g = uf.find(idx);
        if let Some(v) = group_leaves.get_mut(&g) {
            v.push(*leaf);
        }
    }

    let roots = p.roots();
    let mut infos = Vec::with_capacity(reps.len());
    let mut groups = Vec::with_capacity(reps.len());
    let mut upper_count = 0;
    for rep in &reps {
        let root_indices = group_roots[rep].clone();
        let mut distinct: Vec<_> = Vec::new();
        for &i in &root_indices {
            if !distinct.contains(&roots[i]) {
                distinct.push(roots[i]);
            }
        }
        upper_count += distinct.len();
        let cells = group_leaves.remove(rep).unwrap_or_default();
        let hull = cells
            .iter()
            .map(|l| grid.rect(l.cell))
            .reduce(|a: Rect, b| a.union(&b))
            .expect("group has at least one cell");
        infos.push(ComponentInfo {
            root_indices,
            diameter_upper: hull.diagonal(),
            certified_disjoint: distinct.len() == 1,
        });
        groups.push(cells);
    }
    let count = infos.len();
    let summary = ComponentSummary {
        component_count: count,
        count_range: (count, upper_count),
        budget_exhausted: upper_count > count,
        components: infos,
    };
    Ok((summary, GroupCells { grid, groups }))
}
