//! Rothe diagram geometry: the diagram itself, its essential set, the
//! dominant component, the accessible box and the pivots used by transition.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A cell in matrix coordinates, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Strictly north and strictly west of `other`.
    pub fn strictly_northwest_of(&self, other: &Cell) -> bool {
        self.row < other.row && self.col < other.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The Rothe diagram `D(w) = {(i,j) : j < w(i), i < w^{-1}(j)}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Diagram {
    owner: Permutation,
    // row-major n x n occupancy
    grid: Vec<bool>,
    len: usize,
}

/// Everything transition needs to know about a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramAnalysis {
    /// Essential cells in row-major order.
    pub essential: Vec<Cell>,
    /// The edge-connected component of `(1,1)`, empty when `(1,1)` is not a box.
    pub dominant: Vec<Cell>,
    /// Only set for non-vexillary owners.
    pub accessible: Option<Cell>,
    /// Graph dots `(i, w(i))` maximally southeast among those strictly
    /// northwest of the accessible box, ordered by row.
    pub pivots: Vec<Cell>,
}

impl DiagramAnalysis {
    /// Fulton's criterion applied to the essential set: vexillary iff no
    /// essential cell lies strictly northwest of another.
    pub fn essential_set_vexillary(&self) -> bool {
        vexillary_by_essential_set(&self.essential)
    }
}

pub fn rothe_diagram(w: &Permutation) -> Diagram {
    Diagram::new(w)
}

impl Diagram {
    pub fn new(w: &Permutation) -> Self {
        let n = w.size();
        let inv = w.inverse();
        let mut grid = vec![false; n * n];
        let mut len = 0;
        for i in 1..=n {
            for j in 1..w.at(i) {
                if i < inv.at(j) {
                    grid[(i - 1) * n + (j - 1)] = true;
                    len += 1;
                }
            }
        }
        Diagram {
            owner: w.clone(),
            grid,
            len,
        }
    }

    pub fn owner(&self) -> &Permutation {
        &self.owner
    }

    pub fn size(&self) -> usize {
        self.owner.size()
    }

    /// Number of boxes; equals the length of the owner.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        let n = self.size();
        (1..=n).contains(&row) && (1..=n).contains(&col) && self.grid[(row - 1) * n + (col - 1)]
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = Cell> + '_ {
        let n = self.size();
        self.grid
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(idx, _)| Cell::new(idx / n + 1, idx % n + 1))
    }

    pub fn essential_set(&self) -> Vec<Cell> {
        self.boxes()
            .filter(|c| !self.contains(c.row + 1, c.col) && !self.contains(c.row, c.col + 1))
            .collect()
    }

    pub fn dominant_component(&self) -> Vec<Cell> {
        if !self.contains(1, 1) {
            return Vec::new();
        }
        let n = self.size();
        let mut seen = vec![false; n * n];
        let mut queue = VecDeque::from([Cell::new(1, 1)]);
        seen[0] = true;
        let mut component = Vec::new();
        while let Some(c) = queue.pop_front() {
            component.push(c);
            let neighbours = [
                (c.row.wrapping_sub(1), c.col),
                (c.row + 1, c.col),
                (c.row, c.col.wrapping_sub(1)),
                (c.row, c.col + 1),
            ];
            for (r, k) in neighbours {
                if self.contains(r, k) && !seen[(r - 1) * n + (k - 1)] {
                    seen[(r - 1) * n + (k - 1)] = true;
                    queue.push_back(Cell::new(r, k));
                }
            }
        }
        component.sort();
        component
    }

    /// Computes the essential set, dominant component, accessible box and
    /// pivots.
    ///
    /// The accessible box is the southmost, then eastmost, essential cell
    /// outside the dominant component. It is reported only when the owner is
    /// not vexillary (by Fulton's criterion), since that is the only case in
    /// which transition uses it.
    pub fn analyze(&self) -> Result<DiagramAnalysis> {
        let essential = self.essential_set();
        let dominant = self.dominant_component();
        if vexillary_by_essential_set(&essential) {
            return Ok(DiagramAnalysis {
                essential,
                dominant,
                accessible: None,
                pivots: Vec::new(),
            });
        }
        let accessible = essential
            .iter()
            .filter(|c| dominant.binary_search(c).is_err())
            .max_by_key(|c| (c.row, c.col))
            .copied()
            .ok_or_else(|| {
                Error::Internal(format!(
                    "non-vexillary {} has no essential box outside the dominant component",
                    self.owner
                ))
            })?;
        let pivots = pivots_for(&self.owner, accessible);
        if pivots.is_empty() {
            return Err(Error::Internal(format!(
                "accessible box {accessible} of {} has no pivot",
                self.owner
            )));
        }
        Ok(DiagramAnalysis {
            essential,
            dominant,
            accessible: Some(accessible),
            pivots,
        })
    }

    /// ASCII rendering: `O` for graph dots, `#` for diagram boxes, `.` otherwise.
    pub fn render(&self) -> String {
        let n = self.size();
        let mut out = String::with_capacity(n * (n + 1));
        for i in 1..=n {
            for j in 1..=n {
                out.push(if self.owner.at(i) == j {
                    'O'
                } else if self.contains(i, j) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram of {}:\n{}", self.owner, self.render())
    }
}

fn vexillary_by_essential_set(essential: &[Cell]) -> bool {
    !essential
        .iter()
        .any(|a| essential.iter().any(|b| a.strictly_northwest_of(b)))
}

/// Dots `(i, w(i))` strictly northwest of `corner` with no other such dot
/// weakly southeast of them.
fn pivots_for(w: &Permutation, corner: Cell) -> Vec<Cell> {
    let candidates: Vec<Cell> = (1..corner.row)
        .map(|i| Cell::new(i, w.at(i)))
        .filter(|d| d.col < corner.col)
        .collect();
    candidates
        .iter()
        .filter(|d| {
            !candidates
                .iter()
                .any(|e| e != *d && e.row >= d.row && e.col >= d.col)
        })
        .copied()
        .collect()
}
