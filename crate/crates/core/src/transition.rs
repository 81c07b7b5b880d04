//! The transition tree `T(w)`: every non-vexillary node branches at its
//! accessible box, leaves are vexillary, and summing `f^{shape}` over the
//! leaves counts reduced words.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tableaux::{hook_count, Partition};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Work bound and parallelism for tree walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeOptions {
    /// Maximum number of tree nodes visited before giving up.
    pub node_cap: u64,
    /// Depth below which subtrees are expanded in parallel (0 = sequential).
    pub parallel_depth: usize,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            node_cap: DEFAULT_NODE_CAP,
            parallel_depth: 0,
        }
    }
}

impl TreeOptions {
    pub fn with_cap(node_cap: u64) -> Self {
        TreeOptions {
            node_cap,
            ..TreeOptions::default()
        }
    }
}

/// A materialized node of `T(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionNode {
    pub perm: Permutation,
    pub children: Vec<TransitionNode>,
}

impl TransitionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(TransitionNode::node_count).sum::<usize>()
    }

    /// Leaves in depth-first, left-to-right order (with multiplicity).
    pub fn leaves(&self) -> Vec<&Permutation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if node.is_leaf() {
                out.push(&node.perm);
            } else {
                stack.extend(node.children.iter().rev());
            }
        }
        out
    }
}

/// The partition `lambda(v)` attached to a vexillary leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VexShape {
    pub partition: Partition,
}

/// Children of a non-vexillary `w` in `T(w)`.
///
/// With accessible box `(r, c)` and `k = w^{-1}(c)`, set `w' = w t_{r,k}`;
/// the children are the `w' t_{i,r}` for `i < r` with the same length as
/// `w`, in increasing order of `i`. They correspond one-to-one to the pivots.
pub fn children(w: &Permutation) -> Result<Vec<Permutation>> {
    let analysis = Diagram::new(w).analyze()?;
    let Some(corner) = analysis.accessible else {
        return Err(Error::contract(format!("{w} is vexillary and has no children")));
    };
    let k = w.inverse().at(corner.col);
    let lowered = w.swapped(corner.row, k);
    let r = corner.row;
    let top = lowered.at(r);
    let kids: Vec<Permutation> = (1..r)
        .filter(|&i| {
            let v = lowered.at(i);
            v < top
                && !(i + 1..r).any(|j| {
                    let x = lowered.at(j);
                    v < x && x < top
                })
        })
        .map(|i| lowered.swapped(i, r))
        .collect();
    if kids.len() != analysis.pivots.len() {
        return Err(Error::Internal(format!(
            "{w}: {} covering transpositions but {} pivots",
            kids.len(),
            analysis.pivots.len()
        )));
    }
    Ok(kids)
}

/// Children of `w`, or `None` when `w` is vexillary (a leaf).
pub fn expand(w: &Permutation) -> Result<Option<Vec<Permutation>>> {
    if w.is_vexillary() {
        Ok(None)
    } else {
        children(w).map(Some)
    }
}

pub fn vex_shape(v: &Permutation) -> Result<VexShape> {
    if !v.is_vexillary() {
        return Err(Error::contract(format!("{v} is not vexillary")));
    }
    Ok(VexShape {
        partition: shape_of_code(v),
    })
}

/// Decreasing rearrangement of the Lehmer code.
pub(crate) fn shape_of_code(v: &Permutation) -> Partition {
    Partition::from_unsorted(v.lehmer_code().entries().to_vec())
}

/// Materializes `T(w)`.
pub fn build_tree(w: &Permutation, node_cap: u64) -> Result<TransitionNode> {
    let mut expanded = 0u64;
    build_node(w.clone(), node_cap, &mut expanded)
}

fn build_node(perm: Permutation, cap: u64, expanded: &mut u64) -> Result<TransitionNode> {
    *expanded += 1;
    if *expanded > cap {
        return Err(node_cap_error(*expanded, cap));
    }
    let children = match expand(&perm)? {
        None => Vec::new(),
        Some(kids) => kids
            .into_iter()
            .map(|kid| build_node(kid, cap, expanded))
            .collect::<Result<_>>()?,
    };
    Ok(TransitionNode { perm, children })
}

fn node_cap_error(reached: u64, cap: u64) -> Error {
    Error::ResourceLimit {
        what: "transition tree nodes",
        reached,
        cap,
    }
}

/// Depth-first walk over `T(w)` with an explicit stack, calling `on_leaf`
/// for each vexillary leaf. Returns the number of nodes visited.
pub fn for_each_leaf(
    w: &Permutation,
    node_cap: u64,
    mut on_leaf: impl FnMut(&Permutation),
) -> Result<u64> {
    let mut visited = 0u64;
    let mut stack = vec![w.clone()];
    while let Some(u) = stack.pop() {
        visited += 1;
        if visited > node_cap {
            return Err(node_cap_error(visited, node_cap));
        }
        match expand(&u)? {
            None => on_leaf(&u),
            Some(kids) => stack.extend(kids.into_iter().rev()),
        }
    }
    Ok(visited)
}

/// `EG(w)`: the number of leaves of `T(w)`, with multiplicity.
pub fn eg_statistic(w: &Permutation, node_cap: u64) -> Result<u64> {
    let mut leaves = 0u64;
    for_each_leaf(w, node_cap, |_| leaves += 1)?;
    Ok(leaves)
}

/// `#Red(w)` as the sum of `f^{lambda(v)}` over the leaves of `T(w)`.
pub fn count_red_exact(w: &Permutation) -> Result<BigUint> {
    count_red_with(w, TreeOptions::default())
}

pub fn count_red_with(w: &Permutation, opts: TreeOptions) -> Result<BigUint> {
    let visited = AtomicU64::new(0);
    let shapes = tally_shapes(w.clone(), 0, opts, &visited)?;
    let mut total = BigUint::zero();
    for (shape, mult) in shapes {
        total += hook_count(&shape) * BigUint::from(mult);
    }
    Ok(total)
}

/// Leaf shapes of `T(w)` with multiplicities.
pub fn leaf_shapes(w: &Permutation, opts: TreeOptions) -> Result<HashMap<Partition, u64>> {
    let visited = AtomicU64::new(0);
    tally_shapes(w.clone(), 0, opts, &visited)
}

fn tally_shapes(
    root: Permutation,
    depth: usize,
    opts: TreeOptions,
    visited: &AtomicU64,
) -> Result<HashMap<Partition, u64>> {
    if depth < opts.parallel_depth {
        let seen = visited.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > opts.node_cap {
            return Err(node_cap_error(seen, opts.node_cap));
        }
        return match expand(&root)? {
            None => Ok(HashMap::from([(shape_of_code(&root), 1)])),
            Some(kids) => {
                let parts: Vec<HashMap<Partition, u64>> = kids
                    .into_par_iter()
                    .map(|kid| tally_shapes(kid, depth + 1, opts, visited))
                    .collect::<Result<_>>()?;
                let mut merged = HashMap::new();
                for part in parts {
                    for (shape, mult) in part {
                        *merged.entry(shape).or_insert(0) += mult;
                    }
                }
                Ok(merged)
            }
        };
    }
    let mut tally = HashMap::new();
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        let seen = visited.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > opts.node_cap {
            return Err(node_cap_error(seen, opts.node_cap));
        }
        match expand(&u)? {
            None => *tally.entry(shape_of_code(&u)).or_insert(0) += 1,
            Some(kids) => stack.extend(kids.into_iter().rev()),
        }
    }
    Ok(tally)
}

/// `Q(w)`: the minimum, over root-to-leaf paths, of the number of nodes on
/// the path with at least two children.
pub fn min_branch_depth(w: &Permutation, node_cap: u64) -> Result<u32> {
    struct Frame {
        kids: Vec<Permutation>,
        next: usize,
        best: u32,
    }
    let Some(kids) = expand(w)? else {
        return Ok(0);
    };
    let mut visited = 1u64;
    let mut stack = vec![Frame {
        kids,
        next: 0,
        best: u32::MAX,
    }];
    loop {
        let top = stack.last_mut().expect("stack is never empty here");
        if top.next < top.kids.len() {
            let kid = top.kids[top.next].clone();
            top.next += 1;
            visited += 1;
            if visited > node_cap {
                return Err(node_cap_error(visited, node_cap));
            }
            match expand(&kid)? {
                None => top.best = 0,
                Some(kids) => stack.push(Frame {
                    kids,
                    next: 0,
                    best: u32::MAX,
                }),
            }
        } else {
            let done = stack.pop().expect("non-empty");
            let value = done.best + u32::from(done.kids.len() >= 2);
            match stack.last_mut() {
                None => return Ok(value),
                Some(parent) => parent.best = parent.best.min(value),
            }
        }
    }
}
