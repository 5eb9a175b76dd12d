use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::split::two_tree_split;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Role};
use crate::spectra::rayleigh_quotient;

/// `H` with `|∂H| ≤ g+1` and `n/4 ≤ |H ∩ δG| ≤ n/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedSubset {
    pub h_set: Vec<usize>,
    pub boundary_edges: usize,
    pub boundary_vertices_inside: usize,
}

fn in_window(c: usize, n: usize) -> bool {
    4 * c >= n && 2 * c <= n
}

/// Vertices reachable from `start` in the spanning tree without crossing
/// edge `cut`.
fn branch(g: &MultiGraph, in_tree: &[bool], start: usize, cut: usize) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in g.incident(x) {
            if e != cut && in_tree[e] && !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Walks down the spanning tree left by the two-tree split. Every set
/// visited is a branch of that tree, so its edge boundary is one tree edge
/// plus some of the `g` removed cycle edges.
pub fn balanced_boundary_subset(g: &MultiGraph) -> Result<BalancedSubset> {
    g.require_connected()?;
    let n = g.boundary_count();
    if n <= 1 {
        return Err(Error::TooFewBoundary { found: n, needed: 2 });
    }
    let split = two_tree_split(g)?;
    let is_boundary: Vec<bool> = g.roles().iter().map(|r| *r == Role::Boundary).collect();
    let count = |set: &[bool]| (0..set.len()).filter(|&v| set[v] && is_boundary[v]).count();
    let finish = |set: Vec<bool>| {
        let h_set: Vec<usize> = (0..set.len()).filter(|&v| set[v]).collect();
        BalancedSubset {
            boundary_edges: g.edge_boundary(&set),
            boundary_vertices_inside: count(&set),
            h_set,
        }
    };

    let mut in_tree = vec![true; g.edge_count()];
    let (&tree_edge, cycle_edges) = split.removed_indices.split_last().expect("g+1 ≥ 1 edges");
    for &e in cycle_edges {
        in_tree[e] = false;
    }
    let (a, b) = g.edges()[tree_edge];
    let side_a = branch(g, &in_tree, a, tree_edge);
    let side_b = branch(g, &in_tree, b, tree_edge);
    let (ca, cb) = (count(&side_a), count(&side_b));
    if in_window(ca, n) {
        return Ok(finish(side_a));
    }
    if in_window(cb, n) {
        return Ok(finish(side_b));
    }

    // (current branch, its root, the tree edge joining it to the rest)
    let (mut set, mut root, mut parent_edge, mut c) =
        if ca > cb { (side_a, a, tree_edge, ca) } else { (side_b, b, tree_edge, cb) };
    while !in_window(c, n) {
        if 2 * c <= n {
            return Err(Error::Internal(format!("descent fell below the window: {c} of {n}")));
        }
        let mut best: Option<(usize, Vec<bool>, usize, usize)> = None;
        for &(child, e) in g.incident(root) {
            if e == parent_edge || !in_tree[e] || child == root {
                continue;
            }
            let sub = branch(g, &in_tree, child, e);
            let sc = count(&sub);
            if best.as_ref().is_none_or(|(bc, ..)| sc > *bc) {
                best = Some((sc, sub, child, e));
            }
        }
        let (sc, sub, child, e) =
            best.ok_or_else(|| Error::Internal("descent reached a leaf above the window".into()))?;
        set = sub;
        root = child;
        parent_edge = e;
        c = sc;
    }
    Ok(finish(set))
}

/// `f = 1 − c/n` on `H` and `−c/n` off it, `c = |H ∩ δG|`, together with
/// its exact Rayleigh quotient.
pub fn steklov_test_function(g: &MultiGraph, h: &BalancedSubset) -> Result<(Vec<BigRational>, BigRational)> {
    let n = g.boundary_count();
    if n == 0 {
        return Err(Error::TooFewBoundary { found: 0, needed: 1 });
    }
    let frac = BigRational::new(BigInt::from(h.boundary_vertices_inside), BigInt::from(n));
    let mut inside = vec![false; g.vertex_count()];
    for &v in &h.h_set {
        *inside.get_mut(v).ok_or_else(|| Error::InvalidArgument(format!("vertex {v} out of range")))? =
            true;
    }
    let f: Vec<BigRational> = inside
        .iter()
        .map(|&i| if i { BigRational::one() - &frac } else { BigRational::zero() - &frac })
        .collect();
    let r = rayleigh_quotient(g, &f)?;
    Ok((f, r))
}
