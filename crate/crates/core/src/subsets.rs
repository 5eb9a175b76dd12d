//! Enumeration of connected vertex subsets over `u128` bitmasks.
//!
//! Each connected set is produced exactly once, rooted at its smallest
//! vertex, by extending with exclusive neighbours of the newest vertex only
//! (the ESU scheme).

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Role};

pub(crate) const MAX_VERTICES: usize = 128;

pub(crate) type Mask = u128;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u128 << v
}

pub(crate) fn mask_to_vec(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

/// Snapshot handed to the visitor for every connected subset.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Subset {
    pub mask: Mask,
    pub size: usize,
    /// `|∂Ω|`
    pub cut: usize,
    pub boundary_members: usize,
}

impl Subset {
    pub fn interior_members(&self) -> usize {
        self.size - self.boundary_members
    }
}

pub(crate) enum Step {
    Descend,
    Prune,
}

/// Precomputed adjacency data for mask arithmetic.
pub(crate) struct SubsetContext {
    nv: usize,
    neighbours: Vec<Mask>,
    /// `(neighbour, multiplicity)` excluding loops.
    weighted: Vec<Vec<(usize, usize)>>,
    /// Degree without loop contributions.
    outer_degree: Vec<usize>,
    boundary: Mask,
}

impl SubsetContext {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        let nv = g.vertex_count();
        if nv > MAX_VERTICES {
            return Err(Error::GuardExceeded {
                what: "subset enumeration vertex count",
                size: nv as u128,
                guard: MAX_VERTICES as u128,
            });
        }
        let mut neighbours = vec![0; nv];
        let mut weighted: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        let mut outer_degree = vec![0; nv];
        for &(u, v) in g.edges() {
            if u == v {
                continue;
            }
            neighbours[u] |= bit(v);
            neighbours[v] |= bit(u);
            outer_degree[u] += 1;
            outer_degree[v] += 1;
            for (a, b) in [(u, v), (v, u)] {
                match weighted[a].iter_mut().find(|(x, _)| *x == b) {
                    Some(entry) => entry.1 += 1,
                    None => weighted[a].push((b, 1)),
                }
            }
        }
        let boundary = (0..nv)
            .filter(|&v| g.role(v) == Role::Boundary)
            .fold(0, |m, v| m | bit(v));
        Ok(Self { nv, neighbours, weighted, outer_degree, boundary })
    }

    #[cfg(test)]
    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    pub fn all(&self) -> Mask {
        if self.nv == MAX_VERTICES {
            Mask::MAX
        } else {
            bit(self.nv) - 1
        }
    }

    /// Whether the vertices of `m` induce a connected subgraph.
    pub fn is_connected(&self, m: Mask) -> bool {
        if m == 0 {
            return false;
        }
        let mut reached = m & m.wrapping_neg();
        loop {
            let mut grow = reached;
            let mut frontier = reached;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grow |= self.neighbours[v] & m;
            }
            if grow == reached {
                return reached == m;
            }
            reached = grow;
        }
    }

    fn add(&self, s: &Subset, w: usize) -> Subset {
        let inner: usize = self.weighted[w]
            .iter()
            .filter(|(u, _)| s.mask & bit(*u) != 0)
            .map(|(_, k)| k)
            .sum();
        Subset {
            mask: s.mask | bit(w),
            size: s.size + 1,
            cut: s.cut + self.outer_degree[w] - 2 * inner,
            boundary_members: s.boundary_members + (self.boundary & bit(w) != 0) as usize,
        }
    }

    /// Visits every connected subset whose smallest vertex is `root` and
    /// whose size is at most `max_size`.
    pub fn for_each_rooted<F>(&self, root: usize, max_size: usize, visit: &mut F)
    where
        F: FnMut(&Subset) -> Step,
    {
        if max_size == 0 {
            return;
        }
        let above = !((bit(root) << 1) - 1);
        let start = Subset {
            mask: bit(root),
            size: 1,
            cut: self.outer_degree[root],
            boundary_members: (self.boundary & bit(root) != 0) as usize,
        };
        let closed = bit(root) | self.neighbours[root];
        let ext = self.neighbours[root] & above;
        self.extend(&start, ext, closed, above, max_size, visit);
    }

    fn extend<F>(&self, s: &Subset, ext: Mask, closed: Mask, above: Mask, max_size: usize, visit: &mut F)
    where
        F: FnMut(&Subset) -> Step,
    {
        if let Step::Prune = visit(s) {
            return;
        }
        if s.size == max_size {
            return;
        }
        let mut ext = ext;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let next = self.add(s, w);
            let exclusive = self.neighbours[w] & !closed & above;
            self.extend(
                &next,
                ext | exclusive,
                closed | self.neighbours[w],
                above,
                max_size,
                visit,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_connected(ctx: &SubsetContext, max_size: usize) -> HashSet<Mask> {
        (1..(1u128 << ctx.vertex_count()))
            .filter(|&m| m.count_ones() as usize <= max_size && ctx.is_connected(m))
            .collect()
    }

    #[test]
    fn enumerates_each_connected_subset_once() {
        // K4 with a pendant path, a loop and a double edge
        let g = MultiGraph::with_counts(
            6,
            1,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 5), (5, 5), (5, 6)],
        )
        .unwrap();
        let ctx = SubsetContext::new(&g).unwrap();
        for max in [1, 3, 7] {
            let mut seen = Vec::new();
            for r in 0..g.vertex_count() {
                ctx.for_each_rooted(r, max, &mut |s| {
                    let inside: Vec<bool> = (0..g.vertex_count()).map(|v| s.mask & bit(v) != 0).collect();
                    assert_eq!(s.cut, g.edge_boundary(&inside));
                    assert_eq!(s.size, s.mask.count_ones() as usize);
                    seen.push(s.mask);
                    Step::Descend
                });
            }
            let set: HashSet<Mask> = seen.iter().copied().collect();
            assert_eq!(set.len(), seen.len());
            assert_eq!(set, brute_connected(&ctx, max));
        }
    }
}
