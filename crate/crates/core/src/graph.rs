//! Half-edge pairings, the multigraphs they glue into, and topological
//! invariants.
//!
//! Labelling scheme: interior vertex `v_i` (1-based) owns half-edges
//! `3i-2, 3i-1, 3i`; boundary vertex `w_j` owns half-edge `3χ + j`.
//! Vertex indices are 0-based with all interior vertices first.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Checks `χ ≥ 1` and that `3χ − n` is a non-negative even integer.
pub fn check_parameters(chi: usize, n: usize) -> Result<()> {
    if chi == 0 || n > 3 * chi || (3 * chi - n) % 2 != 0 {
        return Err(Error::Parity { chi, n });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Interior,
    Boundary,
}

/// A good partition of the half-edge labels `1..=3χ+n`.
///
/// Pairs are stored normalized (`a < b`) and sorted, so two pairings
/// describing the same partition compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfEdgePairing {
    chi: usize,
    n: usize,
    pairs: Vec<(u32, u32)>,
}

impl HalfEdgePairing {
    pub fn new(chi: usize, n: usize, pairs: Vec<(u32, u32)>) -> Result<Self> {
        if !validate_partition(chi, n, &pairs)? {
            return Err(Error::InvalidPartition(format!(
                "pairs do not form a good partition for chi={chi}, n={n}"
            )));
        }
        Ok(Self::from_pairs_unchecked(chi, n, pairs))
    }

    /// Caller guarantees validity.
    pub(crate) fn from_pairs_unchecked(chi: usize, n: usize, mut pairs: Vec<(u32, u32)>) -> Self {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        Self { chi, n, pairs }
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn label_count(&self) -> usize {
        3 * self.chi + self.n
    }

    /// Vertex index owning a 1-based half-edge label.
    pub fn owner(&self, label: u32) -> usize {
        owner(self.chi, label)
    }
}

#[inline]
pub(crate) fn owner(chi: usize, label: u32) -> usize {
    let l = label as usize;
    if l <= 3 * chi {
        (l - 1) / 3
    } else {
        chi + (l - 3 * chi - 1)
    }
}

/// True iff `pairs` is a fixed-point-free involution on `1..=3χ+n` in which
/// every pair contains an interior label.
pub fn validate_partition(chi: usize, n: usize, pairs: &[(u32, u32)]) -> Result<bool> {
    check_parameters(chi, n)?;
    let total = 3 * chi + n;
    if pairs.len() * 2 != total {
        return Ok(false);
    }
    let mut seen = vec![false; total + 1];
    for &(a, b) in pairs {
        let (a, b) = (a as usize, b as usize);
        if a == b || a == 0 || b == 0 || a > total || b > total {
            return Ok(false);
        }
        if seen[a] || seen[b] {
            return Ok(false);
        }
        seen[a] = true;
        seen[b] = true;
        if a.min(b) > 3 * chi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Undirected multigraph with role-tagged vertices. Loops and parallel
/// edges are allowed; a loop contributes 2 to its vertex's degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    roles: Vec<Role>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    rank: Vec<usize>,
}

impl MultiGraph {
    /// Edges are stored with `u <= v`.
    pub fn new(roles: Vec<Role>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let nv = roles.len();
        let mut degrees = vec![0; nv];
        let mut adjacency = vec![Vec::new(); nv];
        let mut normalized = Vec::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= nv || v >= nv {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) references a vertex outside 0..{nv}"
                )));
            }
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            normalized.push((u, v));
            degrees[u] += 1;
            degrees[v] += 1;
            adjacency[u].push((v, idx));
            if u != v {
                adjacency[v].push((u, idx));
            }
        }
        let mut counters = [0usize; 2];
        let rank = roles
            .iter()
            .map(|r| {
                let c = &mut counters[*r as usize];
                *c += 1;
                *c - 1
            })
            .collect();
        Ok(Self {
            roles,
            edges: normalized,
            degrees,
            adjacency,
            rank,
        })
    }

    /// `chi` interior vertices followed by `n` boundary vertices.
    pub fn with_counts(chi: usize, n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut roles = vec![Role::Interior; chi];
        roles.resize(chi + n, Role::Boundary);
        Self::new(roles, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `(neighbor, edge index)` per incident edge; a loop appears once.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn interior_count(&self) -> usize {
        self.roles.iter().filter(|r| **r == Role::Interior).count()
    }

    pub fn boundary_count(&self) -> usize {
        self.vertex_count() - self.interior_count()
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.roles[v] == Role::Boundary)
            .collect()
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.roles[v] == Role::Interior)
            .collect()
    }

    /// Display name: `v<k>` for the k-th interior vertex, `w<k>` for the
    /// k-th boundary vertex (1-based, in index order).
    pub fn name(&self, v: usize) -> String {
        match self.roles[v] {
            Role::Interior => format!("v{}", self.rank[v] + 1),
            Role::Boundary => format!("w{}", self.rank[v] + 1),
        }
    }

    /// Interior vertices precede boundary ones.
    pub fn is_canonical(&self) -> bool {
        self.roles.windows(2).all(|w| w[0] <= w[1])
    }

    /// Stable reorder placing interior vertices first. Returns the new
    /// graph and `old index -> new index`.
    pub fn canonicalize(&self) -> (MultiGraph, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.vertex_count()).collect();
        order.sort_by_key(|&v| self.roles[v]);
        let mut map = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let roles = order.iter().map(|&v| self.roles[v]).collect();
        let edges = self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
        let g = MultiGraph::new(roles, edges).expect("relabelling preserves validity");
        (g, map)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.component_labels().1 == 1
    }

    /// Component label per vertex and the component count, ignoring the
    /// edges flagged in `skip`.
    pub(crate) fn component_labels_without(&self, skip: Option<&[bool]>) -> (Vec<usize>, usize) {
        let nv = self.vertex_count();
        let mut label = vec![usize::MAX; nv];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..nv {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in &self.adjacency[x] {
                    if skip.is_some_and(|s| s[e]) {
                        continue;
                    }
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub(crate) fn component_labels(&self) -> (Vec<usize>, usize) {
        self.component_labels_without(None)
    }

    /// Number of edges with exactly one endpoint in `inside`. Loops never
    /// count; parallel edges count with multiplicity.
    pub fn edge_boundary(&self, inside: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] != inside[v])
            .count()
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::to_text(self))
    }
}

/// Glues each pair of half-edges into an edge.
pub fn build_graph(p: &HalfEdgePairing) -> MultiGraph {
    let edges = p
        .pairs
        .iter()
        .map(|&(a, b)| (p.owner(a), p.owner(b)))
        .collect();
    MultiGraph::with_counts(p.chi, p.n, edges).expect("owners are in range")
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
pub fn connected_components(g: &MultiGraph) -> Vec<Vec<usize>> {
    let (label, count) = g.component_labels();
    let mut comps = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        comps[c].push(v);
    }
    comps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub components: usize,
    pub euler_char: i64,
    pub genus: i64,
}

/// Components, `|V| − |E|`, and the genus `(χ − n)/2 + 1`. Interior
/// vertices must have degree 3 and boundary vertices degree 1.
pub fn topology(g: &MultiGraph) -> Result<Topology> {
    for v in 0..g.vertex_count() {
        let expected = match g.role(v) {
            Role::Interior => 3,
            Role::Boundary => 1,
        };
        if g.degree(v) != expected {
            return Err(Error::Degree {
                vertex: v,
                degree: g.degree(v),
                expected: if expected == 3 { "3" } else { "1" },
            });
        }
    }
    let chi = g.interior_count() as i64;
    let n = g.boundary_count() as i64;
    let (_, components) = g.component_labels();
    Ok(Topology {
        components,
        euler_char: g.vertex_count() as i64 - g.edge_count() as i64,
        genus: (chi - n) / 2 + 1,
    })
}

/// `|E| − |V| + c`, the number of independent cycles.
pub fn cycle_rank(g: &MultiGraph) -> usize {
    let (_, c) = g.component_labels();
    g.edge_count() + c - g.vertex_count()
}
