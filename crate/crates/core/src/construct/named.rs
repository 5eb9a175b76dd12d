//! Small named cubic graphs, all vertices interior.

use crate::graph::MultiGraph;

fn cubic(nv: usize, edges: Vec<(usize, usize)>) -> MultiGraph {
    MultiGraph::with_counts(nv, 0, edges).expect("named graph is well formed")
}

/// Two vertices joined by three parallel edges.
pub fn theta_graph() -> MultiGraph {
    cubic(2, vec![(0, 1); 3])
}

pub fn k4() -> MultiGraph {
    cubic(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> MultiGraph {
    cubic(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect())
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    cubic(10, edges)
}

/// 14-cycle with chords `i ~ i+5` from even vertices.
pub fn heawood() -> MultiGraph {
    let mut edges: Vec<(usize, usize)> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    for i in (0..14).step_by(2) {
        edges.push((i, (i + 5) % 14));
    }
    cubic(14, edges)
}
