use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cycle_rank, MultiGraph};

/// `g + 1` removed edges leaving two trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSplit {
    /// In removal order: the `g` cycle edges, then the tree edge.
    pub removed_edges: Vec<(usize, usize)>,
    /// Indices into `g.edges()`, same order.
    pub removed_indices: Vec<usize>,
    /// The side containing the smaller endpoint of the last removed edge.
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

/// Edge indices ordered by endpoints, then by index among parallel copies.
pub(crate) fn lexicographic_edges(g: &MultiGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| (g.edges()[e], e));
    order
}

/// Removes the lexicographically smallest edge lying on a cycle until the
/// graph is a spanning tree, then its smallest edge.
pub fn two_tree_split(g: &MultiGraph) -> Result<TreeSplit> {
    g.require_connected()?;
    if g.edge_count() == 0 {
        return Err(Error::InvalidArgument("a single vertex cannot be split".into()));
    }
    let order = lexicographic_edges(g);
    let mut removed = vec![false; g.edge_count()];
    let mut removed_indices = Vec::new();
    for _ in 0..cycle_rank(g) {
        let e = order
            .iter()
            .copied()
            .find(|&e| {
                if removed[e] {
                    return false;
                }
                removed[e] = true;
                let still_connected = g.component_labels_without(Some(&removed)).1 == 1;
                removed[e] = false;
                still_connected
            })
            .ok_or_else(|| Error::Internal("no cycle edge found below the cycle rank".into()))?;
        removed[e] = true;
        removed_indices.push(e);
    }
    let last = order
        .iter()
        .copied()
        .find(|&e| !removed[e])
        .ok_or_else(|| Error::Internal("spanning tree has no edges".into()))?;
    removed[last] = true;
    removed_indices.push(last);

    let (label, count) = g.component_labels_without(Some(&removed));
    if count != 2 {
        return Err(Error::Internal(format!("split produced {count} components")));
    }
    let anchor = label[g.edges()[last].0];
    let (side_a, side_b) = (0..g.vertex_count()).partition(|&v| label[v] == anchor);
    Ok(TreeSplit {
        removed_edges: removed_indices.iter().map(|&e| g.edges()[e]).collect(),
        removed_indices,
        side_a,
        side_b,
    })
}
