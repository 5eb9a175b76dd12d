use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Role};

/// The tree `T_k`: path `v_0 ~ v_1 ~ … ~ v_k` with a pendant `w_i` on each
/// `v_i`, `1 ≤ i ≤ k−1`. Vertex `i ≤ k` is `v_i`, vertex `k + i` is `w_i`.
/// `v_0 … v_{k−1}` are tagged interior since they have degree 3 once planted.
pub fn build_tk(k: usize) -> Result<MultiGraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("T_k needs k ≥ 1".into()));
    }
    let mut roles = vec![Role::Interior; k];
    roles.resize(2 * k, Role::Boundary);
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
    edges.extend((1..k).map(|i| (i, k + i)));
    MultiGraph::new(roles, edges)
}

/// Replaces every edge `u_1 ~ u_2` of a cubic graph by a copy of `T_k`
/// whose root `v_0` is joined to both `u_1` and `u_2`.
///
/// Layout: the original vertices, then `v_0 … v_{k−1}` of each copy in edge
/// order (all interior), then `v_k, w_1 … w_{k−1}` of each copy (the
/// pendants).
pub fn plant_trees(g: &MultiGraph, k: usize) -> Result<MultiGraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("planting needs k ≥ 1".into()));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) != 3) {
        return Err(Error::Degree { vertex: v, degree: g.degree(v), expected: "3" });
    }
    let base = g.vertex_count();
    let ne = g.edge_count();
    let spine = |e: usize, i: usize| base + e * k + i;
    let leaf_start = base + ne * k;
    // v_k of copy e, then its w_1 … w_{k−1}
    let pendant = |e: usize, i: usize| leaf_start + e * k + i;

    let mut edges = Vec::with_capacity(ne * (2 * k + 1));
    for (e, &(u1, u2)) in g.edges().iter().enumerate() {
        edges.push((u1, spine(e, 0)));
        edges.push((u2, spine(e, 0)));
        for i in 0..k {
            let next = if i + 1 < k { spine(e, i + 1) } else { pendant(e, 0) };
            edges.push((spine(e, i), next));
        }
        for i in 1..k {
            edges.push((spine(e, i), pendant(e, i)));
        }
    }
    MultiGraph::with_counts(base + ne * k, ne * k, edges)
}

/// Attaches a loop to each listed pendant, turning it interior. The result
/// is re-laid-out with interior vertices first.
pub fn add_loops(g: &MultiGraph, vs: &[usize]) -> Result<MultiGraph> {
    let mut roles = g.roles().to_vec();
    let mut edges = g.edges().to_vec();
    for &v in vs {
        if v >= g.vertex_count() {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        if g.degree(v) != 1 {
            return Err(Error::Degree { vertex: v, degree: g.degree(v), expected: "1" });
        }
        if roles[v] == Role::Interior {
            return Err(Error::InvalidArgument(format!("vertex {v} listed twice")));
        }
        roles[v] = Role::Interior;
        edges.push((v, v));
    }
    Ok(MultiGraph::new(roles, edges)?.canonicalize().0)
}

/// `min{1/(2k), h/(3k+1+k·h)}`: the Cheeger lower bound for a cubic graph
/// with Cheeger constant at least `h` after planting `T_k`.
pub fn planted_cheeger_bound(h: Ratio<u64>, k: usize) -> Ratio<u64> {
    let k = k as u64;
    let tree = Ratio::new(1, 2 * k);
    let spread = h / (Ratio::from_integer(3 * k + 1) + h * k);
    tree.min(spread)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::named::k4;
    use crate::graph::topology;

    #[test]
    fn tk_shapes() {
        assert_eq!(build_tk(1).unwrap().edges(), &[(0, 1)]);
        assert_eq!(build_tk(2).unwrap().edges(), &[(0, 1), (1, 2), (1, 3)]);
        for k in 1..=5 {
            let t = build_tk(k).unwrap();
            assert_eq!(t.vertex_count(), 2 * k);
            assert_eq!(t.edge_count(), 2 * k - 1);
            assert!(t.is_connected());
            assert_eq!(t.degree(0), 1);
            let leaves = (1..2 * k).filter(|&v| t.degree(v) == 1).count();
            assert_eq!(leaves, k);
        }
        assert!(build_tk(0).is_err());
    }

    #[test]
    fn planting_k4() {
        let g = plant_trees(&k4(), 1).unwrap();
        assert_eq!((g.vertex_count(), g.interior_count(), g.boundary_count()), (16, 10, 6));
        assert_eq!(topology(&g).unwrap().genus, 3);
        let g = plant_trees(&k4(), 2).unwrap();
        assert_eq!((g.vertex_count(), g.boundary_count()), (28, 12));
        assert!(g.is_canonical());
        assert!(plant_trees(&build_tk(2).unwrap(), 1).is_err());
    }

    #[test]
    fn loops() {
        let star = MultiGraph::with_counts(1, 3, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let g = add_loops(&star, &[2]).unwrap();
        assert_eq!((g.interior_count(), g.boundary_count()), (2, 2));
        assert_eq!(topology(&g).unwrap().genus, 1);
        assert_eq!(add_loops(&star, &[]).unwrap(), star);
        assert!(add_loops(&star, &[0]).is_err());
        assert!(add_loops(&star, &[1, 1]).is_err());
    }

    #[test]
    fn bound_values() {
        assert_eq!(planted_cheeger_bound(Ratio::from_integer(2), 1), Ratio::new(1, 3));
        assert_eq!(planted_cheeger_bound(Ratio::from_integer(2), 2), Ratio::new(2, 11));
    }
}
