//! Cheeger constant `h(G) = min |∂Ω| / |Ω|` over `1 ≤ |Ω| ≤ |V|/2`.
//!
//! Some minimizer always has both `Ω` and its complement connected, so the
//! exact search only walks connected subsets and checks the complement on
//! candidates that would improve the running best.

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::spectra::fiedler_pair;
use crate::subsets::{mask_to_vec, Mask, Step, SubsetContext, MAX_VERTICES};

pub const DEFAULT_GUARD: usize = 24;
pub const GUARD_ENV: &str = "EXPANDER_FORGE_GUARD";

/// Serialized as `{h_num, h_den, omega, boundary, exact}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "CertificateJson")]
pub struct CheegerCertificate {
    pub h: Ratio<u64>,
    /// Sorted vertex ids of `Ω`.
    pub witness: Vec<usize>,
    pub boundary_size: usize,
    pub exact: bool,
}

#[derive(Serialize)]
struct CertificateJson {
    h_num: u64,
    h_den: u64,
    omega: Vec<usize>,
    boundary: usize,
    exact: bool,
}

impl From<CheegerCertificate> for CertificateJson {
    fn from(c: CheegerCertificate) -> Self {
        CertificateJson {
            h_num: *c.h.numer(),
            h_den: *c.h.denom(),
            omega: c.witness,
            boundary: c.boundary_size,
            exact: c.exact,
        }
    }
}

/// Guard from `EXPANDER_FORGE_GUARD`, falling back to [`DEFAULT_GUARD`].
pub fn guard_from_env() -> Result<usize> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("{GUARD_ENV}={v:?} is not a vertex count"))
        }),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    cut: usize,
    size: usize,
    mask: Mask,
}

impl Candidate {
    /// Ratio first, then size, then lexicographic order of sorted ids.
    fn cmp(&self, other: &Candidate) -> Ordering {
        let lhs = self.cut as u128 * other.size as u128;
        let rhs = other.cut as u128 * self.size as u128;
        lhs.cmp(&rhs)
            .then(self.size.cmp(&other.size))
            .then_with(|| lex_cmp(self.mask, other.mask))
    }
}

/// Lexicographic comparison of the ascending id lists of two equal-size sets.
fn lex_cmp(a: Mask, b: Mask) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    // the first differing id belongs to the lexicographically smaller set
    if a & (diff & diff.wrapping_neg()) != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn validate_for_search(g: &MultiGraph) -> Result<()> {
    g.require_connected()?;
    if g.vertex_count() < 2 {
        return Err(Error::InvalidArgument("Cheeger constant needs at least two vertices".into()));
    }
    Ok(())
}

/// Exact `h(G)` with the guard taken from the environment.
pub fn cheeger_exact(g: &MultiGraph) -> Result<CheegerCertificate> {
    cheeger_exact_with_guard(g, guard_from_env()?)
}

pub fn cheeger_exact_with_guard(g: &MultiGraph, guard: usize) -> Result<CheegerCertificate> {
    validate_for_search(g)?;
    let nv = g.vertex_count();
    if nv > guard || nv > MAX_VERTICES {
        return Err(Error::GuardExceeded {
            what: "exact Cheeger search vertex count",
            size: nv as u128,
            guard: guard.min(MAX_VERTICES) as u128,
        });
    }
    let ctx = SubsetContext::new(g)?;
    let all = ctx.all();
    let half = nv / 2;

    let best = (0..nv)
        .into_par_iter()
        .filter_map(|root| {
            let mut local: Option<Candidate> = None;
            ctx.for_each_rooted(root, half, &mut |s| {
                let cand = Candidate { cut: s.cut, size: s.size, mask: s.mask };
                let improves = local.is_none_or(|b| cand.cmp(&b) == Ordering::Less);
                if improves && ctx.is_connected(all & !s.mask) {
                    local = Some(cand);
                }
                Step::Descend
            });
            local
        })
        .min_by(|a, b| a.cmp(b))
        .ok_or_else(|| Error::Internal("no admissible subset found".into()))?;

    Ok(CheegerCertificate {
        h: Ratio::new(best.cut as u64, best.size as u64),
        witness: mask_to_vec(best.mask),
        boundary_size: best.cut,
        exact: true,
    })
}

/// Upper bound on `h(G)` from cuts of the ordering by `D^{-1/2}φ`, `φ` a
/// `λ1` eigenvector. With `sweep` every prefix is tried, otherwise only the
/// median split.
pub fn cheeger_upper(g: &MultiGraph, sweep: bool) -> Result<CheegerCertificate> {
    validate_for_search(g)?;
    let nv = g.vertex_count();
    let (_, phi) = fiedler_pair(g)?;
    let x: Vec<f64> = phi
        .iter()
        .enumerate()
        .map(|(v, p)| p / (g.degree(v) as f64).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));

    let mut inside = vec![false; nv];
    let mut cut = 0usize;
    // (cut, |Ω|, prefix length, Ω is the prefix)
    let mut best: Option<(usize, usize, usize, bool)> = None;
    for (i, &v) in order.iter().enumerate().take(nv - 1) {
        for &(w, _) in g.incident(v) {
            if w == v {
                continue;
            }
            if inside[w] {
                cut -= 1;
            } else {
                cut += 1;
            }
        }
        inside[v] = true;
        let len = i + 1;
        if !sweep && len != nv / 2 {
            continue;
        }
        let prefix_side = len <= nv - len;
        let size = len.min(nv - len);
        let better = best.is_none_or(|(bc, bs, _, _)| {
            (cut as u128 * bs as u128) < (bc as u128 * size as u128)
        });
        if better {
            best = Some((cut, size, len, prefix_side));
        }
    }
    let (cut, size, len, prefix_side) =
        best.ok_or_else(|| Error::Internal("empty sweep".into()))?;
    let mut witness: Vec<usize> = if prefix_side {
        order[..len].to_vec()
    } else {
        order[len..].to_vec()
    };
    witness.sort_unstable();
    Ok(CheegerCertificate {
        h: Ratio::new(cut as u64, size as u64),
        witness,
        boundary_size: cut,
        exact: false,
    })
}

/// `|∂Ω|` for an arbitrary vertex set, loops excluded.
pub fn boundary_of(g: &MultiGraph, omega: &[usize]) -> usize {
    let mut inside = vec![false; g.vertex_count()];
    for &v in omega {
        inside[v] = true;
    }
    g.edge_boundary(&inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::subsets::bit;
    use crate::sampler::{sample_partition, SampleConfig};

    fn mask_of(vs: &[usize]) -> Mask {
        vs.iter().fold(0, |m, &v| m | bit(v))
    }

    fn k4() -> MultiGraph {
        MultiGraph::with_counts(4, 0, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Every subset of size at most |V|/2, no connectivity pruning.
    fn naive(g: &MultiGraph) -> (Ratio<u64>, usize) {
        let nv = g.vertex_count();
        let mut best: Option<(Ratio<u64>, usize)> = None;
        for m in 1u32..(1 << nv) {
            let size = m.count_ones() as usize;
            if 2 * size > nv {
                continue;
            }
            let inside: Vec<bool> = (0..nv).map(|v| m >> v & 1 == 1).collect();
            let r = Ratio::new(g.edge_boundary(&inside) as u64, size as u64);
            if best.is_none_or(|(b, bs)| r < b || (r == b && size < bs)) {
                best = Some((r, size));
            }
        }
        best.unwrap()
    }

    #[test]
    fn named_examples() {
        let star = MultiGraph::with_counts(1, 3, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = cheeger_exact(&star).unwrap();
        assert_eq!(c.h, Ratio::from_integer(1));
        assert_eq!(c.witness, vec![1]);

        let c = cheeger_exact(&k4()).unwrap();
        assert_eq!(c.h, Ratio::from_integer(2));
        assert_eq!(c.witness, vec![0, 1]);

        let theta = MultiGraph::with_counts(2, 0, vec![(0, 1); 3]).unwrap();
        let c = cheeger_exact(&theta).unwrap();
        assert_eq!(c.h, Ratio::from_integer(3));
        assert_eq!(c.witness, vec![0]);

        assert_eq!(cheeger_upper(&star, true).unwrap().h, Ratio::from_integer(1));
    }

    #[test]
    fn matches_naive_search_on_samples() {
        let mut checked = 0;
        for (chi, n) in [(2, 4), (3, 3), (4, 2), (5, 1), (6, 0), (4, 6), (6, 4), (8, 2)] {
            let cfg = SampleConfig::new(chi, n, 40, 3).unwrap();
            for t in 0..40 {
                let g = build_graph(&sample_partition(&cfg, t).unwrap());
                if !g.is_connected() || g.vertex_count() > 12 {
                    continue;
                }
                let exact = cheeger_exact(&g).unwrap();
                let (h, size) = naive(&g);
                assert_eq!(exact.h, h, "{g}");
                assert_eq!(exact.witness.len(), size);
                assert_eq!(boundary_of(&g, &exact.witness), exact.boundary_size);
                let upper = cheeger_upper(&g, true).unwrap();
                assert!(upper.h >= exact.h);
                assert_eq!(boundary_of(&g, &upper.witness), upper.boundary_size);
                assert!(2 * upper.witness.len() <= g.vertex_count());
                checked += 1;
            }
        }
        assert!(checked > 100, "{checked}");
    }

    #[test]
    fn guard_and_connectivity_errors() {
        assert!(matches!(
            cheeger_exact_with_guard(&k4(), 3),
            Err(Error::GuardExceeded { .. })
        ));
        let split = MultiGraph::with_counts(2, 6, vec![(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)]).unwrap();
        assert_eq!(cheeger_exact(&split), Err(Error::Disconnected));
        assert_eq!(cheeger_upper(&split, true), Err(Error::Disconnected));
    }

    #[test]
    fn certificate_json_keys() {
        let c = cheeger_exact(&k4()).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["h_num"], 2);
        assert_eq!(v["h_den"], 1);
        assert_eq!(v["omega"], serde_json::json!([0, 1]));
        assert_eq!(v["boundary"], 4);
        assert_eq!(v["exact"], true);
    }

    #[test]
    fn lex_tie_break() {
        assert_eq!(lex_cmp(mask_of(&[0, 3]), mask_of(&[1, 2])), Ordering::Less);
        assert_eq!(lex_cmp(mask_of(&[1, 2]), mask_of(&[1, 3])), Ordering::Less);
        assert_eq!(lex_cmp(mask_of(&[2, 5]), mask_of(&[2, 4])), Ordering::Greater);
    }
}
