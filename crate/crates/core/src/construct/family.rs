use num_rational::Ratio;
use num_traits::Zero;

use super::named::{heawood, k33, k4, petersen, theta_graph};
use super::planting::{add_loops, plant_trees, planted_cheeger_bound};
use crate::cheeger::{cheeger_exact_with_guard, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::graph::{build_graph, MultiGraph};
use crate::sampler::{first_connected_member, sample_with, trial_rng};
use crate::spectra::laplacian_spectrum;

/// Base cubic graphs must have Cheeger constant at least this.
pub const MIN_BASE_CHEEGER: Ratio<u64> = Ratio::new_raw(2, 11);

/// Parameters of the family with `n(g)/g → θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub theta: Ratio<u64>,
    /// Smallest `k` with `3k ≥ θ`.
    pub k: u64,
    pub m0: u64,
}

impl FamilySpec {
    pub fn new(theta: Ratio<u64>) -> Result<Self> {
        if theta.is_zero() {
            return Err(Error::InvalidArgument("theta must be positive".into()));
        }
        let k = (theta / 3).ceil().to_integer().max(1);
        let gap = Ratio::from_integer(3 * k) - theta;
        let m0 = if gap.is_zero() { 1 } else { (theta / gap).ceil().to_integer().max(1) };
        Ok(Self { theta, k, m0 })
    }

    /// `t_m = ⌊((3k−θ)m − θ)/(1+θ)⌋`, and 0 when `θ = 3k`.
    pub fn t(&self, m: u64) -> u64 {
        let gap = Ratio::from_integer(3 * self.k) - self.theta;
        if gap.is_zero() {
            return 0;
        }
        let top = gap * m;
        if top < self.theta {
            return 0;
        }
        ((top - self.theta) / (Ratio::from_integer(1) + self.theta)).floor().to_integer()
    }

    /// `g_m = m + 1 + t_m`.
    pub fn g(&self, m: u64) -> u64 {
        m + 1 + self.t(m)
    }

    /// `n_m = 3km − t_m`.
    pub fn n(&self, m: u64) -> u64 {
        3 * self.k * m - self.t(m)
    }

    /// `m` with `g_m ≤ g < g_{m+1}`, or `None` below `g_{m0}`.
    pub fn locate(&self, g: u64) -> Option<u64> {
        if g < self.g(self.m0) {
            return None;
        }
        let mut m = self.m0;
        while self.g(m + 1) <= g {
            m += 1;
        }
        Some(m)
    }
}

/// A connected cubic graph with a certified Cheeger lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseGraph {
    pub graph: MultiGraph,
    pub h_lower: Ratio<u64>,
    /// Whether `h_lower` is the exact Cheeger constant.
    pub exact: bool,
    pub source: String,
}

pub trait BaseProvider {
    /// A connected cubic graph on `2m` vertices with `h ≥ 2/11`.
    fn base(&self, m: u64) -> Result<BaseGraph>;
}

/// Named graphs where available, otherwise seeded random cubic multigraphs
/// from the `n = 0` family, certified exactly up to `guard` vertices and by
/// `h ≥ 3λ1/2` beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardBaseProvider {
    pub guard: usize,
    pub seed: u64,
    pub attempts: u64,
}

impl Default for StandardBaseProvider {
    fn default() -> Self {
        Self { guard: DEFAULT_GUARD, seed: 0x00c0_ffee, attempts: 64 }
    }
}

impl StandardBaseProvider {
    pub fn with_guard(guard: usize) -> Self {
        Self { guard, ..Self::default() }
    }

    fn certify(&self, graph: MultiGraph, source: String) -> Result<Option<BaseGraph>> {
        if !graph.is_connected() {
            return Ok(None);
        }
        if graph.vertex_count() <= self.guard {
            let h = cheeger_exact_with_guard(&graph, self.guard)?.h;
            return Ok((h >= MIN_BASE_CHEEGER).then_some(BaseGraph { graph, h_lower: h, exact: true, source }));
        }
        // Cheeger's inequality for the normalized Laplacian gives
        // |∂Ω|/vol(Ω) ≥ λ1/2, and vol(Ω) = 3|Ω| on a cubic graph. Round the
        // float bound down to a rational with margin for solver error.
        let lambda1 = laplacian_spectrum(&graph)?.lambda1;
        let scaled = ((1.5 * lambda1 - 1e-9) * 1e6).floor();
        if scaled <= 0.0 {
            return Ok(None);
        }
        let h = Ratio::new(scaled as u64, 1_000_000);
        Ok((h >= MIN_BASE_CHEEGER).then_some(BaseGraph { graph, h_lower: h, exact: false, source }))
    }
}

impl BaseProvider for StandardBaseProvider {
    fn base(&self, m: u64) -> Result<BaseGraph> {
        if m == 0 {
            return Err(Error::InvalidArgument("base graph needs m ≥ 1".into()));
        }
        let named = match m {
            1 => Some(("theta", theta_graph())),
            2 => Some(("K4", k4())),
            3 => Some(("K33", k33())),
            5 => Some(("Petersen", petersen())),
            7 => Some(("Heawood", heawood())),
            _ => None,
        };
        if let Some((name, g)) = named {
            if let Some(b) = self.certify(g, name.to_string())? {
                return Ok(b);
            }
        }
        let chi = 2 * m as usize;
        for attempt in 0..self.attempts {
            let mut rng = trial_rng(self.seed ^ m, attempt);
            let g = build_graph(&sample_with(chi, 0, &mut rng));
            if let Some(b) = self.certify(g, format!("random cubic (seed {}, attempt {attempt})", self.seed ^ m))? {
                return Ok(b);
            }
        }
        Err(Error::Certification(format!(
            "no cubic graph on {chi} vertices with certified h ≥ 2/11 after {} attempts",
            self.attempts
        )))
    }
}

/// One member `G(g)` with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub genus: u64,
    pub graph: MultiGraph,
    /// `None` for the small-genus fallback below `g_{m0}`.
    pub m: Option<u64>,
    pub loops: u64,
    /// Certified Cheeger lower bound, when planting was used.
    pub h_lower: Option<Ratio<u64>>,
    pub base: Option<String>,
}

/// `G(g)`: for `g < g_{m0}` the first connected member of `F(2g, 2)`;
/// otherwise `T_k` planted on the base graph for `m`, with loops on the
/// `t_m + u` lowest-id pendants, `u = g − g_m`.
pub fn expander_family(spec: &FamilySpec, g: u64, provider: &dyn BaseProvider) -> Result<FamilyMember> {
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let Some(m) = spec.locate(g) else {
        let chi = 2 * g as usize;
        let pairing = first_connected_member(chi, 2)?
            .ok_or_else(|| Error::Internal(format!("F({chi}, 2) has no connected member")))?;
        return Ok(FamilyMember {
            genus: g,
            graph: build_graph(&pairing),
            m: None,
            loops: 0,
            h_lower: None,
            base: None,
        });
    };
    let base = provider.base(m)?;
    let planted = plant_trees(&base.graph, spec.k as usize)?;
    let loops = spec.t(m) + (g - spec.g(m));
    let pendants = planted.boundary_vertices();
    if loops as usize > pendants.len() {
        return Err(Error::Internal(format!(
            "{loops} loops requested but only {} pendants",
            pendants.len()
        )));
    }
    let graph = add_loops(&planted, &pendants[..loops as usize])?;
    Ok(FamilyMember {
        genus: g,
        graph,
        m: Some(m),
        loops,
        h_lower: Some(planted_cheeger_bound(base.h_lower, spec.k as usize)),
        base: Some(base.source),
    })
}
