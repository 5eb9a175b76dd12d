//! Exact counting, uniform sampling and exhaustive enumeration of the
//! good-partition family `F(χ, n)`.
//!
//! # Random stream contract
//!
//! Trial `t` of a run seeded with `s` draws from
//! `ChaCha8Rng::seed_from_u64(s)` with `set_stream(t)` (rand_chacha 0.9,
//! rand 0.9). Trials therefore never share randomness and a parallel run
//! reproduces a serial one bit for bit.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{check_parameters, owner, HalfEdgePairing};

/// Enumeration refuses families larger than this.
pub const ENUMERATION_GUARD: u64 = 10_000_000;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub chi: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(chi: usize, n: usize, trials: u64, seed: u64) -> Result<Self> {
        let cfg = Self { chi, n, trials, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_parameters(self.chi, self.n)?;
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// The generator for one trial under the stream contract.
pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

#[cfg(test)]
fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn falling(top: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (top - i))
}

/// `N(m) = (2m)! / (m! 2^m)`, the number of perfect matchings on `2m` points.
pub fn perfect_matchings(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * (2 * i - 1))
}

/// `|F(χ, n)| = n! · C(3χ, n) · N((3χ − n)/2)`.
pub fn count_family(chi: usize, n: usize) -> Result<BigUint> {
    check_parameters(chi, n)?;
    // n! C(3χ, n) is the falling factorial (3χ)_n
    Ok(falling(3 * chi, n) * perfect_matchings((3 * chi - n) / 2))
}

/// A uniform member of `F(χ, n)`: a uniform shuffle of the interior labels
/// whose first `n` entries receive the boundary labels in order and whose
/// remainder is paired consecutively. Both stages are uniform, and together
/// they factor the count `n!·C(3χ,n) · N((3χ−n)/2)`.
pub fn sample_partition(cfg: &SampleConfig, trial_index: u64) -> Result<HalfEdgePairing> {
    check_parameters(cfg.chi, cfg.n)?;
    let mut rng = trial_rng(cfg.seed, trial_index);
    Ok(sample_with(cfg.chi, cfg.n, &mut rng))
}

pub(crate) fn sample_with(chi: usize, n: usize, rng: &mut ChaCha8Rng) -> HalfEdgePairing {
    let interior = 3 * chi;
    let mut labels: Vec<u32> = (1..=interior as u32).collect();
    labels.shuffle(rng);
    let mut pairs = Vec::with_capacity((interior + n) / 2);
    for (j, &l) in labels[..n].iter().enumerate() {
        pairs.push((l, (interior + 1 + j) as u32));
    }
    for c in labels[n..].chunks_exact(2) {
        pairs.push((c[0], c[1]));
    }
    HalfEdgePairing::from_pairs_unchecked(chi, n, pairs)
}

/// Connectivity of the glued graph, computed directly from the pairing.
pub fn pairing_is_connected(p: &HalfEdgePairing) -> bool {
    let mut dsu = Dsu::new(p.chi() + p.n());
    for &(a, b) in p.pairs() {
        dsu.union(p.owner(a), p.owner(b));
    }
    dsu.sets() == 1
}

/// Each member of `F(χ, n)` exactly once, in lexicographic order of its
/// choice digits (boundary assignments first, then the interior matching).
pub fn enumerate_family(chi: usize, n: usize) -> Result<FamilyIter> {
    let count = count_family(chi, n)?;
    let guard = BigUint::from(ENUMERATION_GUARD);
    if count > guard {
        return Err(Error::GuardExceeded {
            what: "family enumeration",
            size: count.to_u128().unwrap_or(u128::MAX),
            guard: ENUMERATION_GUARD as u128,
        });
    }
    Ok(FamilyIter::new(chi, n))
}

/// Odometer over mixed-radix choice digits.
///
/// Digits `0..n`: digit `j` picks the interior label (by rank among those
/// still free) paired with boundary label `3χ+1+j`. Remaining digits: the
/// partner of the smallest unmatched interior label, by rank among the rest.
#[derive(Debug, Clone)]
pub struct FamilyIter {
    chi: usize,
    n: usize,
    radices: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl FamilyIter {
    fn new(chi: usize, n: usize) -> Self {
        let interior = 3 * chi;
        let mut radices: Vec<usize> = (0..n).map(|j| interior - j).collect();
        let mut r = interior - n;
        while r > 0 {
            radices.push(r - 1);
            r -= 2;
        }
        let digits = vec![0; radices.len()];
        Self { chi, n, radices, digits, done: false }
    }

    fn decode(&self) -> HalfEdgePairing {
        decode_digits(self.chi, self.n, &self.digits)
    }
}

fn decode_digits(chi: usize, n: usize, digits: &[usize]) -> HalfEdgePairing {
    let interior = 3 * chi;
    let mut free: Vec<u32> = (1..=interior as u32).collect();
    let mut pairs = Vec::with_capacity((interior + n) / 2);
    for (j, &d) in digits[..n].iter().enumerate() {
        let l = free.remove(d);
        pairs.push((l, (interior + 1 + j) as u32));
    }
    for &d in &digits[n..] {
        let a = free.remove(0);
        let b = free.remove(d);
        pairs.push((a, b));
    }
    HalfEdgePairing::from_pairs_unchecked(chi, n, pairs)
}

impl Iterator for FamilyIter {
    type Item = HalfEdgePairing;

    fn next(&mut self) -> Option<HalfEdgePairing> {
        if self.done {
            return None;
        }
        let item = self.decode();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}

/// The first connected member of `F(χ, n)` in enumeration order, found by
/// depth-first search over the same digits with infeasible branches cut.
/// Needs no enumeration guard.
pub fn first_connected_member(chi: usize, n: usize) -> Result<Option<HalfEdgePairing>> {
    check_parameters(chi, n)?;
    let interior = 3 * chi;
    let mut state = SearchState {
        chi,
        n,
        free: (1..=interior as u32).collect(),
        pairs: Vec::new(),
    };
    Ok(search_first(&mut state).then(|| {
        HalfEdgePairing::from_pairs_unchecked(chi, n, state.pairs.clone())
    }))
}

struct SearchState {
    chi: usize,
    n: usize,
    free: Vec<u32>,
    pairs: Vec<(u32, u32)>,
}

impl SearchState {
    /// Necessary condition for completing to a connected graph: with `r`
    /// components, each needs a free half-edge and `r − 1` joins need
    /// `2(r − 1)` of them.
    fn feasible(&self) -> bool {
        let nv = self.chi + self.n;
        let mut dsu = Dsu::new(nv);
        for &(a, b) in &self.pairs {
            dsu.union(owner(self.chi, a), owner(self.chi, b));
        }
        let r = dsu.sets();
        if r == 1 {
            return true;
        }
        let mut free_by_root = vec![0usize; nv];
        let assigned = self.pairs.iter().filter(|p| p.1 as usize > 3 * self.chi).count();
        for &l in &self.free {
            let root = dsu.find(owner(self.chi, l));
            free_by_root[root] += 1;
        }
        for j in assigned..self.n {
            let root = dsu.find(self.chi + j);
            free_by_root[root] += 1;
        }
        let mut total = 0;
        for v in 0..nv {
            if dsu.find(v) == v {
                if free_by_root[v] == 0 {
                    return false;
                }
                total += free_by_root[v];
            }
        }
        total >= 2 * (r - 1)
    }
}

fn search_first(st: &mut SearchState) -> bool {
    if !st.feasible() {
        return false;
    }
    let assigned = st.pairs.len();
    if assigned < st.n {
        let boundary_label = (3 * st.chi + 1 + assigned) as u32;
        for d in 0..st.free.len() {
            let l = st.free.remove(d);
            st.pairs.push((l, boundary_label));
            if search_first(st) {
                return true;
            }
            st.pairs.pop();
            st.free.insert(d, l);
        }
        return false;
    }
    if st.free.is_empty() {
        return true;
    }
    let a = st.free.remove(0);
    for d in 0..st.free.len() {
        let b = st.free.remove(d);
        st.pairs.push((a, b));
        if search_first(st) {
            return true;
        }
        st.pairs.pop();
        st.free.insert(d, b);
    }
    st.free.insert(0, a);
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityEstimate {
    pub connected: u64,
    pub trials: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let nt = trials as f64;
    let p = successes as f64 / nt;
    let z2 = z * z;
    let denom = 1.0 + z2 / nt;
    let center = (p + z2 / (2.0 * nt)) / denom;
    let half = z / denom * (p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)).sqrt();
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

/// Fraction of connected samples with a Wilson 95% interval.
pub fn estimate_connectivity(cfg: &SampleConfig) -> Result<ConnectivityEstimate> {
    cfg.validate()?;
    let connected = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            pairing_is_connected(&sample_with(cfg.chi, cfg.n, &mut rng)) as u64
        })
        .sum::<u64>();
    let (ci_low, ci_high) = wilson_interval(connected, cfg.trials, Z95);
    Ok(ConnectivityEstimate {
        connected,
        trials: cfg.trials,
        fraction: connected as f64 / cfg.trials as f64,
        ci_low,
        ci_high,
    })
}

/// Exact count of connected members by enumeration.
pub fn exact_connected_count(chi: usize, n: usize) -> Result<u64> {
    Ok(enumerate_family(chi, n)?
        .filter(pairing_is_connected)
        .count() as u64)
}
