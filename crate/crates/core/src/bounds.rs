//! First-moment bounds on small separating subgraphs.
//!
//! For a triple `(a, b, s)` the expected number of connected subsets with
//! `a` boundary vertices, `b` interior vertices and `s` crossing edges is
//! bounded by `X·Y·Z` with
//!
//! ```text
//! X = (3b)! (3χ−3b)! / (3χ)!
//! Y = 2^s M! / (s! p! q!),   M = (3χ−n)/2, p = (3b−a−s)/2, q = (3χ−n−3b+a−s)/2
//! Z = C(n, a) C(χ, b)
//! ```
//!
//! `Y` is taken to be 0 whenever `p` or `q` is negative or not an integer.
//! All arithmetic is exact.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, check_parameters, MultiGraph};
use crate::rational::big_to_f64;
use crate::sampler::{enumerate_family, sample_partition, SampleConfig, Z95};
use crate::subsets::{Step, SubsetContext};

/// `count_nabs` refuses graphs with more interior vertices than this.
pub const NABS_INTERIOR_GUARD: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MuPair {
    pub a: usize,
    pub b: usize,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuPairBound {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
    pub product: BigRational,
}

/// `1 ≤ a+b ≤ (χ+n)/2`, `1 ≤ s ≤ μ(a+b)` and `b ≥ a+s−2`, all exact.
pub fn is_mu_pair(a: usize, b: usize, s: usize, chi: usize, n: usize, mu: &Ratio<u64>) -> bool {
    let size = (a + b) as u128;
    size >= 1
        && 2 * size <= (chi + n) as u128
        && s >= 1
        && s as u128 * *mu.denom() as u128 <= *mu.numer() as u128 * size
        && b + 2 >= a + s
}

/// Factorials `0!..=top!`.
struct Factorials(Vec<BigUint>);

impl Factorials {
    fn new(top: usize) -> Self {
        let mut v = Vec::with_capacity(top + 1);
        v.push(BigUint::one());
        for i in 1..=top {
            let next = &v[i - 1] * i;
            v.push(next);
        }
        Factorials(v)
    }

    fn get(&self, k: usize) -> &BigUint {
        &self.0[k]
    }

    fn binomial(&self, top: usize, k: usize) -> BigUint {
        if k > top {
            return BigUint::zero();
        }
        self.get(top) / (self.get(k) * self.get(top - k))
    }
}

fn half_if_even(v: i64) -> Option<usize> {
    (v >= 0 && v % 2 == 0).then_some((v / 2) as usize)
}

/// The integer `Y`, or 0 when the configuration is vacuous.
fn y_count(f: &Factorials, chi: usize, n: usize, a: usize, b: usize, s: usize) -> BigUint {
    let m = (3 * chi - n) / 2;
    let p = half_if_even(3 * b as i64 - a as i64 - s as i64);
    let q = half_if_even(3 * chi as i64 - n as i64 - 3 * b as i64 + a as i64 - s as i64);
    match (p, q) {
        (Some(p), Some(q)) => {
            // p + q + s = M, so this is 2^s times a multinomial coefficient
            debug_assert_eq!(p + q + s, m);
            (f.get(m) << s) / (f.get(s) * f.get(p) * f.get(q))
        }
        _ => BigUint::zero(),
    }
}

fn check_pair_range(chi: usize, n: usize, a: usize, b: usize) -> Result<()> {
    check_parameters(chi, n)?;
    if a > n || b > chi {
        return Err(Error::InvalidArgument(format!(
            "need a ≤ n and b ≤ chi, got a={a}, b={b} for chi={chi}, n={n}"
        )));
    }
    Ok(())
}

fn to_big(u: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(u))
}

pub fn xyz_bound(chi: usize, n: usize, a: usize, b: usize, s: usize) -> Result<MuPairBound> {
    check_pair_range(chi, n, a, b)?;
    let f = Factorials::new(3 * chi);
    let x = BigRational::new(BigInt::one(), BigInt::from(f.binomial(3 * chi, 3 * b)));
    let y = to_big(y_count(&f, chi, n, a, b, s));
    let z = to_big(f.binomial(n, a) * f.binomial(chi, b));
    let product = &x * &y * &z;
    Ok(MuPairBound { x, y, z, product })
}

/// All μ-pairs for the given parameters, sorted by `(a, b, s)`.
pub fn mu_pairs(chi: usize, n: usize, mu: &Ratio<u64>) -> Vec<MuPair> {
    let mut out = Vec::new();
    let max_size = (chi + n) / 2;
    for a in 0..=n {
        for b in 0..=chi {
            if a + b > max_size {
                break;
            }
            let s_max = (b + 2).saturating_sub(a);
            for s in 1..=s_max {
                if is_mu_pair(a, b, s, chi, n, mu) {
                    out.push(MuPair { a, b, s });
                }
            }
        }
    }
    out
}

/// `Σ X·Y·Z` over every μ-pair. Terms sharing `b` share the denominator
/// `C(3χ, 3b)`, so each `b` contributes one rational.
pub fn mu_pair_sum(chi: usize, n: usize, mu: &Ratio<u64>) -> Result<BigRational> {
    check_parameters(chi, n)?;
    if mu.is_zero() {
        return Err(Error::InvalidArgument("mu must be positive".into()));
    }
    let f = Factorials::new(3 * chi);
    let max_size = (chi + n) / 2;
    let per_b: Vec<BigRational> = (0..=chi.min(max_size))
        .into_par_iter()
        .map(|b| {
            let mut numer = BigUint::zero();
            for a in 0..=n.min(max_size - b) {
                let mut inner = BigUint::zero();
                for s in 1..=(b + 2).saturating_sub(a) {
                    if is_mu_pair(a, b, s, chi, n, mu) {
                        inner += y_count(&f, chi, n, a, b, s);
                    }
                }
                if !inner.is_zero() {
                    numer += inner * f.binomial(n, a);
                }
            }
            if numer.is_zero() {
                return BigRational::zero();
            }
            BigRational::new(
                BigInt::from(numer * f.binomial(chi, b)),
                BigInt::from(f.binomial(3 * chi, 3 * b)),
            )
        })
        .collect();
    Ok(per_b.into_iter().fold(BigRational::zero(), |acc, t| acc + t))
}

/// Per-pair table behind [`mu_pair_sum`].
pub fn mu_pair_table(chi: usize, n: usize, mu: &Ratio<u64>) -> Result<Vec<(MuPair, MuPairBound)>> {
    check_parameters(chi, n)?;
    mu_pairs(chi, n, mu)
        .into_par_iter()
        .map(|p| xyz_bound(chi, n, p.a, p.b, p.s).map(|bd| (p, bd)))
        .collect()
}

fn nabs_context(g: &MultiGraph) -> Result<SubsetContext> {
    if g.interior_count() > NABS_INTERIOR_GUARD {
        return Err(Error::GuardExceeded {
            what: "N_abs interior vertex count",
            size: g.interior_count() as u128,
            guard: NABS_INTERIOR_GUARD as u128,
        });
    }
    SubsetContext::new(g)
}

/// Connected vertex sets with exactly `a` boundary and `b` interior
/// vertices and `s` crossing edges; 0 for a disconnected graph.
pub fn count_nabs(g: &MultiGraph, a: usize, b: usize, s: usize) -> Result<u64> {
    let ctx = nabs_context(g)?;
    if !g.is_connected() || a + b == 0 {
        return Ok(0);
    }
    let mut count = 0u64;
    for root in 0..g.vertex_count() {
        ctx.for_each_rooted(root, a + b, &mut |sub| {
            if sub.boundary_members > a || sub.interior_members() > b {
                return Step::Prune;
            }
            if sub.boundary_members == a && sub.interior_members() == b && sub.cut == s {
                count += 1;
            }
            Step::Descend
        });
    }
    Ok(count)
}

/// Counts of connected sets by `(a, b, s)` for all sizes `a+b ≤ max_size`;
/// empty for a disconnected graph.
pub fn nabs_histogram(g: &MultiGraph, max_size: usize) -> Result<BTreeMap<MuPair, u64>> {
    let ctx = nabs_context(g)?;
    let mut hist = BTreeMap::new();
    if !g.is_connected() {
        return Ok(hist);
    }
    for root in 0..g.vertex_count() {
        ctx.for_each_rooted(root, max_size, &mut |sub| {
            let key = MuPair { a: sub.boundary_members, b: sub.interior_members(), s: sub.cut };
            *hist.entry(key).or_insert(0) += 1;
            Step::Descend
        });
    }
    Ok(hist)
}

/// `E[N_{a,b,s}]` over the whole family, by enumeration.
pub fn exact_first_moment(chi: usize, n: usize, a: usize, b: usize, s: usize) -> Result<BigRational> {
    check_pair_range(chi, n, a, b)?;
    let members: Vec<_> = enumerate_family(chi, n)?.collect();
    let total: u64 = members
        .par_iter()
        .map(|p| count_nabs(&build_graph(p), a, b, s))
        .sum::<Result<u64>>()?;
    Ok(BigRational::new(BigInt::from(total), BigInt::from(members.len())))
}

/// Exact means of every `N_{a,b,s}` with `a+b ≤ max_size` over the family.
pub fn exact_first_moments(chi: usize, n: usize, max_size: usize) -> Result<BTreeMap<MuPair, BigRational>> {
    let members: Vec<_> = enumerate_family(chi, n)?.collect();
    let total = members.len();
    let merged = members
        .par_iter()
        .map(|p| nabs_histogram(&build_graph(p), max_size))
        .try_reduce(BTreeMap::new, |mut acc, h| {
            for (k, v) in h {
                *acc.entry(k).or_insert(0) += v;
            }
            Ok(acc)
        })?;
    Ok(merged
        .into_iter()
        .map(|(k, v)| (k, BigRational::new(BigInt::from(v), BigInt::from(total))))
        .collect())
}

/// Monte Carlo comparison of `E[N_{a,b,s}]` with `X·Y·Z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub chi: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub trials: u64,
    pub seed: u64,
    pub estimate: f64,
    /// Normal-approximation 95% interval for the mean.
    pub ci: [f64; 2],
    pub bound_float: f64,
    /// `estimate ≤ bound + CI half-width`.
    pub pass: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn audit_first_moment(
    chi: usize,
    n: usize,
    a: usize,
    b: usize,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<AuditReport> {
    let bound = xyz_bound(chi, n, a, b, s)?;
    let cfg = SampleConfig::new(chi, n, trials, seed)?;
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| count_nabs(&build_graph(&sample_partition(&cfg, t)?), a, b, s))
        .collect::<Result<_>>()?;
    let k = trials as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / k;
    let var = if trials > 1 {
        counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let half = Z95 * (var / k).sqrt();
    let bound_float = big_to_f64(&bound.product);
    Ok(AuditReport {
        chi,
        n,
        a,
        b,
        s,
        trials,
        seed,
        estimate: mean,
        ci: [(mean - half).max(0.0), mean + half],
        bound_float,
        pass: mean <= bound_float + half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    /// Textbook factorial/binomial oracle, independent of `Factorials`.
    fn fact(k: usize) -> BigInt {
        (1..=k).fold(BigInt::one(), |acc, i| acc * i)
    }

    fn oracle_product(chi: usize, n: usize, a: usize, b: usize, s: usize) -> BigRational {
        let x = BigRational::new(fact(3 * b) * fact(3 * chi - 3 * b), fact(3 * chi));
        let p2 = 3 * b as i64 - a as i64 - s as i64;
        let q2 = 3 * chi as i64 - n as i64 - (3 * b as i64 - a as i64) - s as i64;
        if p2 < 0 || q2 < 0 || p2 % 2 != 0 || q2 % 2 != 0 {
            return BigRational::zero();
        }
        let y = BigRational::new(
            BigInt::from(2).pow(s as u32) * fact((3 * chi - n) / 2),
            fact(s) * fact(p2 as usize / 2) * fact(q2 as usize / 2),
        );
        let z = BigRational::new(
            fact(n) * fact(chi),
            fact(a) * fact(n - a) * fact(b) * fact(chi - b),
        );
        x * y * z
    }

    #[test]
    fn regression_value() {
        let bd = xyz_bound(4, 2, 0, 1, 1).unwrap();
        assert_eq!(bd.x, r(1, 220));
        assert_eq!(bd.y, r(40, 1));
        assert_eq!(bd.z, r(4, 1));
        assert_eq!(bd.product, r(8, 11));
    }

    #[test]
    fn vacuous_and_whole_graph_cases() {
        let bd = xyz_bound(4, 2, 1, 1, 1).unwrap();
        assert!(bd.y.is_zero() && bd.product.is_zero());
        let bd = xyz_bound(2, 0, 0, 2, 0).unwrap();
        assert_eq!(bd.x, r(1, 1));
        assert_eq!(bd.z, r(1, 1));
        assert_eq!(bd.y, r(1, 1));
        assert!(xyz_bound(4, 2, 3, 1, 1).is_err());
    }

    #[test]
    fn bound_matches_oracle() {
        for (chi, n) in [(4, 2), (5, 3), (6, 0), (7, 5)] {
            for a in 0..=n {
                for b in 0..=chi {
                    for s in 0..6 {
                        assert_eq!(
                            xyz_bound(chi, n, a, b, s).unwrap().product,
                            oracle_product(chi, n, a, b, s),
                            "{chi} {n} {a} {b} {s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mu_pair_membership() {
        let tiny = Ratio::new(1, 50);
        assert!(!is_mu_pair(0, 1, 1, 4, 2, &tiny));
        assert!(is_mu_pair(0, 1, 1, 4, 2, &Ratio::new(3, 2)));
        for mu in [Ratio::new(1, 50), Ratio::from_integer(5)] {
            assert!(!is_mu_pair(2, 1, 2, 10, 10, &mu));
        }
    }

    #[test]
    fn mu_pair_sum_matches_brute_summation() {
        for (chi, n, mu) in [(4, 2, Ratio::new(1, 2)), (8, 4, Ratio::new(3, 4)), (12, 6, Ratio::new(1, 3))] {
            let mut brute = BigRational::zero();
            for a in 0..=n {
                for b in 0..=chi {
                    for s in 0..=3 * chi {
                        if is_mu_pair(a, b, s, chi, n, &mu) {
                            brute += oracle_product(chi, n, a, b, s);
                        }
                    }
                }
            }
            assert_eq!(mu_pair_sum(chi, n, &mu).unwrap(), brute);
            let table: BigRational = mu_pair_table(chi, n, &mu)
                .unwrap()
                .into_iter()
                .map(|(_, b)| b.product)
                .fold(BigRational::zero(), |a, b| a + b);
            assert_eq!(table, brute);
        }
        assert_eq!(mu_pair_sum(4, 2, &Ratio::new(1, 2)).unwrap(), r(8, 7));
        assert!(mu_pair_sum(10, 0, &Ratio::new(1, 50)).unwrap().is_zero());
    }

    #[test]
    fn nabs_examples() {
        let star = MultiGraph::with_counts(1, 3, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(count_nabs(&star, 1, 0, 1).unwrap(), 3);
        assert_eq!(count_nabs(&star, 0, 1, 3).unwrap(), 1);
        let theta = MultiGraph::with_counts(2, 0, vec![(0, 1); 3]).unwrap();
        assert_eq!(count_nabs(&theta, 0, 1, 3).unwrap(), 2);
        let split = MultiGraph::with_counts(2, 6, vec![(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)]).unwrap();
        assert_eq!(count_nabs(&split, 1, 0, 1).unwrap(), 0);

        let hist = nabs_histogram(&star, 4).unwrap();
        assert_eq!(hist[&MuPair { a: 1, b: 0, s: 1 }], 3);
        assert_eq!(hist[&MuPair { a: 3, b: 1, s: 0 }], 1);
    }

    #[test]
    fn exact_moments_agree_with_single_counts() {
        let all = exact_first_moments(2, 0, 2).unwrap();
        for (k, v) in &all {
            assert_eq!(&exact_first_moment(2, 0, k.a, k.b, k.s).unwrap(), v);
        }
        assert_eq!(exact_first_moment(1, 3, 1, 0, 1).unwrap(), r(3, 1));
    }

    #[test]
    fn audit_is_deterministic() {
        let a = audit_first_moment(4, 2, 0, 1, 3, 200, 5).unwrap();
        let b = audit_first_moment(4, 2, 0, 1, 3, 200, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.ci[0] <= a.estimate && a.estimate <= a.ci[1]);
    }
}
