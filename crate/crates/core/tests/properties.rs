use expander_forge::bounds::{nabs_histogram, xyz_bound, MuPair};
use expander_forge::cheeger::{cheeger_exact, cheeger_upper};
use expander_forge::construct::add_loops;
use expander_forge::format::{parse, to_text};
use expander_forge::graph::{build_graph, check_parameters, cycle_rank, topology, validate_partition, MultiGraph};
use expander_forge::sampler::{sample_partition, wilson_interval, SampleConfig, Z95};
use expander_forge::spectra::{laplacian_spectrum, rayleigh_quotient, steklov_spectrum};
use expander_forge::{connected_components, Role};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

/// Valid `(χ, n, seed, trial)` with `χ ≤ max_chi`.
fn params(max_chi: usize) -> impl Strategy<Value = (usize, usize, u64, u64)> {
    (1..=max_chi)
        .prop_flat_map(|chi| (Just(chi), 0..=3 * chi))
        .prop_filter("parity", |(chi, n)| check_parameters(*chi, *n).is_ok())
        .prop_flat_map(|(chi, n)| (Just(chi), Just(n), any::<u64>(), 0u64..1000))
}

fn sample(chi: usize, n: usize, seed: u64, t: u64) -> MultiGraph {
    let cfg = SampleConfig::new(chi, n, 1, seed).unwrap();
    build_graph(&sample_partition(&cfg, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sampled_partitions_are_good((chi, n, seed, t) in params(30)) {
        let cfg = SampleConfig::new(chi, n, 1, seed).unwrap();
        let p = sample_partition(&cfg, t).unwrap();
        prop_assert!(validate_partition(chi, n, p.pairs()).unwrap());
        prop_assert_eq!(p, sample_partition(&cfg, t).unwrap());
    }

    #[test]
    fn degrees_match_roles_and_euler_relation((chi, n, seed, t) in params(30)) {
        let g = sample(chi, n, seed, t);
        for v in 0..g.vertex_count() {
            let expected = if g.role(v) == Role::Interior { 3 } else { 1 };
            prop_assert_eq!(g.degree(v), expected);
        }
        let top = topology(&g).unwrap();
        prop_assert_eq!(top.euler_char, 1 - top.genus);
        prop_assert_eq!(cycle_rank(&g) as i64, top.genus + top.components as i64 - 1);
        prop_assert_eq!(top.components, connected_components(&g).len());
    }

    #[test]
    fn text_format_round_trips((chi, n, seed, t) in params(20)) {
        let g = sample(chi, n, seed, t);
        prop_assert_eq!(parse(&to_text(&g)).unwrap(), g);
    }

    #[test]
    fn laplacian_spectrum_invariants((chi, n, seed, t) in params(12)) {
        let g = sample(chi, n, seed, t);
        let s = laplacian_spectrum(&g).unwrap();
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.eigenvalues.iter().all(|&x| (-TOL..=2.0 + TOL).contains(&x)));
        let zeros = s.eigenvalues.iter().filter(|&&x| x.abs() <= TOL).count();
        let components = connected_components(&g).len();
        prop_assert_eq!(zeros, components);
        prop_assert_eq!(s.lambda1 > TOL, components == 1);
    }

    #[test]
    fn steklov_spectrum_and_rayleigh((chi, n, seed, t) in params(8), fseed in any::<u64>()) {
        let g = sample(chi, n, seed, t);
        prop_assume!(g.is_connected() && n >= 2);
        let sigma = steklov_spectrum(&g).unwrap();
        prop_assert_eq!(sigma.len(), n);
        prop_assert!(sigma[0].abs() <= TOL);
        prop_assert!(sigma.iter().all(|&x| (-TOL..=1.0 + TOL).contains(&x)));
        let boundary = g.boundary_vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        for _ in 0..200 {
            let mut f: Vec<f64> = (0..g.vertex_count()).map(|_| rng.random::<f64>() - 0.5).collect();
            let mean = boundary.iter().map(|&v| f[v]).sum::<f64>() / n as f64;
            for &v in &boundary {
                f[v] -= mean;
            }
            let r = rayleigh_quotient(&g, &f).unwrap();
            prop_assert!(sigma[1] <= r + TOL, "sigma1 {} > R(f) {}", sigma[1], r);
        }
    }

    #[test]
    fn cheeger_bounds_agree((chi, n, seed, t) in params(7)) {
        let g = sample(chi, n, seed, t);
        prop_assume!(g.is_connected() && g.vertex_count() <= 20);
        let exact = cheeger_exact(&g).unwrap();
        let upper = cheeger_upper(&g, true).unwrap();
        prop_assert!(upper.h >= exact.h);
        prop_assert!(2 * exact.witness.len() <= g.vertex_count());
        let min_degree = *g.degrees().iter().min().unwrap() as u64;
        prop_assert!(exact.h <= num_rational::Ratio::from_integer(min_degree));
        let lambda1 = laplacian_spectrum(&g).unwrap().lambda1;
        let h = *exact.h.numer() as f64 / *exact.h.denom() as f64;
        prop_assert!(lambda1 >= h * h / 18.0 - TOL);
    }

    #[test]
    fn add_loops_degree_multiset((chi, n, seed, t) in params(10), pick in any::<u64>()) {
        let g = sample(chi, n, seed, t);
        let pendants = g.boundary_vertices();
        let take = if pendants.is_empty() { 0 } else { (pick as usize) % (pendants.len() + 1) };
        let looped = add_loops(&g, &pendants[..take]).unwrap();
        prop_assert_eq!(looped.interior_count(), chi + take);
        prop_assert_eq!(looped.boundary_count(), n - take);
        let top = topology(&looped).unwrap();
        prop_assert_eq!(top.genus, topology(&g).unwrap().genus + take as i64);
    }

    #[test]
    fn vacuous_triples_never_occur((chi, n, seed, t) in params(6)) {
        let g = sample(chi, n, seed, t);
        for (MuPair { a, b, s }, _) in nabs_histogram(&g, 3).unwrap() {
            if a > n || b > chi {
                continue;
            }
            // a connected set's crossing edges have the parity of 3b − a
            let bound = xyz_bound(chi, n, a, b, s).unwrap();
            prop_assert_eq!((3 * b + a + s) % 2, 0);
            prop_assert_eq!(bound.product.clone(), bound.x * bound.y * bound.z);
        }
    }

    #[test]
    fn wilson_interval_brackets_estimate(k in 0u64..500, extra in 0u64..500) {
        let trials = k + extra + 1;
        let (lo, hi) = wilson_interval(k, trials, Z95);
        let p = k as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }
}
