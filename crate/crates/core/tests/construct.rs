use expander_forge::cheeger::{cheeger_exact, cheeger_exact_with_guard, cheeger_upper};
use expander_forge::construct::{
    expander_family, k33, k4, petersen, plant_trees, planted_cheeger_bound, FamilySpec,
    StandardBaseProvider,
};
use expander_forge::graph::topology;
use num_rational::Ratio;

/// Largest planted graph the exact search is asked to handle here.
const EXACT_LIMIT: usize = 42;

#[test]
fn planted_cheeger_bound_holds_for_named_bases() {
    for (name, base) in [("K4", k4()), ("K33", k33()), ("Petersen", petersen())] {
        let h_base = cheeger_exact(&base).unwrap().h;
        for k in [1, 2] {
            let g = plant_trees(&base, k).unwrap();
            let bound = planted_cheeger_bound(h_base, k);
            if g.vertex_count() <= EXACT_LIMIT {
                let h = cheeger_exact_with_guard(&g, EXACT_LIMIT).unwrap().h;
                assert!(h >= bound, "{name}, k={k}: h={h} < {bound}");
            } else {
                // too large for the exact search: only a consistency check
                let upper = cheeger_upper(&g, true).unwrap().h;
                assert!(upper >= bound, "{name}, k={k}: upper {upper} < {bound}");
            }
        }
    }
}

#[test]
fn planted_topology() {
    for (base, m) in [(k4(), 2usize), (k33(), 3), (petersen(), 5)] {
        for k in 1..=3 {
            let g = plant_trees(&base, k).unwrap();
            assert_eq!(g.vertex_count(), 2 * m + 6 * m * k);
            assert_eq!(g.boundary_count(), 3 * m * k);
            assert_eq!(g.interior_count(), 2 * m + 3 * m * k);
            assert_eq!(topology(&g).unwrap().genus, m as i64 + 1);
        }
    }
}

#[test]
fn small_family_members_are_expanding() {
    let provider = StandardBaseProvider::default();
    for theta in [1u64, 3] {
        let spec = FamilySpec::new(Ratio::from_integer(theta)).unwrap();
        let floor = Ratio::new(1, 6 * (theta + 4));
        for g in 2..=5 {
            let member = expander_family(&spec, g, &provider).unwrap();
            let graph = &member.graph;
            if graph.vertex_count() > EXACT_LIMIT {
                continue;
            }
            let h = cheeger_exact_with_guard(graph, EXACT_LIMIT).unwrap().h;
            assert!(h >= floor, "θ={theta}, g={g}: h={h}");
            assert!(h >= member.h_lower.unwrap());
        }
    }
}
