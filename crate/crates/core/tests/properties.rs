//! Property tests over randomly generated self-loop graphs.

use proptest::prelude::*;

use sle_core::bounds;
use sle_core::graph::SelfLoopGraph;
use sle_core::spectral::{self, DEFAULT_TOL};

/// Random graph of order 1..=5 by independent edge and loop bits.
fn arb_graph() -> impl Strategy<Value = SelfLoopGraph> {
    (1usize..=5).prop_flat_map(|n| {
        let max_bits = n * (n + 1) / 2;
        (Just(n), 0u64..(1u64 << max_bits)).prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if (bits >> k) & 1 == 1 {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let loops: Vec<usize> = (0..n).filter(|v| (bits >> (k + v)) & 1 == 1).collect();
            SelfLoopGraph::from_edge_list(n, &edges, &loops).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_with_trace_sigma(g in arb_graph()) {
        let a = g.adjacency_matrix();
        let n = g.order();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(a.get(i, j), a.get(j, i));
            }
        }
        prop_assert_eq!(a.trace(), g.loop_count());
    }

    #[test]
    fn canonical_code_is_permutation_invariant(g in arb_graph(), seed in any::<u64>()) {
        let n = g.order();
        // permute vertices by a seeded Fisher-Yates shuffle
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let loops: Vec<usize> = g.loops().map(|v| perm[v]).collect();
        let h = SelfLoopGraph::from_edge_list(n, &edges, &loops).unwrap();
        prop_assert_eq!(g.canonical_code().unwrap(), h.canonical_code().unwrap());
    }

    #[test]
    fn components_partition_counts(g in arb_graph()) {
        let comps = g.connected_components();
        prop_assert_eq!(comps.iter().map(|c| c.order()).sum::<usize>(), g.order());
        prop_assert_eq!(comps.iter().map(|c| c.edge_count()).sum::<usize>(), g.edge_count());
        prop_assert_eq!(comps.iter().map(|c| c.loop_count()).sum::<usize>(), g.loop_count());
    }

    #[test]
    fn disjoint_union_is_associative_up_to_isomorphism(
        a in arb_graph(), b in arb_graph(), c in arb_graph()
    ) {
        prop_assume!(a.order() + b.order() + c.order() <= 8);
        let left = a.disjoint_union(&b).disjoint_union(&c);
        let right = a.disjoint_union(&b.disjoint_union(&c));
        prop_assert_eq!(left.canonical_code().unwrap(), right.canonical_code().unwrap());
    }

    #[test]
    fn trace_identities_hold(g in arb_graph()) {
        let spec = spectral::eigenvalues(&g, DEFAULT_TOL).unwrap();
        prop_assert!(spectral::trace_residuals(&g, &spec).max() < 1e-10);
    }

    #[test]
    fn spectral_radius_is_first_eigenvalue(g in arb_graph()) {
        let spec = spectral::eigenvalues(&g, DEFAULT_TOL).unwrap();
        let rho = spectral::spectral_radius(&g).unwrap();
        prop_assert!((rho - spec.lambda_max()).abs() < 1e-10);
    }

    #[test]
    fn bounds_sandwich_the_energy(g in arb_graph()) {
        let r = bounds::bound_report(&g, bounds::DEFAULT_EQ_TOL).unwrap();
        let slack = 1e-9 * r.energy.max(1.0);
        prop_assert!(r.energy <= r.gutman_upper + slack);
        prop_assert!(r.energy <= r.improved_upper + slack);
        prop_assert!(r.improved_upper <= r.gutman_upper + slack);
        prop_assert!(r.spectral_lower.value <= r.energy + slack);
        prop_assert!(r.ozeki_lower.value <= r.energy + slack);
        if let Some(b) = r.spread_ratio_lower {
            prop_assert!(b <= r.energy + slack);
        }
        prop_assert!(r.lambda1_lower <= r.lambda1 + slack);
        prop_assert!(r.lambda1 <= r.lambda1_upper + slack);
        prop_assert!(r.pair_product_lhs >= r.pair_product_rhs - slack);
    }

    #[test]
    fn ultimate_energy_of_spectrum_is_graph_energy(g in arb_graph()) {
        let spec = spectral::eigenvalues(&g, DEFAULT_TOL).unwrap();
        let mu = spectral::shifted_spectrum(&spec, g.order(), g.loop_count());
        let e = bounds::energy(&mu);
        // same formula up to the rounding of the mean
        prop_assert!((bounds::ultimate_energy(spec.values()) - e).abs() < 1e-9);
    }

    #[test]
    fn connectivity_simplicity_of_perron_root(g in arb_graph()) {
        prop_assume!(g.order() >= 2 && g.is_connected());
        let spec = spectral::eigenvalues(&g, DEFAULT_TOL).unwrap();
        prop_assert!(spec.values()[0] - spec.values()[1] > 1e-9);
    }
}
