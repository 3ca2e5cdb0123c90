//! Structural invariants on random small graphs.

use proptest::prelude::*;
use ufgraph_core::abrams::{is_sufficiently_subdivided, sufficient_subdivision, CubicalComplex};
use ufgraph_core::cograph::{cograph_of, cotree_of, enumerate_cotrees, is_cograph};
use ufgraph_core::graph::{betti1, complement, is_isomorphic, subdivide_uniform};
use ufgraph_core::homology::Homology;
use ufgraph_core::swiatkowski::verify_support_bound;
use ufgraph_core::SimpleGraph;

fn graph_from_mask(n: usize, mask: u32) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SimpleGraph::from_edges(n, &edges).unwrap()
}

fn small_graph(max: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max, any::<u32>()).prop_map(|(n, m)| graph_from_mask(n, m))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(g in small_graph(7)) {
        let h = complement(&complement(&g));
        prop_assert_eq!(h.ids(), g.ids());
        prop_assert!((0..g.order()).all(|a| (0..g.order()).all(|b| g.has_edge(a, b) == h.has_edge(a, b))));
        prop_assert_eq!(g.size() + complement(&g).size(), g.order() * (g.order() - 1) / 2);
    }

    #[test]
    fn complexes_are_chain_complexes(g in small_graph(5), n in 1usize..=3) {
        for ordered in [false, true] {
            let cx = CubicalComplex::build(&g, n, ordered);
            let c = cx.chain_complex();
            for d in 1..c.top() {
                prop_assert!(c.boundary(d).mul(c.boundary(d + 1)).unwrap().is_zero());
            }
            let s = Homology::compute(c.clone()).summary();
            let chi: i64 = s.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            prop_assert_eq!(chi, cx.euler_characteristic());
        }
    }

    #[test]
    fn ordered_cells_cover_unordered_freely(g in small_graph(5), n in 1usize..=3) {
        let u = CubicalComplex::build(&g, n, false).cell_counts();
        let o = CubicalComplex::build(&g, n, true).cell_counts();
        prop_assert_eq!(u.len(), o.len());
        for (a, b) in u.iter().zip(&o) {
            prop_assert_eq!(a * factorial(n), *b);
        }
    }

    #[test]
    fn subdivision_keeps_cycle_rank_and_homology(g in small_graph(4)) {
        let r = sufficient_subdivision(&g, 2);
        prop_assert!(is_sufficiently_subdivided(&r.subdivided, 2));
        prop_assert_eq!(betti1(&r.subdivided), betti1(&g));
        let finer = subdivide_uniform(&r.subdivided, 2).subdivided;
        let a = Homology::compute(CubicalComplex::build(&r.subdivided, 2, false).into_chain_complex()).summary();
        let b = Homology::compute(CubicalComplex::build(&finer, 2, false).into_chain_complex()).summary();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cotrees_round_trip(leaves in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let all = enumerate_cotrees(leaves);
        let t = &all[pick.index(all.len())];
        let g = cograph_of(t).unwrap();
        prop_assert!(is_cograph(&g));
        prop_assert!(is_cograph(&complement(&g)));
        let back = cotree_of(&g).unwrap();
        prop_assert_eq!(back.canonical_code(), t.canonical_code());
        prop_assert!(is_isomorphic(&cograph_of(&back).unwrap(), &g));
    }

    #[test]
    fn cograph_supports_are_bounded(leaves in 1usize..=5, pick in any::<prop::sample::Index>(), n in 1usize..=3) {
        let all = enumerate_cotrees(leaves);
        let g = cograph_of(&all[pick.index(all.len())]).unwrap();
        for i in 0..=n {
            prop_assert!(verify_support_bound(&g, i, n).passed());
        }
    }
}
