use super::*;
use crate::graph::{family, subdivide_uniform, Family};
use crate::homology::{induced_on_homology, smith, span_and_test, Homology};
use num_bigint::BigInt;
use num_traits::One;

fn g(f: Family) -> SimpleGraph {
    family(&f).unwrap()
}

/// Count cells straight from the definition: n-tuples of slots with
/// pairwise disjoint closures.
fn brute_counts(g: &SimpleGraph, n: usize, ordered: bool) -> Vec<usize> {
    let slots: Vec<Vec<usize>> = (0..g.order())
        .map(|v| vec![v])
        .chain(g.edges().iter().map(|&(a, b)| vec![a, b]))
        .collect();
    let mut counts = vec![0usize; n + 1];
    let total = slots.len();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let ok = (0..n).all(|a| {
            (a + 1..n).all(|b| idx[a] != idx[b] && slots[idx[a]].iter().all(|v| !slots[idx[b]].contains(v)))
        });
        let increasing = idx.windows(2).all(|w| w[0] < w[1]);
        if ok && (ordered || increasing) {
            counts[idx.iter().filter(|&&s| s >= g.order()).count()] += 1;
        }
        for k in 0..n {
            idx[k] += 1;
            if idx[k] < total {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts
}

fn betti(cx: &CubicalComplex) -> Vec<usize> {
    let mut b = Homology::compute(cx.chain_complex().clone()).summary().betti;
    while b.len() > 1 && *b.last().unwrap() == 0 {
        b.pop();
    }
    b
}

#[test]
fn spec_cell_counts() {
    assert_eq!(build_discretized(&g(Family::Complete(2)), 2, true).cell_counts(), vec![2]);
    let p4 = g(Family::Path(4));
    let cx = build_discretized(&p4, 2, true);
    assert_eq!(cx.cell_counts(), vec![12, 12, 2]);
    assert_eq!(cx.euler_characteristic(), 2);
    let c4 = build_discretized(&g(Family::Cycle(4)), 2, true);
    assert_eq!(c4.cell_counts(), vec![12, 16, 4]);
    assert_eq!(c4.euler_characteristic(), 0);
    let k5 = build_discretized(&g(Family::Complete(5)), 2, false);
    assert_eq!(k5.cell_counts(), vec![10, 30, 15]);
    assert_eq!(k5.euler_characteristic(), -5);
}

#[test]
fn counts_match_definition() {
    let graphs = [
        g(Family::Complete(4)),
        g(Family::Star(3)),
        g(Family::Theta(1, 2, 2)),
        g(Family::Cycle(5)),
        g(Family::CompleteBipartite(2, 3)),
    ];
    for gr in &graphs {
        for n in 1..=3 {
            let un = build_discretized(gr, n, false);
            let or = build_discretized(gr, n, true);
            assert_eq!(un.cell_counts(), brute_counts(gr, n, false));
            assert_eq!(or.cell_counts(), brute_counts(gr, n, true));
            let fact: usize = (1..=n).product();
            assert!(or.cell_counts().iter().zip(un.cell_counts()).all(|(a, b)| *a == b * fact));
        }
    }
}

#[test]
fn classical_values() {
    assert_eq!(betti(&build_discretized(&g(Family::Complete(2)), 2, true)), vec![2]);
    assert_eq!(betti(&build_discretized(&g(Family::Cycle(4)), 2, true)), vec![1, 1]);
    let un = build_discretized(&g(Family::Complete(5)), 2, false);
    let h = Homology::compute(un.chain_complex().clone()).summary();
    let alt: i64 = h.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    assert_eq!(alt, -5);
    // compare with Smith forms of the raw boundary matrices
    let cx = un.chain_complex();
    let mut ranks = vec![0usize; cx.top() + 2];
    for d in 1..=cx.top() {
        let m = cx.boundary(d);
        ranks[d] = smith(m.to_dense::<BigInt>(), m.rows(), m.cols(), false, false).unwrap().rank();
    }
    for d in 0..=cx.top() {
        assert_eq!(h.betti[d], cx.dim(d) - ranks[d] - ranks[d + 1]);
    }
}

#[test]
fn sufficiency_predicate() {
    assert!(is_sufficiently_subdivided(&g(Family::Cycle(3)), 2));
    assert!(!is_sufficiently_subdivided(&g(Family::Complete(2)), 2));
    assert!(is_sufficiently_subdivided(&g(Family::Path(4)), 2));
    for f in [Family::Complete(4), Family::Star(3), Family::Theta(1, 2, 2), Family::Complete(2)] {
        let gr = g(f);
        for n in 1..=3 {
            let s = sufficient_subdivision(&gr, n);
            assert!(is_sufficiently_subdivided(&s.subdivided, n));
        }
    }
    let c9 = sufficient_subdivision(&g(Family::Cycle(3)), 2).subdivided;
    assert_eq!((c9.order(), c9.size()), (9, 9));
}

#[test]
fn subdivision_invariance_small() {
    for f in [Family::Star(3), Family::Cycle(3), Family::Theta(1, 2, 2)] {
        let base = sufficient_subdivision(&g(f), 2).subdivided;
        let once = subdivide_uniform(&base, 2);
        for ordered in [false, true] {
            let a = build_discretized(&base, 2, ordered);
            let b = build_discretized(&once.subdivided, 2, ordered);
            assert_eq!(betti(&a), betti(&b));
            let f = subdivision_chain_map(&once, &a, &b).unwrap();
            let ha = Homology::compute(a.chain_complex().clone());
            let hb = Homology::compute(b.chain_complex().clone());
            for d in 0..=1 {
                let cols = induced_on_homology(&f, &ha, &hb, d).unwrap();
                assert!(span_and_test(&hb.presentation(d), &cols).unwrap().1);
            }
        }
    }
}

#[test]
fn inclusion_maps() {
    let p4 = g(Family::Path(4));
    let (edge, _) = p4.edge_subgraph(&[0]);
    let big = build_discretized(&p4, 2, true);
    let small = build_discretized(&edge, 2, true);
    assert_eq!(small.cell_counts(), vec![2]);
    let f = inclusion_chain_map(&small, &big).unwrap();
    assert_eq!(f.degree(0).unwrap().nnz(), 2);
    let id = inclusion_chain_map(&big, &big).unwrap();
    assert_eq!(id.degree(1).unwrap(), &crate::homology::SparseMatrix::identity(12));

    let c8 = g(Family::Cycle(8));
    let (arc, _) = c8.edge_subgraph(&[0, 1, 2, 3]);
    let arc_cx = build_discretized(&arc, 2, false);
    let c8_cx = build_discretized(&c8, 2, false);
    let f = inclusion_chain_map(&arc_cx, &c8_cx).unwrap();
    let ha = Homology::compute(arc_cx.chain_complex().clone());
    let hc = Homology::compute(c8_cx.chain_complex().clone());
    assert_eq!(hc.betti(1), 1);
    let m = induced_on_homology(&f, &ha, &hc, 1).unwrap();
    assert!(m.iter().flatten().all(|x| *x == BigInt::from(0)));
    let m0 = induced_on_homology(&f, &ha, &hc, 0).unwrap();
    assert_eq!(m0, vec![vec![BigInt::one()]]);

    let k4 = build_discretized(&g(Family::Complete(4)), 2, true);
    let c5 = build_discretized(&g(Family::Cycle(5)), 2, true);
    assert!(inclusion_chain_map(&c5, &k4).is_err());
}

#[test]
fn unordered_inclusion_with_reversed_ids() {
    // the subgraph lists its vertices in a different order
    let tri = SimpleGraph::new(&[0, 1, 2, 3], &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let sub = SimpleGraph::new(&[2, 1, 0], &[(2, 1), (1, 0), (0, 2)]).unwrap();
    for ordered in [false, true] {
        let a = build_discretized(&sub, 2, ordered);
        let b = build_discretized(&tri, 2, ordered);
        let f = inclusion_chain_map(&a, &b).unwrap();
        let ha = Homology::compute(a.chain_complex().clone());
        let hb = Homology::compute(b.chain_complex().clone());
        induced_on_homology(&f, &ha, &hb, 1).unwrap();
    }
}

#[test]
fn cell_generators() {
    let r = cell_generators_check(&g(Family::Cycle(4)), 1, 2);
    assert_eq!((r.cells, r.witnessed), (16, 16));
    assert!(r.passed());
    assert_eq!(r.source_cells, 2);
    let r = cell_generators_check(&g(Family::Complete(2)), 2, 2);
    assert_eq!(r.cells, 0);
    assert!(r.passed());
    let r = cell_generators_check(&g(Family::Path(4)), 2, 2);
    assert_eq!(r.cells, 2);
    assert!(r.passed());
    for gr in crate::graph::graphs_up_to_iso(5) {
        for n in 1..=3 {
            for i in 0..=n {
                let r = cell_generators_check(&gr, i, n);
                assert!(r.passed());
                assert_eq!(r.source_cells, (1..=n).product::<usize>());
            }
        }
    }
}
