use super::*;
use crate::abrams::inclusion_chain_map;
use crate::graph::{family, Family};
use crate::homology::induced_on_homology;

fn g(f: Family) -> SimpleGraph {
    family(&f).unwrap()
}

/// Image of `H_i(D_n(H))` computed the long way: a standalone complex for
/// `H`, its inclusion into the ambient complex and the induced map.
fn standalone_image(amb: &Ambient, h: &SimpleGraph) -> Vec<Vec<BigInt>> {
    let cx = CubicalComplex::build(h, amb.particles(), amb.is_ordered());
    let hs = Homology::compute(cx.chain_complex().clone());
    let f = inclusion_chain_map(&cx, amb.complex()).unwrap();
    induced_on_homology(&f, &hs, amb.homology(), amb.degree()).unwrap()
}

/// Span over every edge subset of `G''` that the filter admits and that is
/// sufficiently subdivided, with no pruning of any kind.
fn brute_stage(amb: &Ambient, filter: StageFilter) -> Subgroup {
    let sub = amb.graph().clone();
    let m = sub.size();
    assert!(m <= 18);
    let mut rows = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let h = sub.edge_subgraph(&edges).0;
        if !is_sufficiently_subdivided(&h, amb.particles()) || !filter.admits(&h).unwrap() {
            continue;
        }
        rows.extend(standalone_image(amb, &h));
    }
    Subgroup::generated_by(amb.presentation(), &rows).unwrap()
}

#[test]
fn generator_list_rejects_homeomorphic_entries() {
    let err = GeneratorList::new(vec![g(Family::Cycle(3)), g(Family::Cycle(5))]).unwrap_err();
    assert!(matches!(err, Error::InvalidGenerators(_)));
    let ok = GeneratorList::new(vec![g(Family::Cycle(4)), g(Family::Star(3))]).unwrap();
    assert_eq!(ok.entries()[0].order(), 3);
    let types = GeneratorList::subgraph_types(&g(Family::Complete(4))).unwrap();
    assert!(is_isomorphic(&types.entries()[0], &g(Family::Complete(4))));
    for (a, x) in types.entries().iter().enumerate() {
        for y in &types.entries()[a + 1..] {
            assert!(!is_isomorphic(x, y));
        }
    }
}

#[test]
fn examples() {
    let c3 = g(Family::Cycle(3));
    let star = g(Family::Star(3));
    let r = generation_check(&c3, 1, 2, &GeneratorList::circle(), 0).unwrap();
    assert!(r.is_generated);
    assert_eq!(r.level, 0);
    assert_eq!(r.ambient.free, 1);
    assert!(r.generators[0].witness.is_some());

    let r = generation_check(&star, 1, 2, &GeneratorList::circle(), 0).unwrap();
    assert!(!r.is_generated);
    assert_eq!(r.ambient.free, 1);
    assert_eq!(r.generators[0].morphisms, 0);
    assert!(r.level <= DEFAULT_MAX_LEVEL);
    assert_eq!(r.levels.last().unwrap().agrees_with_previous, Some(true));

    for graph in [c3, star, g(Family::Theta(1, 2, 2)), g(Family::Complete(4))] {
        let own = GeneratorList::new(vec![graph.clone()]).unwrap();
        for (i, n) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
            let r = generation_check(&graph, i, n, &own, 0).unwrap();
            assert!(r.is_generated, "{:?} i={} n={}", graph.edges(), i, n);
            assert_eq!(r.level, 0);
        }
    }
}

#[test]
fn stage_examples() {
    let c3 = g(Family::Cycle(3));
    let b0 = betti_stage(&c3, 1, 2, 0, 0).unwrap();
    assert_eq!(b0.rank(), 0);
    assert!(betti_stage(&c3, 1, 2, 1, 0).unwrap().is_everything());
    assert!(robertson_stage(&c3, 1, 2, 2, 0).unwrap().is_everything());
    assert_eq!(robertson_stage(&c3, 1, 2, 1, 0).unwrap().hnf, b0.hnf);
    let k4 = g(Family::Complete(4));
    assert!(betti_stage(&k4, 1, 2, 3, 0).unwrap().is_everything());
    assert!(robertson_stage(&k4, 1, 2, 0, 0).is_err());
    assert_eq!(StageFilter::parse("betti:2").unwrap(), StageFilter::Betti(2));
    assert_eq!(StageFilter::parse("robertson:1").unwrap(), StageFilter::Robertson(1));
    assert!(StageFilter::parse("robertson:0").is_err());
    assert!(StageFilter::parse("genus:1").is_err());
}

#[test]
fn stages_match_exhaustive_subgraphs() {
    let graphs = [
        g(Family::Cycle(3)),
        g(Family::Star(3)),
        g(Family::Path(4)),
        SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
    ];
    let filters = [StageFilter::Betti(0), StageFilter::Betti(1), StageFilter::Robertson(1), StageFilter::Robertson(2)];
    for graph in &graphs {
        let mut amb = Ambient::new(graph, 1, 2, true, 0).unwrap();
        for f in filters {
            let fast = stage_in(&mut amb, f).unwrap().subgroup;
            let slow = brute_stage(&amb, f);
            assert_eq!(fast, slow, "{:?} {:?}", graph.edges(), f);
        }
    }
}

#[test]
fn filtration_containments_on_k4() {
    let k4 = g(Family::Complete(4));
    let mut amb = Ambient::new(&k4, 1, 2, true, 0).unwrap();
    let b: Vec<Subgroup> = (0..=3).map(|x| stage_in(&mut amb, StageFilter::Betti(x)).unwrap().subgroup).collect();
    let r: Vec<Subgroup> = (1..=3).map(|x| stage_in(&mut amb, StageFilter::Robertson(x)).unwrap().subgroup).collect();
    for x in 0..3 {
        assert!(b[x + 1].contains(&b[x]).unwrap());
        assert!(r[x].contains(&b[x]).unwrap());
    }
    for x in 0..2 {
        assert!(r[x + 1].contains(&r[x]).unwrap());
    }
    assert!(b[3].is_everything());
}

#[test]
fn deduplication_keeps_the_span() {
    for graph in [g(Family::Complete(4)), g(Family::Theta(1, 2, 2))] {
        let mut amb = Ambient::new(&graph, 1, 2, true, 0).unwrap();
        let gens = GeneratorList::circle();
        let (fast, stats) = generation_at(&mut amb, &gens, false);
        let target = Arc::new(amb.graph().clone());
        let source = Arc::new(gens.entries()[0].clone());
        let mut rows = Vec::new();
        let mut count = 0;
        for_each_tm(&source, &target, EmbeddingKind::Tm, |m| {
            let h = target.subgraph(&m.image_vertices(), &m.image_edges()).0;
            if is_sufficiently_subdivided(&h, 2) {
                count += 1;
                rows.extend(standalone_image(&amb, &h));
            }
            ControlFlow::Continue(())
        });
        assert_eq!(count, stats[0].morphisms);
        assert_eq!(fast, Subgroup::generated_by(amb.presentation(), &rows).unwrap());
    }
}

#[test]
fn pushforward_between_levels() {
    let theta = g(Family::Theta(1, 2, 2));
    let amb = Ambient::new(&theta, 1, 2, true, 0).unwrap();
    let (next, step) = amb.refine();
    assert_eq!(next.presentation(), amb.presentation());
    let all = Subgroup::everything(amb.presentation());
    assert!(amb.push_forward(&next, &step, &all).unwrap().is_everything());
    let mut amb = amb;
    let mut next = next;
    let a = stage_in(&mut amb, StageFilter::Betti(1)).unwrap().subgroup;
    let b = stage_in(&mut next, StageFilter::Betti(1)).unwrap().subgroup;
    assert!(b.contains(&amb.push_forward(&next, &step, &a).unwrap()).unwrap());
}

#[test]
fn self_generation() {
    for graph in [g(Family::Star(3)), g(Family::Theta(1, 2, 2)), g(Family::Complete(4)), g(Family::Path(3))] {
        let gens = GeneratorList::subgraph_types(&graph).unwrap();
        let r = generation_check(&graph, 1, 2, &gens, 0).unwrap();
        assert!(r.is_generated);
        assert!(r.generators.iter().skip(1).all(|s| !s.evaluated));
    }
}
