//! Acceptance suites. Each criterion recomputes its values and checks them
//! against an independent route: brute-force enumeration straight from a
//! definition, a dense Smith form of the full boundary matrices, or a frozen
//! golden file. Every comparison is exact; the only tolerances are the
//! wall-clock budgets below.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use ufgraph_core::abrams::{inclusion_chain_map, is_sufficiently_subdivided, sufficient_subdivision, CubicalComplex};
use ufgraph_core::cograph::{cograph_of, cotree_of, enumerate_cotrees, is_cograph};
use ufgraph_core::generation::{
    generation_at, generation_check, stage_in, Ambient, GeneratorList, StageFilter,
};
use ufgraph_core::graph::{family, graphs_up_to_iso, is_isomorphic, subdivide_uniform, Family};
use ufgraph_core::homology::{induced_on_homology, smith, ChainComplex, Homology, HomologySummary, Subgroup};
use ufgraph_core::morphism::{for_each_tm, gtm_k_member, has_topological_minor, EmbeddingKind};
use ufgraph_core::swiatkowski::verify_support_bound;
use ufgraph_core::SimpleGraph;

use crate::formats::counts_table;

/// Frozen table for unordered `D_2(K_5)`.
pub const GOLDEN_UD2_K5: &str = include_str!("../golden/ud2_k5.txt");

/// Wall-clock budget per criterion, in seconds.
pub const BUDGETS: [(u8, u64); 8] = [(1, 60), (2, 120), (3, 30), (4, 600), (5, 300), (6, 600), (7, 600), (8, 900)];

/// Cotrees (equivalently cographs) on 1..=8 leaves up to isomorphism.
pub const COGRAPH_COUNTS: [usize; 8] = [1, 2, 4, 10, 24, 66, 180, 522];

/// Connected graphs on exactly 7 vertices.
pub const CONNECTED_ON_SEVEN: usize = 853;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Abrams,
    Swiatkowski,
    Cograph,
    Morphisms,
    Filtrations,
}

impl Suite {
    pub fn parse(token: &str) -> Option<Suite> {
        Some(match token {
            "all" => Suite::All,
            "abrams" => Suite::Abrams,
            "swiatkowski" => Suite::Swiatkowski,
            "cograph" => Suite::Cograph,
            "morphisms" => Suite::Morphisms,
            "filtrations" => Suite::Filtrations,
            _ => return None,
        })
    }

    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8],
            Suite::Abrams => &[1, 2, 3],
            Suite::Morphisms => &[4],
            Suite::Swiatkowski => &[5],
            Suite::Cograph => &[6],
            Suite::Filtrations => &[7, 8],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    /// Every exact check held.
    pub correct: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.correct && self.elapsed <= self.budget
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.1} s of {} s) {}",
            self.id,
            self.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

/// Collects failed checks with a short description each.
#[derive(Default)]
struct Checks {
    count: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Checks) {
        self.count += other.count;
        self.failures.extend(other.failures);
    }

    fn finish(self, summary: String) -> (bool, String) {
        if self.failures.is_empty() {
            (true, format!("{}; {} checks", summary, self.count))
        } else {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            (false, format!("{}; {} of {} checks failed: {}", summary, self.failures.len(), self.count, shown.join("; ")))
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<Outcome> {
    suite.criteria().iter().map(|&id| run_criterion(id)).collect()
}

pub fn run_criterion(id: u8) -> Outcome {
    let start = Instant::now();
    let (title, (correct, detail)) = match id {
        1 => ("abrams invariance", abrams_invariance()),
        2 => ("euler and boundary sanity", euler_boundary()),
        3 => ("classical small values", classical_values()),
        4 => ("antichain and gtm_1", antichain()),
        5 => ("support bound", support_bound()),
        6 => ("cotree round trip", cotree_round_trip()),
        7 => ("filtration containments", filtrations()),
        8 => ("generation oracle", generation_oracle()),
        _ => ("unknown", (false, format!("no criterion {}", id))),
    };
    let budget = BUDGETS.iter().find(|b| b.0 == id).map_or(0, |b| b.1);
    Outcome { id, title, correct, detail, elapsed: start.elapsed(), budget: Duration::from_secs(budget) }
}

fn g(f: Family) -> SimpleGraph {
    family(&f).expect("family parameters are valid")
}

fn trimmed(mut b: Vec<usize>) -> Vec<usize> {
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

/// Homology from dense Smith forms of the whole boundary matrices, with no
/// sparse elimination: `b_d = dim C_d - rank d_d - rank d_{d+1}` and torsion
/// the non-unit invariant factors of `d_{d+1}`.
pub fn dense_oracle(cx: &ChainComplex) -> HomologySummary {
    let top = cx.top();
    let mut ranks = vec![0usize; top + 2];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for d in 1..=top {
        let m = cx.boundary(d);
        let dense = m.to_dense::<BigInt>();
        let s = smith(dense, m.rows(), m.cols(), false, false).expect("bigint arithmetic");
        ranks[d] = s.rank();
        factors[d] = s.diag.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
    }
    let betti = (0..=top).map(|d| cx.dim(d) - ranks[d] - ranks[d + 1]).collect();
    let torsion = (0..=top).map(|d| factors[d + 1].clone()).collect();
    HomologySummary { betti, torsion }
}

/// Cell counts per dimension straight from the definition: `n` slots
/// (vertices or edges) with pairwise disjoint closures, as sequences or as
/// sets.
pub fn brute_cell_counts(graph: &SimpleGraph, n: usize, ordered: bool) -> Vec<usize> {
    let slots: Vec<Vec<usize>> = (0..graph.order())
        .map(|v| vec![v])
        .chain(graph.edges().iter().map(|&(a, b)| vec![a, b]))
        .collect();
    let mut counts = vec![0usize; n + 1];
    let mut pick: Vec<usize> = Vec::with_capacity(n);
    fn go(slots: &[Vec<usize>], order: usize, n: usize, ordered: bool, pick: &mut Vec<usize>, counts: &mut [usize]) {
        if pick.len() == n {
            counts[pick.iter().filter(|&&s| s >= order).count()] += 1;
            return;
        }
        let from = if ordered { 0 } else { pick.last().map_or(0, |&x| x + 1) };
        for s in from..slots.len() {
            let clash = pick.iter().any(|&p| p == s || slots[p].iter().any(|v| slots[s].contains(v)));
            if !clash {
                pick.push(s);
                go(slots, order, n, ordered, pick, counts);
                pick.pop();
            }
        }
    }
    go(&slots, graph.order(), n, ordered, &mut pick, &mut counts);
    trimmed(counts)
}

fn abrams_invariance() -> (bool, String) {
    let graphs = [("star3", g(Family::Star(3))), ("c3", g(Family::Cycle(3))), ("theta", g(Family::Theta(1, 2, 2)))];
    let mut cases = Vec::new();
    for (name, graph) in &graphs {
        for n in [2, 3] {
            cases.push((*name, graph.clone(), n, false));
        }
        cases.push((*name, graph.clone(), 2, true));
    }
    let results: Vec<Checks> = cases
        .par_iter()
        .map(|(name, graph, n, ordered)| {
            let mut c = Checks::default();
            let mut record = sufficient_subdivision(graph, *n);
            let mut seen: Vec<Vec<usize>> = Vec::new();
            for _ in 0..3 {
                let cx = CubicalComplex::build(&record.subdivided, *n, *ordered);
                seen.push(trimmed(Homology::compute(cx.into_chain_complex()).summary().betti));
                record = record.then(&subdivide_uniform(&record.subdivided, 2));
            }
            c.check(seen.windows(2).all(|w| w[0] == w[1]), || {
                format!("{} n={} ordered={}: betti {:?}", name, n, ordered, seen)
            });
            c
        })
        .collect();
    let mut all = Checks::default();
    results.into_iter().for_each(|c| all.merge(c));
    all.finish(format!("{} cases over 3 levels", cases.len()))
}

fn euler_boundary() -> (bool, String) {
    let mut corpus: Vec<(SimpleGraph, usize, bool)> = Vec::new();
    for k in 1..=4 {
        for graph in graphs_up_to_iso(k) {
            for n in 1..=3 {
                for ordered in [false, true] {
                    corpus.push((graph.clone(), n, ordered));
                }
            }
        }
    }
    corpus.push((g(Family::Complete(5)), 2, false));
    corpus.push((g(Family::Complete(5)), 2, true));
    corpus.push((g(Family::CompleteBipartite(3, 3)), 2, false));
    let results: Vec<Checks> = corpus
        .par_iter()
        .map(|(graph, n, ordered)| {
            let mut c = Checks::default();
            let cx = CubicalComplex::build(graph, *n, *ordered);
            let chain = cx.chain_complex();
            for d in 1..chain.top() {
                let dd = chain.boundary(d).mul(chain.boundary(d + 1)).expect("small entries");
                c.check(dd.is_zero(), || format!("{:?} n={}: dd nonzero in degree {}", graph.edges(), n, d));
            }
            let s = Homology::compute(chain.clone()).summary();
            let chi_betti: i64 = s.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            c.check(cx.euler_characteristic() == chi_betti, || {
                format!("{:?} n={}: chi {} vs {}", graph.edges(), n, cx.euler_characteristic(), chi_betti)
            });
            c
        })
        .collect();
    let mut all = Checks::default();
    results.into_iter().for_each(|c| all.merge(c));
    all.finish(format!("{} complexes", corpus.len()))
}

fn classical_values() -> (bool, String) {
    let mut c = Checks::default();
    let k2 = CubicalComplex::build(&g(Family::Complete(2)), 2, true);
    let b = trimmed(Homology::compute(k2.chain_complex().clone()).summary().betti);
    c.check(b == [2], || format!("ordered D_2(K_2) betti {:?}", b));
    let c4 = CubicalComplex::build(&g(Family::Cycle(4)), 2, true);
    let b = trimmed(Homology::compute(c4.chain_complex().clone()).summary().betti);
    c.check(b == [1, 1], || format!("ordered D_2(C_4) betti {:?}", b));
    let c4_oracle = trimmed(dense_oracle(c4.chain_complex()).betti);
    c.check(c4_oracle == [1, 1], || format!("oracle D_2(C_4) betti {:?}", c4_oracle));

    let k5 = g(Family::Complete(5));
    let cx = CubicalComplex::build(&k5, 2, false);
    let brute = brute_cell_counts(&k5, 2, false);
    c.check(brute == [10, 30, 15], || format!("enumerated cells {:?}", brute));
    c.check(cx.cell_counts() == brute, || format!("built cells {:?}", cx.cell_counts()));
    c.check(cx.euler_characteristic() == -5, || format!("chi {}", cx.euler_characteristic()));
    let engine = Homology::compute(cx.chain_complex().clone()).summary();
    let oracle = dense_oracle(cx.chain_complex());
    let table = counts_table(&cx.cell_counts(), &engine);
    c.check(engine == oracle, || format!("engine {:?} vs oracle {:?}", engine, oracle));
    c.check(table == GOLDEN_UD2_K5, || format!("table {:?} differs from golden", table));
    c.finish(format!("UD_2(K_5) {}", table.trim().replace('\n', ", ")))
}

fn p4_free(graph: &SimpleGraph) -> bool {
    let n = graph.order();
    let p4 = g(Family::Path(4));
    for a in 0..n {
        for b in a + 1..n {
            for x in b + 1..n {
                for y in x + 1..n {
                    let (h, _) = graph.induced_subgraph(&[a, b, x, y]);
                    if h.size() == 3 && is_isomorphic(&h, &p4) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn antichain() -> (bool, String) {
    let mut c = Checks::default();
    let chains: Vec<SimpleGraph> = (1..=3).map(|j| g(Family::RobertsonChainLeaves(j))).collect();
    for j in 0..3 {
        for k in 0..3 {
            let found = has_topological_minor(&chains[j], &chains[k]);
            c.check(found == (j == k), || format!("R'_{} -> R'_{}: {}", j + 1, k + 1, found));
        }
    }
    let mut seven = 0;
    let mut total = 0;
    for k in 1..=7 {
        let connected: Vec<SimpleGraph> = graphs_up_to_iso(k).into_iter().filter(SimpleGraph::is_connected).collect();
        if k == 7 {
            seven = connected.len();
        }
        total += connected.len();
        let results: Vec<(bool, bool, String)> = connected
            .par_iter()
            .map(|h| (gtm_k_member(h, 1).expect("k >= 1"), h.is_forest(), format!("{:?}", h.edges())))
            .collect();
        for (member, forest, edges) in results {
            c.check(member == forest, || format!("gtm_1 member {} forest {} on {}", member, forest, edges));
        }
    }
    c.check(seven == CONNECTED_ON_SEVEN, || format!("{} connected graphs on 7 vertices", seven));
    c.finish(format!("6 ordered pairs of R'_j, {} connected graphs up to 7 vertices", total))
}

fn all_cographs(max: usize) -> Vec<SimpleGraph> {
    (1..=max).flat_map(enumerate_cotrees).map(|t| cograph_of(&t).expect("valid cotree")).collect()
}

fn support_bound() -> (bool, String) {
    let cographs = all_cographs(6);
    let mut jobs = Vec::new();
    for (idx, _) in cographs.iter().enumerate() {
        for n in 1..=3 {
            for i in 0..=n {
                jobs.push((idx, i, n));
            }
        }
    }
    let results: Vec<(usize, Checks)> = jobs
        .par_iter()
        .map(|&(idx, i, n)| {
            let graph = &cographs[idx];
            let r = verify_support_bound(graph, i, n);
            let mut c = Checks::default();
            c.check(r.ambient_is_cograph, || format!("{:?} not recognized as a cograph", graph.edges()));
            c.check(r.passed() && r.max_support <= 2 * n, || {
                format!("{:?} i={} n={}: {:?}", graph.edges(), i, n, r.violations.first())
            });
            (r.cells, c)
        })
        .collect();
    let mut all = Checks::default();
    let mut cells = 0;
    for (k, c) in results {
        cells += k;
        all.merge(c);
    }
    all.finish(format!("{} cographs, {} (i, n) grids, {} cells", cographs.len(), jobs.len(), cells))
}

fn cotree_round_trip() -> (bool, String) {
    let mut c = Checks::default();
    let counts: Vec<usize> = (1..=8).map(|k| enumerate_cotrees(k).len()).collect();
    c.check(counts == COGRAPH_COUNTS, || format!("cotree counts {:?}", counts));
    let cographs = all_cographs(8);
    let results: Vec<bool> = cographs
        .par_iter()
        .map(|graph| {
            cotree_of(graph).and_then(|t| cograph_of(&t)).map(|back| is_isomorphic(&back, graph)).unwrap_or(false)
        })
        .collect();
    let bad = results.iter().filter(|ok| !**ok).count();
    c.check(bad == 0, || format!("{} cographs fail cograph_of(cotree_of(G)) = G", bad));
    let mut trees = 0;
    for k in 1..=6 {
        for t in enumerate_cotrees(k) {
            trees += 1;
            let back = cograph_of(&t).and_then(|h| cotree_of(&h));
            c.check(back.as_ref().map(|b| b.canonical_code()).ok() == Some(t.canonical_code()), || {
                format!("cotree {} does not come back", t.canonical_code())
            });
        }
    }
    let mut graphs = 0;
    let mut cograph_total = 0;
    for k in 1..=7 {
        let all = graphs_up_to_iso(k);
        graphs += all.len();
        let verdicts: Vec<(bool, bool)> = all.par_iter().map(|h| (is_cograph(h), p4_free(h))).collect();
        let mut here = 0;
        for (a, b) in verdicts {
            here += a as usize;
            c.check(a == b, || format!("is_cograph {} but P4-free {} on {} vertices", a, b, k));
        }
        c.check(here == COGRAPH_COUNTS[k - 1], || format!("{} cographs on {} vertices", here, k));
        cograph_total += here;
    }
    c.finish(format!(
        "{} cographs up to 8 vertices, {} cotrees up to 6 leaves, {} graphs up to 7 vertices ({} cographs)",
        cographs.len(),
        trees,
        graphs,
        cograph_total
    ))
}

fn filtrations() -> (bool, String) {
    let mut c = Checks::default();
    let graphs = [("c3", g(Family::Cycle(3))), ("theta", g(Family::Theta(1, 2, 2))), ("k4", g(Family::Complete(4)))];
    let mut ranks = Vec::new();
    for (name, graph) in &graphs {
        let mut amb = Ambient::new(graph, 1, 2, true, 0).expect("n >= 1");
        let b: Vec<Subgroup> =
            (0..=3).map(|x| stage_in(&mut amb, StageFilter::Betti(x)).expect("small graph").subgroup).collect();
        let r: Vec<Subgroup> =
            (1..=3).map(|k| stage_in(&mut amb, StageFilter::Robertson(k)).expect("small graph").subgroup).collect();
        for x in 0..=2 {
            c.check(b[x + 1].contains(&b[x]).unwrap_or(false), || format!("{}: B_{} not in B_{}", name, x, x + 1));
        }
        for k in 1..=2 {
            c.check(r[k].contains(&r[k - 1]).unwrap_or(false), || format!("{}: R_{} not in R_{}", name, k, k + 1));
        }
        for k in 1..=3 {
            c.check(r[k - 1].contains(&b[k - 1]).unwrap_or(false), || format!("{}: B_{} not in R_{}", name, k - 1, k));
        }
        ranks.push(format!(
            "{} B {:?} R {:?} of {}",
            name,
            b.iter().map(Subgroup::rank).collect::<Vec<_>>(),
            r.iter().map(Subgroup::rank).collect::<Vec<_>>(),
            amb.presentation().free
        ));
        if *name == "c3" {
            c.check(b[0].rank() == 0, || format!("c3: B_0 has rank {}", b[0].rank()));
            c.check(b[1].is_everything(), || "c3: B_1 is not everything".into());
            c.check(r[1].is_everything(), || "c3: R_2 is not everything".into());
            c.check(r[0] == b[0], || "c3: R_1 differs from B_0".into());
        }
    }
    c.finish(ranks.join(", "))
}

/// Image of `H_1(D_2(H))` by a standalone complex for `H` and the induced
/// map of its inclusion.
fn standalone_image(amb: &Ambient, h: &SimpleGraph) -> Vec<Vec<BigInt>> {
    let cx = CubicalComplex::build(h, amb.particles(), amb.is_ordered());
    let hs = Homology::compute(cx.chain_complex().clone());
    let f = inclusion_chain_map(&cx, amb.complex()).expect("subgraph of the ambient graph");
    induced_on_homology(&f, &hs, amb.homology(), amb.degree()).expect("cycles map to cycles")
}

/// Span over every morphism `circle -> G''` with sufficiently subdivided
/// image, each image computed on its own.
fn brute_circle_span(amb: &Ambient) -> (usize, Subgroup) {
    let target = Arc::new(amb.graph().clone());
    let source = Arc::new(g(Family::Cycle(3)));
    let mut images: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for_each_tm(&source, &target, EmbeddingKind::Tm, |m| {
        images.push((m.image_vertices(), m.image_edges()));
        std::ops::ControlFlow::Continue(())
    });
    let rows: Vec<Vec<Vec<BigInt>>> = images
        .par_iter()
        .filter_map(|(vs, es)| {
            let h = target.subgraph(vs, es).0;
            is_sufficiently_subdivided(&h, amb.particles()).then(|| standalone_image(amb, &h))
        })
        .collect();
    let count = rows.len();
    let flat: Vec<Vec<BigInt>> = rows.into_iter().flatten().collect();
    (count, Subgroup::generated_by(amb.presentation(), &flat).expect("ambient coordinates"))
}

/// Span over every edge subset of `G''` admitted by the filter.
fn brute_stage_span(amb: &Ambient, filter: StageFilter) -> Subgroup {
    let sub = amb.graph();
    let m = sub.size();
    let rows: Vec<Vec<BigInt>> = (1u32..(1u32 << m))
        .into_par_iter()
        .flat_map_iter(|mask| {
            let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            let h = sub.edge_subgraph(&edges).0;
            let keep = is_sufficiently_subdivided(&h, amb.particles()) && filter.admits(&h).expect("k >= 1");
            if keep {
                standalone_image(amb, &h)
            } else {
                Vec::new()
            }
        })
        .collect();
    Subgroup::generated_by(amb.presentation(), &rows).expect("ambient coordinates")
}

/// Largest original edge count for which the exhaustive stage oracle runs.
pub const STAGE_ORACLE_MAX_EDGES: usize = 5;

fn generation_oracle() -> (bool, String) {
    let graphs: Vec<SimpleGraph> =
        (1..=5).flat_map(graphs_up_to_iso).filter(SimpleGraph::is_connected).collect();
    let mut c = Checks::default();
    let mut morphisms = 0;
    let mut staged = 0;
    let circle = GeneratorList::circle();
    for graph in &graphs {
        let name = format!("{:?}", graph.edges());
        let mut amb = Ambient::new(graph, 1, 2, true, 0).expect("n >= 1");
        let (fast, stats) = generation_at(&mut amb, &circle, false);
        let (count, slow) = brute_circle_span(&amb);
        morphisms += count;
        c.check(count == stats[0].morphisms, || format!("{}: {} morphisms vs {}", name, count, stats[0].morphisms));
        c.check(fast == slow, || format!("{}: circle span differs from brute force", name));
        if graph.size() <= STAGE_ORACLE_MAX_EDGES {
            staged += 1;
            for f in [StageFilter::Betti(0), StageFilter::Betti(1), StageFilter::Robertson(2)] {
                let fast = stage_in(&mut amb, f).expect("small graph").subgroup;
                c.check(fast == brute_stage_span(&amb, f), || format!("{}: {} differs from brute force", name, f.token()));
            }
        }
        let types = GeneratorList::subgraph_types(graph).expect("at most 10 edges");
        let r = generation_check(graph, 1, 2, &types, 0).expect("n >= 1");
        c.check(r.is_generated, || format!("{}: self-generation fails", name));
    }
    c.finish(format!(
        "{} connected graphs, {} circle morphisms, stage oracle on {} graphs",
        graphs.len(),
        morphisms,
        staged
    ))
}
