//! Generation of `H_i(D_n(G))` by classes of topological subgraphs of chosen
//! homeomorphism types, and the Betti and Robertson stages of a fixed graph.
//!
//! Everything happens inside a subdivided copy `G''` of the target. The image
//! of `H_i(D_n(H))` for a subgraph `H` of `G''` is read off by building
//! `D_n(H)` with the cell labels of `G''`, so its cycles are cycles of the
//! ambient complex and only need their coordinates taken.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abrams::{is_sufficiently_subdivided, subdivision_chain_map, sufficient_subdivision, CubicalComplex};
use crate::error::{Error, Result};
use crate::graph::{betti1, canonical_form, family, is_isomorphic, minimal_representative, subdivide_uniform};
use crate::graph::{CanonicalForm, Family, SimpleGraph, SubdivisionRecord};
use crate::homology::{induced_on_homology, Homology, Presentation, Subgroup};
use crate::morphism::{for_each_tm, gtm_k_member, EmbeddingKind, TopMinorMorphism};

/// Default number of extra halvings tried before giving up.
pub const DEFAULT_MAX_LEVEL: usize = 2;

/// Homeomorphism types, each stored as its minimal simplicial representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorList {
    entries: Vec<SimpleGraph>,
}

impl GeneratorList {
    /// Fails if two of the graphs are homeomorphic.
    pub fn new(graphs: Vec<SimpleGraph>) -> Result<Self> {
        let mut entries: Vec<SimpleGraph> = Vec::with_capacity(graphs.len());
        for (k, g) in graphs.iter().enumerate() {
            let rep = minimal_representative(g);
            if let Some(j) = entries.iter().position(|e| is_isomorphic(e, &rep)) {
                return Err(Error::InvalidGenerators(format!("entries {} and {} are homeomorphic", j, k)));
            }
            entries.push(rep);
        }
        Ok(GeneratorList { entries })
    }

    pub fn entries(&self) -> &[SimpleGraph] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The single type of the circle.
    pub fn circle() -> Self {
        Self::new(vec![family(&Family::Cycle(3)).expect("triangle")]).expect("one entry")
    }

    /// Types of all subgraphs of `g` spanned by edge sets, plus `g` itself,
    /// largest first.
    pub fn subgraph_types(g: &SimpleGraph) -> Result<Self> {
        let m = g.size();
        if m > 20 {
            return Err(Error::BadParams { family: "subgraph types".into(), reason: "more than 20 edges".into() });
        }
        let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
        let mut reps = Vec::new();
        let mut add = |h: &SimpleGraph| {
            let rep = minimal_representative(h);
            if seen.insert(canonical_form(&rep)) {
                reps.push(rep);
            }
        };
        add(g);
        for mask in (1u32..(1u32 << m)).rev() {
            let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            add(&g.edge_subgraph(&edges).0);
        }
        reps[1..].sort_by(|a, b| (b.size(), b.order()).cmp(&(a.size(), a.order())));
        Ok(GeneratorList { entries: reps })
    }
}

/// The subdivided target `G''` at one level, with its configuration complex,
/// homology and a cache of subgraph images.
#[derive(Clone, Debug)]
pub struct Ambient {
    level: usize,
    i: usize,
    ordered: bool,
    record: SubdivisionRecord,
    complex: CubicalComplex,
    homology: Homology,
    presentation: Presentation,
    cache: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Vec<BigInt>>>,
}

impl Ambient {
    /// `G''` = sufficient subdivision of `g` for `n`, then `level` halvings.
    pub fn new(g: &SimpleGraph, i: usize, n: usize, ordered: bool, level: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams { family: "configuration".into(), reason: "n must be at least 1".into() });
        }
        let mut record = sufficient_subdivision(g, n);
        for _ in 0..level {
            record = record.then(&subdivide_uniform(&record.subdivided, 2));
        }
        Ok(Self::from_record(record, i, n, ordered, level))
    }

    fn from_record(record: SubdivisionRecord, i: usize, n: usize, ordered: bool, level: usize) -> Self {
        let complex = CubicalComplex::build(&record.subdivided, n, ordered);
        let homology = Homology::compute(complex.chain_complex().clone());
        let presentation = homology.presentation(i);
        Ambient { level, i, ordered, record, complex, homology, presentation, cache: BTreeMap::new() }
    }

    /// The next level together with the halving that leads to it.
    pub fn refine(&self) -> (Ambient, SubdivisionRecord) {
        let step = subdivide_uniform(&self.record.subdivided, 2);
        let record = self.record.then(&step);
        let next = Self::from_record(record, self.i, self.particles(), self.ordered, self.level + 1);
        (next, step)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.i
    }

    pub fn particles(&self) -> usize {
        self.complex.particles()
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// The subdivided graph `G''`.
    pub fn graph(&self) -> &SimpleGraph {
        &self.record.subdivided
    }

    /// The subdivision from the original target to `G''`.
    pub fn record(&self) -> &SubdivisionRecord {
        &self.record
    }

    pub fn complex(&self) -> &CubicalComplex {
        &self.complex
    }

    pub fn homology(&self) -> &Homology {
        &self.homology
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Number of distinct subgraphs whose image has been computed.
    pub fn cached_images(&self) -> usize {
        self.cache.len()
    }

    /// Coordinates of generators of the image of `H_i(D_n(H)) -> H_i(D_n(G''))`
    /// for the subgraph `H` with the given vertices and edges (indices of
    /// `G''`; endpoints of edges are added).
    pub fn image(&mut self, vertices: &[usize], edges: &[usize]) -> Vec<Vec<BigInt>> {
        let g = &self.record.subdivided;
        let mut vmask = vec![false; g.order()];
        let mut emask = vec![false; g.size()];
        for &v in vertices {
            vmask[v] = true;
        }
        for &e in edges {
            emask[e] = true;
            let (a, b) = g.edge(e);
            vmask[a] = true;
            vmask[b] = true;
        }
        let key: (Vec<usize>, Vec<usize>) = (
            (0..g.order()).filter(|&v| vmask[v]).collect(),
            (0..g.size()).filter(|&e| emask[e]).collect(),
        );
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let out = if self.presentation.width() == 0 {
            Vec::new()
        } else {
            let sub = CubicalComplex::build_on(g, self.particles(), self.ordered, &vmask, &emask);
            let hs = Homology::compute(sub.chain_complex().clone());
            hs.generators(self.i)
                .iter()
                .map(|z| {
                    let chain: Vec<(usize, BigInt)> = z
                        .iter()
                        .map(|(c, v)| {
                            let mut slots = sub.raw_cell(self.i, *c).to_vec();
                            let (j, sign) = self.complex.locate(&mut slots).expect("subcomplex cell");
                            (j, v * sign)
                        })
                        .collect();
                    self.homology.coordinates_unchecked(self.i, &chain)
                })
                .collect()
        };
        self.cache.insert(key, out.clone());
        out
    }

    /// Image of a subgroup under the isomorphism induced by `step`, which
    /// must be the halving returned together with `next` by [`Ambient::refine`].
    pub fn push_forward(&self, next: &Ambient, step: &SubdivisionRecord, s: &Subgroup) -> Result<Subgroup> {
        if s.ambient != self.presentation {
            return Err(Error::AmbientMismatch);
        }
        let f = subdivision_chain_map(step, &self.complex, &next.complex)?;
        let columns = induced_on_homology(&f, &self.homology, &next.homology, self.i)?;
        let width = next.presentation.width();
        let images: Vec<Vec<BigInt>> = s
            .hnf
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); width];
                for (x, col) in row.iter().zip(&columns) {
                    if x.is_zero() {
                        continue;
                    }
                    for (o, c) in out.iter_mut().zip(col) {
                        *o += x * c;
                    }
                }
                out
            })
            .collect();
        Subgroup::generated_by(&next.presentation, &images)
    }
}

#[derive(Clone, Debug)]
pub struct GenerationOptions {
    pub ordered: bool,
    /// Highest extra subdivision level tried.
    pub max_level: usize,
    /// Skip the remaining generators once the whole group is reached.
    pub stop_when_generated: bool,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        GenerationOptions { ordered: true, max_level: DEFAULT_MAX_LEVEL, stop_when_generated: true }
    }
}

/// What one generator type contributed at the reported level.
#[derive(Clone, Debug)]
pub struct GeneratorStats {
    pub generator: SimpleGraph,
    /// False when skipped because the group was already generated.
    pub evaluated: bool,
    /// Morphisms into `G''` with sufficiently subdivided image.
    pub morphisms: usize,
    pub isotopy_classes: usize,
    /// Distinct image subgraphs.
    pub images: usize,
    /// Rank of the span of this generator's images alone.
    pub image_rank: usize,
    /// Rank of the span after folding in this generator.
    pub cumulative_rank: usize,
    /// A morphism whose image enlarged the span, if any did.
    pub witness: Option<TopMinorMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOutcome {
    pub level: usize,
    pub rank: usize,
    pub is_generated: bool,
    /// Whether the span equals the pushforward of the span one level down.
    pub agrees_with_previous: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub target: SimpleGraph,
    pub i: usize,
    pub n: usize,
    pub ordered: bool,
    /// Extra subdivision level the verdict refers to.
    pub level: usize,
    pub subdivided: SimpleGraph,
    pub ambient: Presentation,
    pub achieved: Subgroup,
    pub is_generated: bool,
    pub generators: Vec<GeneratorStats>,
    pub levels: Vec<LevelOutcome>,
}

/// Span of the images of all generator types inside one ambient.
pub fn generation_at(amb: &mut Ambient, gens: &GeneratorList, stop_when_generated: bool) -> (Subgroup, Vec<GeneratorStats>) {
    let n = amb.particles();
    let target = Arc::new(amb.graph().clone());
    let mut achieved = Subgroup::trivial(amb.presentation());
    let mut stats = Vec::with_capacity(gens.len());
    for s in gens.entries() {
        let skipped = stop_when_generated && achieved.is_everything();
        let mut st = GeneratorStats {
            generator: s.clone(),
            evaluated: !skipped,
            morphisms: 0,
            isotopy_classes: 0,
            images: 0,
            image_rank: 0,
            cumulative_rank: achieved.rank(),
            witness: None,
        };
        if skipped {
            stats.push(st);
            continue;
        }
        let source = Arc::new(s.clone());
        // image subgraph -> (sufficient, essential correspondences, first morphism)
        let mut seen: BTreeMap<(Vec<usize>, Vec<usize>), (bool, BTreeSet<Vec<(usize, usize)>>, Option<TopMinorMorphism>)> =
            BTreeMap::new();
        for_each_tm(&source, &target, EmbeddingKind::Tm, |m| {
            let key = m.isotopy_key();
            let entry = seen.entry((key.image_vertices, key.image_edges)).or_insert_with_key(|(vs, es)| {
                let h = target.subgraph(vs, es).0;
                (is_sufficiently_subdivided(&h, n), BTreeSet::new(), None)
            });
            if entry.0 {
                st.morphisms += 1;
                entry.1.insert(key.essential);
                if entry.2.is_none() {
                    entry.2 = Some(m.clone());
                }
            }
            ControlFlow::Continue(())
        });
        let mut own = Subgroup::trivial(amb.presentation());
        for ((vs, es), (ok, classes, first)) in seen {
            if !ok {
                continue;
            }
            st.images += 1;
            st.isotopy_classes += classes.len();
            let coords = amb.image(&vs, &es);
            let grown = join_rows(&achieved, &coords);
            if grown.hnf != achieved.hnf {
                achieved = grown;
                if st.witness.is_none() {
                    st.witness = first;
                }
            }
            own = join_rows(&own, &coords);
        }
        st.image_rank = own.rank();
        st.cumulative_rank = achieved.rank();
        stats.push(st);
    }
    (achieved, stats)
}

fn join_rows(s: &Subgroup, rows: &[Vec<BigInt>]) -> Subgroup {
    if rows.is_empty() {
        return s.clone();
    }
    let mut all = s.hnf.clone();
    all.extend(rows.iter().cloned());
    Subgroup::generated_by(&s.ambient, &all).expect("coordinates of the ambient group")
}

/// Decide whether `H_i(D_n(G''))` is generated by images of subgraphs
/// homeomorphic to members of `gens`, starting at `extra_subdivision` and
/// escalating up to [`DEFAULT_MAX_LEVEL`] while new images keep appearing.
pub fn generation_check(
    g: &SimpleGraph,
    i: usize,
    n: usize,
    gens: &GeneratorList,
    extra_subdivision: usize,
) -> Result<GenerationReport> {
    generation_check_with(g, i, n, gens, extra_subdivision, &GenerationOptions::default())
}

pub fn generation_check_with(
    g: &SimpleGraph,
    i: usize,
    n: usize,
    gens: &GeneratorList,
    extra_subdivision: usize,
    opts: &GenerationOptions,
) -> Result<GenerationReport> {
    let cap = opts.max_level.max(extra_subdivision);
    let mut amb = Ambient::new(g, i, n, opts.ordered, extra_subdivision)?;
    let (mut achieved, mut stats) = generation_at(&mut amb, gens, opts.stop_when_generated);
    let mut levels = vec![LevelOutcome {
        level: amb.level(),
        rank: achieved.rank(),
        is_generated: achieved.is_everything(),
        agrees_with_previous: None,
    }];
    while !achieved.is_everything() && amb.level() < cap {
        let (mut next, step) = amb.refine();
        let pushed = amb.push_forward(&next, &step, &achieved)?;
        let (span, st) = generation_at(&mut next, gens, opts.stop_when_generated);
        let stable = span.hnf == pushed.hnf;
        levels.push(LevelOutcome {
            level: next.level(),
            rank: span.rank(),
            is_generated: span.is_everything(),
            agrees_with_previous: Some(stable),
        });
        amb = next;
        achieved = span;
        stats = st;
        if stable {
            break;
        }
    }
    Ok(GenerationReport {
        target: g.clone(),
        i,
        n,
        ordered: opts.ordered,
        level: amb.level(),
        subdivided: amb.graph().clone(),
        ambient: amb.presentation().clone(),
        is_generated: achieved.is_everything(),
        achieved,
        generators: stats,
        levels,
    })
}

/// Predicate selecting the subgraphs of a stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageFilter {
    /// First Betti number at most `g`.
    Betti(usize),
    /// No topological minor isomorphic to the Robertson graph `R_k`.
    Robertson(usize),
}

impl StageFilter {
    /// Parses `betti:G` or `robertson:K`.
    pub fn parse(token: &str) -> Result<Self> {
        let bad = || Error::BadParams { family: "stage".into(), reason: format!("cannot parse {:?}", token) };
        let (kind, value) = token.split_once(':').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "betti" => Ok(StageFilter::Betti(value)),
            "robertson" if value >= 1 => Ok(StageFilter::Robertson(value)),
            _ => Err(bad()),
        }
    }

    pub fn token(&self) -> String {
        match self {
            StageFilter::Betti(g) => format!("betti:{}", g),
            StageFilter::Robertson(k) => format!("robertson:{}", k),
        }
    }

    pub fn admits(&self, h: &SimpleGraph) -> Result<bool> {
        match *self {
            StageFilter::Betti(g) => Ok(betti1(h) <= g),
            StageFilter::Robertson(k) => gtm_k_member(h, k),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StageReport {
    pub filter: StageFilter,
    pub level: usize,
    /// Admissible candidates before removing dominated ones.
    pub candidates: usize,
    /// Edge sets (in `G''`) of the inclusion-maximal candidates, in fold order.
    pub maximal: Vec<Vec<usize>>,
    /// Members of `maximal` that enlarged the span.
    pub contributing: Vec<Vec<usize>>,
    pub subgroup: Subgroup,
}

/// Inclusion-maximal sufficiently subdivided subgraphs of `G''` admitted by
/// the filter, as sorted edge sets.
///
/// Pendant arcs never change the first Betti number or the Robertson minors,
/// so the filter only sees the original edges taken whole. Every other
/// original edge is absent or carries pendant stubs, which are taken as long
/// as possible since lengthening a stub keeps the subgraph sufficiently
/// subdivided. Images grow with the subgraph, so dominated candidates are
/// dropped without changing the span.
pub fn stage_candidates(amb: &Ambient, filter: StageFilter) -> Result<(usize, Vec<Vec<usize>>)> {
    let record = amb.record();
    let (g, sub) = (&record.original, &record.subdivided);
    let m = g.size();
    if m > 20 {
        return Err(Error::BadParams { family: "stage".into(), reason: "more than 20 original edges".into() });
    }
    let n = amb.particles();
    let pieces: Vec<Vec<usize>> = (0..m)
        .map(|e| {
            let walk = record.edge_paths[e].oriented_from(g.edge(e).0);
            walk.windows(2).map(|w| sub.edge_between(w[0], w[1]).expect("path edge")).collect()
        })
        .collect();
    let words = sub.size().div_ceil(64);
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut choice = vec![0usize; m];
    for mask in 0u32..(1u32 << m) {
        let whole: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        if !filter.admits(&g.edge_subgraph(&whole).0)? {
            continue;
        }
        let rest: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 0).collect();
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            let mut bits = vec![0u64; words];
            let mut set = |x: usize| bits[x / 64] |= 1 << (x % 64);
            for &e in &whole {
                pieces[e].iter().for_each(|&x| set(x));
            }
            for &e in &rest {
                let p = &pieces[e];
                let l = p.len();
                // 0 absent, 1 stub at the first endpoint, 2 stub at the
                // second, 2 + a stubs of lengths a and l - 1 - a
                let (a, b) = match choice[e] {
                    0 => (0, 0),
                    1 => (l - 1, 0),
                    2 => (0, l - 1),
                    c => (c - 2, l + 1 - c),
                };
                p[..a].iter().for_each(|&x| set(x));
                p[l - b..].iter().for_each(|&x| set(x));
            }
            if bits.iter().any(|&w| w != 0) && !found.contains(&bits) {
                let edges = bit_list(&bits);
                if is_sufficiently_subdivided(&sub.edge_subgraph(&edges).0, n) {
                    found.insert(bits);
                }
            }
            // odometer over the partial edges
            let mut k = 0;
            while k < rest.len() {
                let e = rest[k];
                choice[e] += 1;
                if choice[e] < pieces[e].len() + 1 {
                    break;
                }
                choice[e] = 0;
                k += 1;
            }
            if k == rest.len() {
                break;
            }
        }
    }
    let total = found.len();
    let mut by_size: Vec<Vec<u64>> = found.into_iter().collect();
    by_size.sort_by_key(|b| core::cmp::Reverse(b.iter().map(|w| w.count_ones()).sum::<u32>()));
    let mut kept: Vec<Vec<u64>> = Vec::new();
    for b in by_size {
        if !kept.iter().any(|k| b.iter().zip(k).all(|(x, y)| x & !y == 0)) {
            kept.push(b);
        }
    }
    let mut out: Vec<Vec<usize>> = kept.iter().map(|b| bit_list(b)).collect();
    out.sort();
    Ok((total, out))
}

fn bit_list(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in bits.iter().enumerate() {
        for j in 0..64 {
            if w >> j & 1 == 1 {
                out.push(i * 64 + j);
            }
        }
    }
    out
}

/// Span of the images of all subgraphs of `G''` admitted by the filter.
pub fn stage_in(amb: &mut Ambient, filter: StageFilter) -> Result<StageReport> {
    let (candidates, maximal) = stage_candidates(amb, filter)?;
    let mut subgroup = Subgroup::trivial(amb.presentation());
    let mut contributing = Vec::new();
    for es in &maximal {
        let coords = amb.image(&[], es);
        let grown = join_rows(&subgroup, &coords);
        if grown.hnf != subgroup.hnf {
            subgroup = grown;
            contributing.push(es.clone());
        }
    }
    Ok(StageReport { filter, level: amb.level(), candidates, maximal, contributing, subgroup })
}

/// Subgroup of `H_i(D_n(G''))` generated by subgraphs with first Betti number
/// at most `g` (ordered configurations).
pub fn betti_stage(graph: &SimpleGraph, i: usize, n: usize, g: usize, extra_subdivision: usize) -> Result<Subgroup> {
    let mut amb = Ambient::new(graph, i, n, true, extra_subdivision)?;
    Ok(stage_in(&mut amb, StageFilter::Betti(g))?.subgroup)
}

/// Subgroup of `H_i(D_n(G''))` generated by subgraphs without an `R_k`
/// topological minor (ordered configurations).
pub fn robertson_stage(graph: &SimpleGraph, i: usize, n: usize, k: usize, extra_subdivision: usize) -> Result<Subgroup> {
    if k == 0 {
        return Err(Error::BadParams { family: "robertson stage".into(), reason: "k must be at least 1".into() });
    }
    let mut amb = Ambient::new(graph, i, n, true, extra_subdivision)?;
    Ok(stage_in(&mut amb, StageFilter::Robertson(k))?.subgroup)
}

#[cfg(test)]
mod tests;
