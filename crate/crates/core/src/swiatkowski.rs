//! Cell sets `A_{i,n}(G)`: edge weights plus a state per vertex (empty, the
//! vertex itself, or a half-edge at it), with total mass `n` and exactly `i`
//! half-edges.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::morphism::TopMinorMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub vertex: usize,
    pub edge: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexState {
    Empty,
    Itself,
    /// Index of an edge incident on the vertex.
    Half(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwiatkowskiCell {
    pub edge_weights: Vec<usize>,
    pub vertex_states: Vec<VertexState>,
}

impl SwiatkowskiCell {
    pub fn edge_mass(&self) -> usize {
        self.edge_weights.iter().sum()
    }

    pub fn self_count(&self) -> usize {
        self.vertex_states.iter().filter(|s| **s == VertexState::Itself).count()
    }

    pub fn half_edges(&self) -> Vec<HalfEdge> {
        self.vertex_states
            .iter()
            .enumerate()
            .filter_map(|(v, s)| match s {
                VertexState::Half(e) => Some(HalfEdge { vertex: v, edge: *e }),
                _ => None,
            })
            .collect()
    }

    /// The `i` with `lambda` in `A_{i,n}`.
    pub fn degree(&self) -> usize {
        self.half_edges().len()
    }

    /// Total mass `n`.
    pub fn particles(&self) -> usize {
        self.edge_mass() + self.self_count() + self.degree()
    }

    /// Conditions (1)-(4) for `A_{i,n}(g)`; returns the failures.
    pub fn check(&self, g: &SimpleGraph, i: usize, n: usize) -> Vec<String> {
        let mut out = Vec::new();
        if self.edge_weights.len() != g.size() || self.vertex_states.len() != g.order() {
            out.push("cell does not match the graph".into());
            return out;
        }
        for (v, s) in self.vertex_states.iter().enumerate() {
            if let VertexState::Half(e) = s {
                let incident = *e < g.size() && {
                    let (a, b) = g.edge(*e);
                    a == v || b == v
                };
                if !incident {
                    out.push(format!("half-edge at {} is not incident", g.id(v)));
                }
            }
        }
        if self.particles() != n {
            out.push(format!("mass {} differs from {}", self.particles(), n));
        }
        if self.degree() != i {
            out.push(format!("{} half-edges, expected {}", self.degree(), i));
        }
        out
    }

    /// Stable text key, e.g. `e0:2 | v1:s v2:h3`.
    pub fn key(&self, g: &SimpleGraph) -> String {
        let mut s = String::new();
        for (e, &w) in self.edge_weights.iter().enumerate() {
            if w > 0 {
                let (a, b) = g.edge(e);
                s.push_str(&format!("{}-{}:{} ", g.id(a), g.id(b), w));
            }
        }
        s.push('|');
        for (v, st) in self.vertex_states.iter().enumerate() {
            match st {
                VertexState::Empty => {}
                VertexState::Itself => s.push_str(&format!(" {}:self", g.id(v))),
                VertexState::Half(e) => {
                    let (a, b) = g.edge(*e);
                    s.push_str(&format!(" {}:{}-{}", g.id(v), g.id(a), g.id(b)))
                }
            }
        }
        s
    }
}

/// Visit every cell of `A_{i,n}(g)` in a fixed order: vertex states
/// lexicographically (empty, self, half-edges by edge index), then edge
/// weights lexicographically from the largest weight on the first edge.
pub fn for_each_cell<F: FnMut(&SwiatkowskiCell)>(g: &SimpleGraph, i: usize, n: usize, mut f: F) {
    if i > n {
        return;
    }
    let mut cell = SwiatkowskiCell { edge_weights: vec![0; g.size()], vertex_states: vec![VertexState::Empty; g.order()] };
    states(g, i, n, 0, 0, 0, &mut cell, &mut f);
}

fn states<F: FnMut(&SwiatkowskiCell)>(
    g: &SimpleGraph,
    i: usize,
    n: usize,
    v: usize,
    selfs: usize,
    halves: usize,
    cell: &mut SwiatkowskiCell,
    f: &mut F,
) {
    if v == g.order() {
        if halves == i {
            weights(n - i - selfs, 0, cell, f);
        }
        return;
    }
    cell.vertex_states[v] = VertexState::Empty;
    states(g, i, n, v + 1, selfs, halves, cell, f);
    if selfs + i < n {
        cell.vertex_states[v] = VertexState::Itself;
        states(g, i, n, v + 1, selfs + 1, halves, cell, f);
    }
    if halves < i {
        let mut incident: Vec<usize> = g.neighbors(v).iter().map(|&(_, e)| e).collect();
        incident.sort_unstable();
        for e in incident {
            cell.vertex_states[v] = VertexState::Half(e);
            states(g, i, n, v + 1, selfs, halves + 1, cell, f);
        }
    }
    cell.vertex_states[v] = VertexState::Empty;
}

fn weights<F: FnMut(&SwiatkowskiCell)>(left: usize, e: usize, cell: &mut SwiatkowskiCell, f: &mut F) {
    let m = cell.edge_weights.len();
    if e == m {
        if left == 0 {
            f(cell);
        }
        return;
    }
    if e + 1 == m {
        cell.edge_weights[e] = left;
        f(cell);
        cell.edge_weights[e] = 0;
        return;
    }
    for w in (0..=left).rev() {
        cell.edge_weights[e] = w;
        weights(left - w, e + 1, cell, f);
    }
    cell.edge_weights[e] = 0;
}

pub fn enumerate_cells(g: &SimpleGraph, i: usize, n: usize) -> Vec<SwiatkowskiCell> {
    let mut out = Vec::new();
    for_each_cell(g, i, n, |c| out.push(c.clone()));
    out
}

/// Extension by `0` and the empty state along a simplicial embedding.
pub fn push_cell(cell: &SwiatkowskiCell, emb: &TopMinorMorphism) -> Result<SwiatkowskiCell> {
    if !emb.is_simplicial() || !emb.is_valid() {
        return Err(Error::NotAnEmbedding);
    }
    let (s, t) = (&*emb.source, &*emb.target);
    if cell.edge_weights.len() != s.size() || cell.vertex_states.len() != s.order() {
        return Err(Error::Shape("cell does not live on the source graph".into()));
    }
    let edge_image: Vec<usize> = emb
        .rho_e
        .iter()
        .map(|p| {
            let (a, b) = p.endpoints();
            t.edge_between(a, b).expect("simplicial")
        })
        .collect();
    let mut out = SwiatkowskiCell { edge_weights: vec![0; t.size()], vertex_states: vec![VertexState::Empty; t.order()] };
    for (e, &w) in cell.edge_weights.iter().enumerate() {
        out.edge_weights[edge_image[e]] = w;
    }
    for (v, st) in cell.vertex_states.iter().enumerate() {
        out.vertex_states[emb.rho_v[v]] = match st {
            VertexState::Empty => VertexState::Empty,
            VertexState::Itself => VertexState::Itself,
            VertexState::Half(e) => VertexState::Half(edge_image[*e]),
        };
    }
    Ok(out)
}

/// Vertices of `G_lambda`: self-marked vertices, endpoints of edges carrying
/// a marked half-edge, endpoints of edges of positive weight. Sorted.
pub fn support_vertices(g: &SimpleGraph, cell: &SwiatkowskiCell) -> Vec<usize> {
    let mut keep = vec![false; g.order()];
    for (v, st) in cell.vertex_states.iter().enumerate() {
        match st {
            VertexState::Empty => {}
            VertexState::Itself => keep[v] = true,
            VertexState::Half(e) => {
                let (a, b) = g.edge(*e);
                keep[a] = true;
                keep[b] = true;
            }
        }
    }
    for (e, &w) in cell.edge_weights.iter().enumerate() {
        if w > 0 {
            let (a, b) = g.edge(e);
            keep[a] = true;
            keep[b] = true;
        }
    }
    (0..g.order()).filter(|&v| keep[v]).collect()
}

/// The induced support subgraph and its vertex map into `g`.
pub fn support_subgraph(g: &SimpleGraph, cell: &SwiatkowskiCell) -> (SimpleGraph, Vec<usize>) {
    g.induced_subgraph(&support_vertices(g, cell))
}

/// Restriction of a cell to the subgraph with the given vertex map, if the
/// cell carries no mass outside it.
pub fn restrict_cell(g: &SimpleGraph, cell: &SwiatkowskiCell, sub: &SimpleGraph, vmap: &[usize]) -> Option<SwiatkowskiCell> {
    let mut back = vec![usize::MAX; g.order()];
    for (i, &v) in vmap.iter().enumerate() {
        back[v] = i;
    }
    let sub_edge = |e: usize| -> Option<usize> {
        let (a, b) = g.edge(e);
        sub.edge_between(*back.get(a).filter(|x| **x != usize::MAX)?, *back.get(b).filter(|x| **x != usize::MAX)?)
    };
    let mut out = SwiatkowskiCell { edge_weights: vec![0; sub.size()], vertex_states: vec![VertexState::Empty; sub.order()] };
    for (e, &w) in cell.edge_weights.iter().enumerate() {
        if w > 0 {
            out.edge_weights[sub_edge(e)?] = w;
        }
    }
    for (v, st) in cell.vertex_states.iter().enumerate() {
        let target = match st {
            VertexState::Empty => continue,
            VertexState::Itself => VertexState::Itself,
            VertexState::Half(e) => VertexState::Half(sub_edge(*e)?),
        };
        let bv = back[v];
        if bv == usize::MAX {
            return None;
        }
        out.vertex_states[bv] = target;
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportViolation {
    /// `|V(G_lambda)| > 2n`.
    Bound { cell: String, support: usize },
    /// `|V(G_lambda)| > n + i + sum of weights`.
    Intermediate { cell: String, support: usize, limit: usize },
    /// The cell is not pushed forward from its support.
    NotInImage { cell: String },
    /// The support of a cell of a cograph is not a cograph.
    NotCograph { cell: String },
    /// The cell fails its own defining conditions.
    Malformed { cell: String, reasons: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub i: usize,
    pub n: usize,
    pub cells: usize,
    pub max_support: usize,
    pub bound: usize,
    pub ambient_is_cograph: bool,
    pub violations: Vec<SupportViolation>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Run every check of the support argument over `A_{i,n}(g)`.
pub fn verify_support_bound(g: &SimpleGraph, i: usize, n: usize) -> SupportReport {
    use alloc::sync::Arc;
    let ambient_is_cograph = crate::cograph::is_cograph(g);
    let target = Arc::new(g.clone());
    let mut report = SupportReport {
        i,
        n,
        cells: 0,
        max_support: 0,
        bound: 2 * n,
        ambient_is_cograph,
        violations: Vec::new(),
    };
    let mut by_support: BTreeMap<Vec<usize>, (Arc<SimpleGraph>, Vec<usize>, bool)> = BTreeMap::new();
    for_each_cell(g, i, n, |cell| {
        report.cells += 1;
        let reasons = cell.check(g, i, n);
        if !reasons.is_empty() {
            report.violations.push(SupportViolation::Malformed { cell: cell.key(g), reasons });
        }
        let verts = support_vertices(g, cell);
        let size = verts.len();
        report.max_support = report.max_support.max(size);
        if size > 2 * n {
            report.violations.push(SupportViolation::Bound { cell: cell.key(g), support: size });
        }
        let limit = n + i + cell.edge_mass();
        if size > limit {
            report.violations.push(SupportViolation::Intermediate { cell: cell.key(g), support: size, limit });
        }
        let entry = by_support.entry(verts.clone()).or_insert_with(|| {
            let (sub, vmap) = g.induced_subgraph(&verts);
            let cog = crate::cograph::is_cograph(&sub);
            (Arc::new(sub), vmap, cog)
        });
        let (sub, vmap, cog) = (entry.0.clone(), entry.1.clone(), entry.2);
        if ambient_is_cograph && !cog {
            report.violations.push(SupportViolation::NotCograph { cell: cell.key(g) });
        }
        let pushed = restrict_cell(g, cell, &sub, &vmap).and_then(|local| {
            let emb = TopMinorMorphism::from_vertex_map(sub.clone(), target.clone(), vmap.clone())?;
            push_cell(&local, &emb).ok()
        });
        if pushed.as_ref() != Some(cell) {
            report.violations.push(SupportViolation::NotInImage { cell: cell.key(g) });
        }
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, Family};
    use alloc::sync::Arc;
    use std::collections::BTreeSet;

    fn g(f: Family) -> SimpleGraph {
        family(&f).unwrap()
    }

    /// Brute force: every vertex state vector and every weight vector with
    /// entries at most n, filtered by the conditions.
    fn brute(g: &SimpleGraph, i: usize, n: usize) -> BTreeSet<SwiatkowskiCell> {
        let options: Vec<Vec<VertexState>> = (0..g.order())
            .map(|v| {
                let mut o = vec![VertexState::Empty, VertexState::Itself];
                o.extend(g.neighbors(v).iter().map(|&(_, e)| VertexState::Half(e)));
                o
            })
            .collect();
        let mut out = BTreeSet::new();
        let mut st = vec![0usize; g.order()];
        loop {
            let mut w = vec![0usize; g.size()];
            loop {
                let cell = SwiatkowskiCell {
                    edge_weights: w.clone(),
                    vertex_states: st.iter().enumerate().map(|(v, &k)| options[v][k]).collect(),
                };
                if cell.check(g, i, n).is_empty() {
                    out.insert(cell);
                }
                let mut k = 0;
                while k < w.len() {
                    w[k] += 1;
                    if w[k] <= n {
                        break;
                    }
                    w[k] = 0;
                    k += 1;
                }
                if k == w.len() {
                    break;
                }
            }
            let mut k = 0;
            while k < st.len() {
                st[k] += 1;
                if st[k] < options[k].len() {
                    break;
                }
                st[k] = 0;
                k += 1;
            }
            if k == st.len() {
                break;
            }
        }
        out
    }

    #[test]
    fn spec_counts() {
        assert_eq!(enumerate_cells(&g(Family::Complete(1)), 0, 1).len(), 1);
        assert_eq!(enumerate_cells(&g(Family::Complete(2)), 1, 1).len(), 2);
        assert_eq!(enumerate_cells(&g(Family::Complete(2)), 0, 2).len(), 4);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for f in [Family::Complete(3), Family::Path(4), Family::Star(3), Family::Cycle(4)] {
            let gr = g(f);
            for n in 1..=3 {
                for i in 0..=n {
                    let got = enumerate_cells(&gr, i, n);
                    let set: BTreeSet<_> = got.iter().cloned().collect();
                    assert_eq!(set.len(), got.len());
                    assert_eq!(set, brute(&gr, i, n));
                }
            }
        }
    }

    #[test]
    fn supports() {
        let k2 = g(Family::Complete(2));
        let c = SwiatkowskiCell { edge_weights: vec![2], vertex_states: vec![VertexState::Empty; 2] };
        assert_eq!(support_subgraph(&k2, &c).0.order(), 2);
        let k3 = g(Family::Complete(3));
        let c = SwiatkowskiCell {
            edge_weights: vec![0; 3],
            vertex_states: vec![VertexState::Itself, VertexState::Empty, VertexState::Empty],
        };
        assert_eq!(support_subgraph(&k3, &c).0.order(), 1);
        let c4 = g(Family::Cycle(4));
        // half-edge at 0 on edge {0,1}, vertex 2 marked
        let e01 = c4.edge_between(0, 1).unwrap();
        let c = SwiatkowskiCell {
            edge_weights: vec![0; 4],
            vertex_states: vec![VertexState::Half(e01), VertexState::Empty, VertexState::Itself, VertexState::Empty],
        };
        assert!(c.check(&c4, 1, 2).is_empty());
        let (sub, _) = support_subgraph(&c4, &c);
        assert_eq!((sub.order(), sub.size()), (3, 2));
    }

    #[test]
    fn push_along_embeddings() {
        let k2 = Arc::new(g(Family::Complete(2)));
        let p3 = Arc::new(g(Family::Path(3)));
        let emb = TopMinorMorphism::from_vertex_map(k2.clone(), p3.clone(), vec![0, 1]).unwrap();
        let c = SwiatkowskiCell { edge_weights: vec![2], vertex_states: vec![VertexState::Empty; 2] };
        let pushed = push_cell(&c, &emb).unwrap();
        assert_eq!(pushed.edge_weights.iter().sum::<usize>(), 2);
        assert_eq!(pushed.edge_weights[p3.edge_between(0, 1).unwrap()], 2);
        let id = TopMinorMorphism::identity(k2.clone());
        assert_eq!(push_cell(&c, &id).unwrap(), c);
        let bend = TopMinorMorphism::new(
            k2.clone(),
            p3.clone(),
            vec![0, 2],
            vec![crate::graph::Path::new(vec![0, 1, 2]).unwrap()],
        );
        assert_eq!(push_cell(&c, &bend), Err(Error::NotAnEmbedding));
    }

    #[test]
    fn push_is_injective_on_small_graphs() {
        let graphs: Vec<Arc<SimpleGraph>> =
            (1..=4).flat_map(crate::graph::graphs_up_to_iso).map(Arc::new).collect();
        for s in &graphs {
            for t in &graphs {
                let embs = crate::morphism::enumerate_tm(s, t, crate::morphism::EmbeddingKind::Simplicial, None);
                for emb in embs.morphisms {
                    for n in 1..=2 {
                        for i in 0..=n {
                            let cells = enumerate_cells(s, i, n);
                            let images: BTreeSet<_> = cells.iter().map(|c| push_cell(c, &emb).unwrap()).collect();
                            assert_eq!(images.len(), cells.len());
                            assert!(images.iter().all(|c| c.check(t, i, n).is_empty()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn support_bound_small() {
        let r = verify_support_bound(&g(Family::Complete(2)), 0, 2);
        assert_eq!((r.cells, r.max_support), (4, 2));
        assert!(r.passed());
        let r = verify_support_bound(&g(Family::Complete(1)), 0, 1);
        assert_eq!(r.max_support, 1);
        let r = verify_support_bound(&g(Family::Complete(4)), 1, 2);
        assert!(r.passed() && r.max_support <= 4);
    }

    #[test]
    fn trees_top_cells() {
        // for a tree, A_{n,n} = choices of n distinct vertices with one
        // incident edge each
        for f in [Family::Star(3), Family::Path(5)] {
            let gr = g(f);
            for n in 1..=3 {
                let verts: Vec<usize> = (0..gr.order()).collect();
                let mut count = 0usize;
                let pick = |chosen: &[usize]| chosen.iter().map(|&v| gr.degree(v)).product::<usize>();
                for mask in 0u32..(1 << verts.len()) {
                    if mask.count_ones() as usize == n {
                        let chosen: Vec<usize> = verts.iter().copied().filter(|v| mask >> v & 1 == 1).collect();
                        count += pick(&chosen);
                    }
                }
                assert_eq!(enumerate_cells(&gr, n, n).len(), count);
            }
        }
    }
}
