//! Topological minor morphisms `(rho_V, rho_E)` between simple graphs, with
//! embeddings, full embeddings and subdivisions as special cases.

mod search;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Path, SimpleGraph, SubdivisionRecord};

pub use search::{
    enumerate_tm, find_tm, for_each_tm, gtm_k_member, has_topological_minor, Enumeration,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingKind {
    /// Injective simplicial maps (every edge goes to an edge).
    Simplicial,
    /// Simplicial and reflecting adjacency.
    Full,
    /// General topological minor morphisms.
    Tm,
    /// Topological minor morphisms whose image exhausts the target.
    Subdivision,
}

impl EmbeddingKind {
    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "simplicial" => Some(Self::Simplicial),
            "full" => Some(Self::Full),
            "tm" => Some(Self::Tm),
            "subdivision" => Some(Self::Subdivision),
            _ => None,
        }
    }
}

/// `rho_v[v]` is the image of source vertex `v`; `rho_e[e]` the path assigned
/// to source edge `e`. Equality is extensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopMinorMorphism {
    pub source: Arc<SimpleGraph>,
    pub target: Arc<SimpleGraph>,
    pub rho_v: Vec<usize>,
    pub rho_e: Vec<Path>,
}

/// One failed condition, numbered as in the definition (0 marks malformed
/// input such as a path that is not a path of the target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Malformed(alloc::string::String),
    NotInjective { a: usize, b: usize, image: usize },
    WrongEndpoints { edge: usize },
    Incidence { edge: usize, vertex: usize, incident: bool },
    Overlap { first: usize, second: usize, common: Vec<usize> },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Malformed(_) => 0,
            Violation::NotInjective { .. } => 1,
            Violation::WrongEndpoints { .. } => 2,
            Violation::Incidence { .. } => 3,
            Violation::Overlap { .. } => 4,
        }
    }
}

impl TopMinorMorphism {
    pub fn new(
        source: Arc<SimpleGraph>,
        target: Arc<SimpleGraph>,
        rho_v: Vec<usize>,
        rho_e: Vec<Path>,
    ) -> Self {
        TopMinorMorphism { source, target, rho_v, rho_e }
    }

    pub fn identity(g: Arc<SimpleGraph>) -> Self {
        let rho_v = (0..g.order()).collect();
        let rho_e = g.edges().iter().map(|&(a, b)| Path::edge(a, b)).collect();
        TopMinorMorphism { source: g.clone(), target: g, rho_v, rho_e }
    }

    pub fn from_subdivision(record: &SubdivisionRecord) -> Self {
        TopMinorMorphism {
            source: Arc::new(record.original.clone()),
            target: Arc::new(record.subdivided.clone()),
            rho_v: (0..record.original.order()).collect(),
            rho_e: record.edge_paths.clone(),
        }
    }

    /// Simplicial embedding from a vertex map; `None` if some edge is not
    /// sent to an edge.
    pub fn from_vertex_map(
        source: Arc<SimpleGraph>,
        target: Arc<SimpleGraph>,
        rho_v: Vec<usize>,
    ) -> Option<Self> {
        let rho_e = source
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (rho_v[a], rho_v[b]);
                target.has_edge(x, y).then(|| Path::edge(x, y))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(TopMinorMorphism { source, target, rho_v, rho_e })
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_tm(self)
    }

    pub fn is_valid(&self) -> bool {
        validate_tm(self).is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rho_e.iter().all(|p| p.edge_count() == 1)
    }

    pub fn is_full(&self) -> bool {
        self.is_simplicial() && {
            let s = &self.source;
            (0..s.order()).all(|a| {
                (a + 1..s.order()).all(|b| {
                    s.has_edge(a, b) == self.target.has_edge(self.rho_v[a], self.rho_v[b])
                })
            })
        }
    }

    pub fn total_path_length(&self) -> usize {
        self.rho_e.iter().map(Path::edge_count).sum()
    }

    /// Canonical extension of `rho_E` to paths of the source: concatenate
    /// the images of consecutive edges.
    pub fn map_path(&self, p: &Path) -> Result<Path> {
        let vs = p.vertices();
        let mut seq = alloc::vec![self.rho_v[vs[0]]];
        for w in vs.windows(2) {
            let e = self
                .source
                .edge_between(w[0], w[1])
                .ok_or_else(|| Error::InvalidPath(format!("{:?} is not a path of the source", vs)))?;
            let piece = self.rho_e[e].oriented_from(self.rho_v[w[0]]);
            seq.extend_from_slice(&piece[1..]);
        }
        Path::new(seq)
    }

    /// Edge indices of the target covered by the image, sorted.
    pub fn image_edges(&self) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for p in &self.rho_e {
            for w in p.vertices().windows(2) {
                set.insert(self.target.edge_between(w[0], w[1]).expect("valid path"));
            }
        }
        set.into_iter().collect()
    }

    /// Vertices of the target touched by the image, sorted.
    pub fn image_vertices(&self) -> Vec<usize> {
        let mut set: BTreeSet<usize> = self.rho_v.iter().copied().collect();
        for p in &self.rho_e {
            set.extend(p.vertices().iter().copied());
        }
        set.into_iter().collect()
    }

    /// Operational stand-in for the isotopy class of the induced topological
    /// embedding: the image subgraph together with where the essential
    /// (degree different from two) source vertices go.
    pub fn isotopy_key(&self) -> IsotopyKey {
        let essential = (0..self.source.order())
            .filter(|&v| self.source.degree(v) != 2)
            .map(|v| (v, self.rho_v[v]))
            .collect();
        IsotopyKey { image_edges: self.image_edges(), image_vertices: self.image_vertices(), essential }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsotopyKey {
    pub image_edges: Vec<usize>,
    pub image_vertices: Vec<usize>,
    pub essential: Vec<(usize, usize)>,
}

/// Check the four defining conditions; an empty list means valid.
pub fn validate_tm(m: &TopMinorMorphism) -> Vec<Violation> {
    let (s, t) = (&*m.source, &*m.target);
    let mut out = Vec::new();
    if m.rho_v.len() != s.order() || m.rho_e.len() != s.size() {
        out.push(Violation::Malformed("rho_V or rho_E is not total".into()));
        return out;
    }
    if let Some(&v) = m.rho_v.iter().find(|&&v| v >= t.order()) {
        out.push(Violation::Malformed(format!("vertex image {} out of range", v)));
        return out;
    }
    for (e, p) in m.rho_e.iter().enumerate() {
        if !p.is_valid_in(t) {
            out.push(Violation::Malformed(format!("image of edge {} is not a path of the target", e)));
        }
    }
    if !out.is_empty() {
        return out;
    }
    // (1)
    for a in 0..s.order() {
        for b in a + 1..s.order() {
            if m.rho_v[a] == m.rho_v[b] {
                out.push(Violation::NotInjective { a, b, image: m.rho_v[a] });
            }
        }
    }
    // (2)
    for (e, &(a, b)) in s.edges().iter().enumerate() {
        let (x, y) = m.rho_e[e].endpoints();
        let (ia, ib) = (m.rho_v[a], m.rho_v[b]);
        if (x, y) != (ia.min(ib), ia.max(ib)) {
            out.push(Violation::WrongEndpoints { edge: e });
        }
    }
    // (3)
    for (e, &(a, b)) in s.edges().iter().enumerate() {
        for v in 0..s.order() {
            let incident = v == a || v == b;
            if m.rho_e[e].contains(m.rho_v[v]) != incident {
                out.push(Violation::Incidence { edge: e, vertex: v, incident });
            }
        }
    }
    // (4)
    let sets: Vec<BTreeSet<usize>> =
        m.rho_e.iter().map(|p| p.vertices().iter().copied().collect()).collect();
    for e1 in 0..s.size() {
        for e2 in e1 + 1..s.size() {
            let common: Vec<usize> = sets[e1].intersection(&sets[e2]).copied().collect();
            let (a1, b1) = s.edge(e1);
            let (a2, b2) = s.edge(e2);
            let shared = [a1, b1].into_iter().find(|&v| v == a2 || v == b2);
            let expected: Vec<usize> = shared.map(|v| m.rho_v[v]).into_iter().collect();
            if common != expected {
                out.push(Violation::Overlap { first: e1, second: e2, common });
            }
        }
    }
    out
}

/// `sigma . rho`, defined when the target of `rho` is the source of `sigma`.
pub fn compose_tm(sigma: &TopMinorMorphism, rho: &TopMinorMorphism) -> Result<TopMinorMorphism> {
    if !Arc::ptr_eq(&rho.target, &sigma.source) && *rho.target != *sigma.source {
        return Err(Error::CompositionMismatch);
    }
    let rho_v = rho.rho_v.iter().map(|&v| sigma.rho_v[v]).collect();
    let rho_e = rho.rho_e.iter().map(|p| sigma.map_path(p)).collect::<Result<Vec<_>>>()?;
    let out = TopMinorMorphism {
        source: rho.source.clone(),
        target: sigma.target.clone(),
        rho_v,
        rho_e,
    };
    let violations = validate_tm(&out);
    if violations.is_empty() {
        Ok(out)
    } else {
        Err(Error::InvalidMorphism(format!("composite fails {:?}", violations)))
    }
}

/// Whether the image exhausts the target: every target edge lies on exactly
/// one edge path and every target vertex is hit.
pub fn is_subdivision(m: &TopMinorMorphism) -> Result<bool> {
    let violations = validate_tm(m);
    if !violations.is_empty() {
        return Err(Error::InvalidMorphism(format!("{:?}", violations)));
    }
    let t = &*m.target;
    let mut edge_hits = alloc::vec![0usize; t.size()];
    let mut vertex_hit = alloc::vec![false; t.order()];
    for &v in &m.rho_v {
        vertex_hit[v] = true;
    }
    for p in &m.rho_e {
        for &v in p.vertices() {
            vertex_hit[v] = true;
        }
        for e in p.edges_in(t).expect("validated") {
            edge_hits[e] += 1;
        }
    }
    Ok(edge_hits.iter().all(|&h| h == 1) && vertex_hit.iter().all(|&h| h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, subdivide_uniform, Family};
    use alloc::vec;

    fn g(f: Family) -> Arc<SimpleGraph> {
        Arc::new(family(&f).unwrap())
    }

    #[test]
    fn identity_is_valid() {
        let c3 = g(Family::Cycle(3));
        assert!(TopMinorMorphism::identity(c3).is_valid());
    }

    #[test]
    fn x_graph_breaks_condition_four() {
        // two disjoint edges a-b, c-d; X with center 0 and legs 1..4
        let two = Arc::new(SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        let x = g(Family::Star(4));
        let m = TopMinorMorphism::new(
            two,
            x,
            vec![1, 2, 3, 4],
            vec![Path::new(vec![1, 0, 2]).unwrap(), Path::new(vec![3, 0, 4]).unwrap()],
        );
        let v = validate_tm(&m);
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.condition() == 4), "{:?}", v);
    }

    #[test]
    fn subdivision_maps() {
        let c3 = family(&Family::Cycle(3)).unwrap();
        let rec = subdivide_uniform(&c3, 2);
        let m = TopMinorMorphism::from_subdivision(&rec);
        assert!(m.is_valid());
        assert!(m.rho_e.iter().all(|p| p.edge_count() == 2));
        assert_eq!(is_subdivision(&m), Ok(true));

        let k1 = g(Family::Complete(1));
        let k2 = g(Family::Complete(2));
        let m = TopMinorMorphism::new(k1, k2, vec![0], vec![]);
        assert_eq!(is_subdivision(&m), Ok(false));

        let tri = g(Family::Cycle(3));
        let k4 = g(Family::Complete(4));
        let m = TopMinorMorphism::from_vertex_map(tri, k4, vec![0, 1, 2]).unwrap();
        assert_eq!(is_subdivision(&m), Ok(false));

        let bad = TopMinorMorphism::new(g(Family::Complete(2)), g(Family::Complete(2)), vec![0, 0], vec![Path::edge(0, 1)]);
        assert!(is_subdivision(&bad).is_err());
    }

    #[test]
    fn composition() {
        let c3 = family(&Family::Cycle(3)).unwrap();
        let a = subdivide_uniform(&c3, 2);
        let b = subdivide_uniform(&a.subdivided, 2);
        let ma = TopMinorMorphism::from_subdivision(&a);
        let mb = TopMinorMorphism::from_subdivision(&b);
        let ab = compose_tm(&mb, &ma).unwrap();
        assert!(ab.rho_e.iter().all(|p| p.edge_count() == 4));
        assert_eq!(is_subdivision(&ab), Ok(true));
        let id = TopMinorMorphism::identity(ma.target.clone());
        assert_eq!(compose_tm(&id, &ma).unwrap(), ma);
        assert_eq!(compose_tm(&ma, &ma), Err(Error::CompositionMismatch));

        // an edge sent to a 2-path, then a simplicial embedding of P3 into K4
        let k2 = g(Family::Complete(2));
        let p3 = g(Family::Path(3));
        let k4 = g(Family::Complete(4));
        let bend = TopMinorMorphism::new(k2, p3.clone(), vec![0, 2], vec![Path::new(vec![0, 1, 2]).unwrap()]);
        let emb = TopMinorMorphism::from_vertex_map(p3, k4, vec![3, 0, 2]).unwrap();
        let c = compose_tm(&emb, &bend).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.rho_e[0], Path::new(vec![3, 0, 2]).unwrap());
    }
}
