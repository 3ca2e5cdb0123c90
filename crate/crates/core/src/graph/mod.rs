//! Finite simple graphs.
//!
//! Vertices are addressed by dense indices `0..order()` assigned in input
//! order; the caller-visible integer ids are kept alongside and only matter
//! at construction and serialization time. Every algorithm in the crate works
//! on indices.

mod canon;
mod family;
mod path;
mod subdivide;
mod topology;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use canon::{canonical_form, graphs_up_to_iso, is_isomorphic, CanonicalForm};
pub use family::{family, Family};
pub use path::{enumerate_paths, Path};
pub use subdivide::{subdivide, subdivide_uniform, SubdivisionRecord};
pub use topology::{homeomorphic, minimal_representative};

pub type VertexId = i64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    ids: Vec<VertexId>,
    labels: Vec<Option<String>>,
    /// Sorted, each pair `(a, b)` with `a < b`.
    edges: Vec<(usize, usize)>,
    /// Per vertex: `(neighbor, edge index)` sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Default for SimpleGraph {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimpleGraph {
    pub fn empty() -> Self {
        SimpleGraph { ids: Vec::new(), labels: Vec::new(), edges: Vec::new(), adj: Vec::new() }
    }

    /// Validated construction from caller ids. Vertex indices follow the
    /// order of `vertex_ids`.
    pub fn new(vertex_ids: &[VertexId], edge_pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, &id) in vertex_ids.iter().enumerate() {
            if index.insert(id, i).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
        }
        let mut pairs = Vec::with_capacity(edge_pairs.len());
        for &(a, b) in edge_pairs {
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let ia = *index.get(&a).ok_or(Error::DanglingEndpoint(a))?;
            let ib = *index.get(&b).ok_or(Error::DanglingEndpoint(b))?;
            pairs.push((ia.min(ib), ia.max(ib)));
        }
        let mut sorted = pairs.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(vertex_ids[w[0].0], vertex_ids[w[0].1]));
            }
        }
        Ok(Self::from_parts(vertex_ids.to_vec(), vec![None; vertex_ids.len()], sorted))
    }

    /// Graph on `0..n` (ids equal indices) from index pairs.
    pub fn from_edges(n: usize, edge_pairs: &[(usize, usize)]) -> Result<Self> {
        let ids: Vec<VertexId> = (0..n as VertexId).collect();
        let pairs: Vec<(VertexId, VertexId)> =
            edge_pairs.iter().map(|&(a, b)| (a as VertexId, b as VertexId)).collect();
        Self::new(&ids, &pairs)
    }

    /// Internal constructor; `edges` must already be sorted, normalized and
    /// duplicate free.
    pub(crate) fn from_parts(
        ids: Vec<VertexId>,
        labels: Vec<Option<String>>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); ids.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        SimpleGraph { ids, labels, edges, adj }
    }

    /// Same construction as [`from_parts`](Self::from_parts) but sorting and
    /// normalizing the edge list first.
    pub(crate) fn from_index_edges(ids: Vec<VertexId>, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let n = ids.len();
        Self::from_parts(ids, vec![None; n], edges)
    }

    pub fn with_label(mut self, v: usize, label: impl Into<String>) -> Self {
        self.labels[v] = Some(label.into());
        self
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> VertexId {
        self.ids[v]
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge index)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn max_id(&self) -> Option<VertexId> {
        self.ids.iter().copied().max()
    }

    /// Connected component index of every vertex, numbered in order of first
    /// appearance.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_forest(&self) -> bool {
        betti1(self) == 0
    }

    /// Subgraph on the given edge indices together with the vertices they
    /// touch. Vertex ids are inherited; the second value maps new vertex
    /// indices to old ones.
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut keep = vec![false; self.order()];
        for &e in edge_indices {
            let (a, b) = self.edges[e];
            keep[a] = true;
            keep[b] = true;
        }
        self.restrict(&keep, Some(edge_indices))
    }

    /// Induced subgraph on `vertices` (indices, any order). Vertex order of
    /// the result follows the ambient order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut keep = vec![false; self.order()];
        for &v in vertices {
            keep[v] = true;
        }
        self.restrict(&keep, None)
    }

    /// Subgraph with the given vertices and edges; endpoints of the edges
    /// are added. Returns the vertex map into `self`.
    pub fn subgraph(&self, vertices: &[usize], edge_indices: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut keep = vec![false; self.order()];
        for &v in vertices {
            keep[v] = true;
        }
        for &e in edge_indices {
            let (a, b) = self.edges[e];
            keep[a] = true;
            keep[b] = true;
        }
        self.restrict(&keep, Some(edge_indices))
    }

    fn restrict(&self, keep: &[bool], edge_indices: Option<&[usize]>) -> (SimpleGraph, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.order()];
        let mut old = Vec::new();
        for v in 0..self.order() {
            if keep[v] {
                new_index[v] = old.len();
                old.push(v);
            }
        }
        let edges: Vec<(usize, usize)> = match edge_indices {
            Some(list) => list.iter().map(|&e| self.edges[e]).collect(),
            None => self.edges.iter().copied().filter(|&(a, b)| keep[a] && keep[b]).collect(),
        };
        let edges = edges.into_iter().map(|(a, b)| (new_index[a], new_index[b])).collect();
        let ids = old.iter().map(|&v| self.ids[v]).collect();
        let mut g = SimpleGraph::from_index_edges(ids, edges);
        for (i, &v) in old.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
        }
        (g, old)
    }

    /// Copy with ids replaced by `0..order()`.
    pub fn canonical_relabel(&self) -> SimpleGraph {
        SimpleGraph {
            ids: (0..self.order() as VertexId).collect(),
            labels: self.labels.clone(),
            edges: self.edges.clone(),
            adj: self.adj.clone(),
        }
    }
}

/// Same vertex set; edges are exactly the non-edges of `g`.
pub fn complement(g: &SimpleGraph) -> SimpleGraph {
    let n = g.order();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::from_parts(g.ids.clone(), g.labels.clone(), edges)
}

/// Disjoint union; the second graph's ids are shifted by the returned offset
/// so that they sit above every id of the first.
pub fn disjoint_union(g: &SimpleGraph, h: &SimpleGraph) -> (SimpleGraph, VertexId) {
    let offset = match (g.max_id(), h.ids.iter().copied().min()) {
        (Some(max), Some(min)) => max + 1 - min,
        _ => 0,
    };
    let shift = g.order();
    let mut ids = g.ids.clone();
    ids.extend(h.ids.iter().map(|&id| id + offset));
    let mut labels = g.labels.clone();
    labels.extend(h.labels.iter().cloned());
    let mut edges = g.edges.clone();
    edges.extend(h.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
    (SimpleGraph::from_parts(ids, labels, edges), offset)
}

/// First Betti number `|E| - |V| + #components`.
pub fn betti1(g: &SimpleGraph) -> usize {
    g.size() + g.component_count() - g.order()
}
