use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Path, SimpleGraph, VertexId};
use crate::error::{Error, Result};

/// A subdivision `original -> subdivided`: vertex `v` of the original keeps
/// index `v`, and edge `e` becomes `edge_paths[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionRecord {
    pub original: SimpleGraph,
    pub subdivided: SimpleGraph,
    pub edge_paths: Vec<Path>,
}

impl SubdivisionRecord {
    pub fn identity(g: &SimpleGraph) -> Self {
        let edge_paths = g.edges().iter().map(|&(a, b)| Path::edge(a, b)).collect();
        SubdivisionRecord { original: g.clone(), subdivided: g.clone(), edge_paths }
    }

    /// The composite subdivision `original -> next.subdivided`.
    pub fn then(&self, next: &SubdivisionRecord) -> SubdivisionRecord {
        assert_eq!(self.subdivided, next.original, "subdivisions are not composable");
        let mid = &self.subdivided;
        let edge_paths = self
            .edge_paths
            .iter()
            .map(|p| {
                let mut seq = alloc::vec![p.vertices()[0]];
                for w in p.vertices().windows(2) {
                    let e = mid.edge_between(w[0], w[1]).expect("path edge");
                    let piece = next.edge_paths[e].oriented_from(w[0]);
                    seq.extend_from_slice(&piece[1..]);
                }
                Path::new(seq).expect("subdivided path is simple")
            })
            .collect();
        SubdivisionRecord {
            original: self.original.clone(),
            subdivided: next.subdivided.clone(),
            edge_paths,
        }
    }

    /// Number of edges each original edge was split into, if uniform.
    pub fn uniform_pieces(&self) -> Option<usize> {
        let first = self.edge_paths.first()?.edge_count();
        self.edge_paths.iter().all(|p| p.edge_count() == first).then_some(first)
    }
}

/// Replace each edge `e` by a path with `counts[e] + 1` edges. Keys are
/// unordered id pairs; unlisted edges are left alone.
pub fn subdivide(
    g: &SimpleGraph,
    counts: &BTreeMap<(VertexId, VertexId), usize>,
) -> Result<SubdivisionRecord> {
    let mut per_edge = alloc::vec![0usize; g.size()];
    for (&(a, b), &c) in counts {
        let e = match (g.index_of(a), g.index_of(b)) {
            (Some(ia), Some(ib)) => g.edge_between(ia, ib),
            _ => None,
        };
        per_edge[e.ok_or(Error::UnknownEdge(a, b))?] = c;
    }
    Ok(subdivide_by_index(g, &per_edge))
}

/// Every edge split into `pieces >= 1` edges.
pub fn subdivide_uniform(g: &SimpleGraph, pieces: usize) -> SubdivisionRecord {
    assert!(pieces >= 1);
    subdivide_by_index(g, &alloc::vec![pieces - 1; g.size()])
}

pub(crate) fn subdivide_by_index(g: &SimpleGraph, per_edge: &[usize]) -> SubdivisionRecord {
    let mut ids = g.ids().to_vec();
    let mut labels = g.labels().to_vec();
    let mut next_id = g.max_id().map_or(0, |m| m + 1);
    let mut edges = Vec::new();
    let mut paths = Vec::with_capacity(g.size());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let mut seq = alloc::vec![a];
        for _ in 0..per_edge[e] {
            seq.push(ids.len());
            ids.push(next_id);
            labels.push(None);
            next_id += 1;
        }
        seq.push(b);
        for w in seq.windows(2) {
            edges.push((w[0], w[1]));
        }
        paths.push(Path::new(seq).expect("fresh vertices are distinct"));
    }
    let mut sub = SimpleGraph::from_index_edges(ids, edges);
    for (v, l) in labels.into_iter().enumerate() {
        if let Some(l) = l {
            sub = sub.with_label(v, l);
        }
    }
    SubdivisionRecord { original: g.clone(), subdivided: sub, edge_paths: paths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{betti1, family, is_isomorphic, Family};

    fn g(f: Family) -> SimpleGraph {
        family(&f).unwrap()
    }

    #[test]
    fn subdivide_examples() {
        let k2 = g(Family::Complete(2));
        let mut counts = BTreeMap::new();
        counts.insert((0, 1), 1);
        let rec = subdivide(&k2, &counts).unwrap();
        assert!(is_isomorphic(&rec.subdivided, &g(Family::Path(3))));

        let c3 = g(Family::Cycle(3));
        let rec = subdivide_uniform(&c3, 2);
        assert!(is_isomorphic(&rec.subdivided, &g(Family::Cycle(6))));

        let mut counts = BTreeMap::new();
        counts.insert((2, 0), 2);
        let rec = subdivide(&c3, &counts).unwrap();
        assert!(is_isomorphic(&rec.subdivided, &g(Family::Cycle(5))));
        assert_eq!(rec.edge_paths[1].edge_count(), 3);

        let mut bad = BTreeMap::new();
        bad.insert((0, 7), 1);
        assert_eq!(subdivide(&c3, &bad), Err(Error::UnknownEdge(0, 7)));
    }

    #[test]
    fn composition_of_subdivisions() {
        let c3 = g(Family::Cycle(3));
        let a = subdivide_uniform(&c3, 2);
        let b = subdivide_uniform(&a.subdivided, 2);
        let ab = a.then(&b);
        assert_eq!(ab.uniform_pieces(), Some(4));
        for p in &ab.edge_paths {
            assert!(p.is_valid_in(&ab.subdivided));
        }
        assert_eq!(betti1(&ab.subdivided), 1);
    }
}
