//! Canonical forms by colour refinement and individualization. Exact (no
//! automorphism pruning), fine for the desk-scale graphs used here.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{SimpleGraph, VertexId};

/// Isomorphism invariant that is complete: two graphs have equal forms iff
/// they are isomorphic (ids and labels are ignored).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub order: usize,
    /// Upper-triangle adjacency in canonical vertex order, row-major.
    pub bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> SimpleGraph {
        let n = self.order;
        let mut edges = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.bits[k] {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        SimpleGraph::from_index_edges((0..n as VertexId).collect(), edges)
    }
}

pub fn canonical_form(g: &SimpleGraph) -> CanonicalForm {
    let n = g.order();
    let mut colors = vec![0u32; n];
    refine(g, &mut colors);
    let mut best: Option<Vec<bool>> = None;
    search(g, colors, &mut best);
    CanonicalForm { order: n, bits: best.unwrap_or_default() }
}

pub fn is_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

/// Equitable refinement; colours are renumbered to `0..k` by sorted
/// signature, so the result is isomorphism invariant.
fn refine(g: &SimpleGraph, colors: &mut [u32]) {
    let n = g.order();
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&(w, _)| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let now = if n == 0 { 0 } else { rank as usize + 1 };
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

fn search(g: &SimpleGraph, colors: Vec<u32>, best: &mut Option<Vec<bool>>) {
    let n = g.order();
    // smallest colour class with more than one vertex
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let target = (0..n).find(|&c| counts[c] > 1);
    match target {
        None => {
            let mut pos = vec![0usize; n];
            for v in 0..n {
                pos[colors[v] as usize] = v;
            }
            let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for a in 0..n {
                for b in a + 1..n {
                    bits.push(g.has_edge(pos[a], pos[b]));
                }
            }
            if best.as_ref().is_none_or(|cur| bits < *cur) {
                *best = Some(bits);
            }
        }
        Some(c) => {
            for v in 0..n {
                if colors[v] as usize != c {
                    continue;
                }
                let mut next: Vec<u32> = colors.iter().map(|&x| 2 * x + 1).collect();
                next[v] = 2 * colors[v];
                refine(g, &mut next);
                search(g, next, best);
            }
        }
    }
}

/// All graphs on exactly `n` vertices up to isomorphism, as canonical
/// representatives sorted by canonical form.
pub fn graphs_up_to_iso(n: usize) -> Vec<SimpleGraph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(CanonicalForm { order: 0, bits: Vec::new() });
    for k in 0..n {
        let mut next = BTreeSet::new();
        for form in &level {
            let base = form.to_graph();
            for mask in 0u64..(1u64 << k) {
                let mut edges = base.edges().to_vec();
                for v in 0..k {
                    if mask >> v & 1 == 1 {
                        edges.push((v, k));
                    }
                }
                let g = SimpleGraph::from_index_edges((0..=k as VertexId).collect(), edges);
                next.insert(canonical_form(&g));
            }
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, Family};

    #[test]
    fn census_counts() {
        // 1, 2, 4, 11, 34, 156 graphs on 1..=6 vertices
        let counts: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6)
            .map(|n| graphs_up_to_iso(n).iter().filter(|g| g.is_connected()).count())
            .collect();
        assert_eq!(connected, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn relabelling_invariance() {
        let p = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = SimpleGraph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(is_isomorphic(&p, &q));
        let star = family(&Family::Star(3)).unwrap();
        assert!(!is_isomorphic(&p, &star));
        let pet_like = family(&Family::CompleteBipartite(3, 3)).unwrap();
        let prism = SimpleGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_isomorphic(&pet_like, &prism));
    }
}
