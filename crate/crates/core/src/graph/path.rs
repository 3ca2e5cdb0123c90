use alloc::format;
use alloc::vec::Vec;

use super::SimpleGraph;
use crate::error::{Error, Result};

/// A list of distinct vertices (indices), stored with the smaller endpoint
/// first so that a path and its reversal compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex list".into()));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath(format!("repeated vertex in {:?}", vertices)));
        }
        if vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        Ok(Path(vertices))
    }

    /// The one-edge path `{a, b}`.
    pub fn edge(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "edge path needs distinct endpoints");
        Path(if a < b { alloc::vec![a, b] } else { alloc::vec![b, a] })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn edge_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0[0], self.0[self.0.len() - 1])
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn interior(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    /// The vertex sequence read from endpoint `from` (which must be an
    /// endpoint).
    pub fn oriented_from(&self, from: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        if v[0] != from {
            v.reverse();
        }
        debug_assert_eq!(v[0], from);
        v
    }

    /// Whether consecutive vertices are adjacent in `g`.
    pub fn is_valid_in(&self, g: &SimpleGraph) -> bool {
        self.0.iter().all(|&v| v < g.order()) && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// Edge indices of `g` traversed, in path order.
    pub fn edges_in(&self, g: &SimpleGraph) -> Option<Vec<usize>> {
        self.0.windows(2).map(|w| g.edge_between(w[0], w[1])).collect()
    }
}

/// All paths of `g` modulo reversal, sorted. Single-vertex paths are only
/// included when `include_single` is set.
pub fn enumerate_paths(g: &SimpleGraph, include_single: bool) -> Vec<Path> {
    let n = g.order();
    let mut out = Vec::new();
    let mut on_path = alloc::vec![false; n];
    let mut stack = Vec::new();
    for s in 0..n {
        if include_single {
            out.push(Path(alloc::vec![s]));
        }
        stack.push(s);
        on_path[s] = true;
        extend(g, &mut stack, &mut on_path, &mut out);
        on_path[s] = false;
        stack.pop();
    }
    out.sort();
    out
}

fn extend(g: &SimpleGraph, stack: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Path>) {
    let last = *stack.last().unwrap();
    for &(w, _) in g.neighbors(last) {
        if on_path[w] {
            continue;
        }
        stack.push(w);
        on_path[w] = true;
        // each path is met once from each end; keep the canonical direction
        if stack[0] < w {
            out.push(Path(stack.clone()));
        }
        extend(g, stack, on_path, out);
        on_path[w] = false;
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, Family};
    use alloc::collections::BTreeSet;
    use alloc::vec;

    /// Brute force: every sequence of distinct vertices with adjacent
    /// neighbours, reduced modulo reversal.
    fn oracle_count(g: &SimpleGraph) -> usize {
        let n = g.order();
        let mut set = BTreeSet::new();
        let mut seqs: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while let Some(seq) = seqs.pop() {
            if seq.len() >= 2 {
                let mut rev = seq.clone();
                rev.reverse();
                set.insert(seq.clone().min(rev));
            }
            for w in 0..n {
                if !seq.contains(&w) && g.has_edge(*seq.last().unwrap(), w) {
                    let mut next = seq.clone();
                    next.push(w);
                    seqs.push(next);
                }
            }
        }
        set.len()
    }

    #[test]
    fn canonical_orientation() {
        assert_eq!(Path::new(vec![3, 1, 2]).unwrap(), Path::new(vec![2, 1, 3]).unwrap());
        assert!(Path::new(vec![1, 2, 1]).is_err());
        assert!(Path::new(vec![]).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let k2 = family(&Family::Complete(2)).unwrap();
        assert_eq!(enumerate_paths(&k2, false).len(), 1);
        let p3 = family(&Family::Path(3)).unwrap();
        let paths = enumerate_paths(&p3, false);
        assert_eq!(
            paths,
            vec![Path(vec![0, 1]), Path(vec![0, 1, 2]), Path(vec![1, 2])]
        );
        let c3 = family(&Family::Cycle(3)).unwrap();
        // 3 single edges and 3 two-edge paths (one per middle vertex)
        assert_eq!(oracle_count(&c3), 6);
        assert_eq!(enumerate_paths(&c3, false).len(), 6);
        assert_eq!(enumerate_paths(&c3, true).len(), 9);
    }

    #[test]
    fn enumerate_matches_oracle() {
        for f in [Family::Complete(4), Family::Cycle(5), Family::Star(3), Family::RobertsonChain(2)] {
            let g = family(&f).unwrap();
            let paths = enumerate_paths(&g, false);
            assert_eq!(paths.len(), oracle_count(&g), "{:?}", f);
            assert!(paths.iter().all(|p| p.is_valid_in(&g)));
        }
    }
}
