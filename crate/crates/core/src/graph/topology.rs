//! Homeomorphism types: smoothing degree-two vertices and the minimal
//! simplicial representative of the resulting multigraph.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{is_isomorphic, SimpleGraph};

/// Smallest simple graph homeomorphic to `g`: every degree-two vertex is
/// smoothed away, then loops get two subdivision vertices and all but one
/// edge of each parallel class get one. Circle components become triangles.
pub fn minimal_representative(g: &SimpleGraph) -> SimpleGraph {
    let n = g.order();
    let essential: Vec<bool> = (0..n).map(|v| g.degree(v) != 2).collect();
    let mut visited = vec![false; g.size()];
    let mut multi: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for u in 0..n {
        if !essential[u] {
            continue;
        }
        for &(w, e) in g.neighbors(u) {
            if visited[e] {
                continue;
            }
            visited[e] = true;
            let mut cur = w;
            while !essential[cur] {
                let &(next, f) = g
                    .neighbors(cur)
                    .iter()
                    .find(|&&(_, f)| !visited[f])
                    .expect("degree-two vertex continues");
                visited[f] = true;
                cur = next;
            }
            *multi.entry((u.min(cur), u.max(cur))).or_insert(0) += 1;
        }
    }
    // remaining unvisited edges form circle components
    let mut circles = 0;
    for s in 0..n {
        if essential[s] {
            continue;
        }
        let e0 = g.neighbors(s)[0].1;
        if visited[e0] {
            continue;
        }
        circles += 1;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(w, f) in g.neighbors(v) {
                if !visited[f] {
                    visited[f] = true;
                    stack.push(w);
                }
            }
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&v| essential[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut ids: Vec<_> = kept.iter().map(|&v| g.id(v)).collect();
    let mut next_id = g.max_id().map_or(0, |m| m + 1);
    let mut fresh = |ids: &mut Vec<_>| {
        ids.push(next_id);
        next_id += 1;
        ids.len() - 1
    };
    let mut edges = Vec::new();
    for (&(a, b), &count) in &multi {
        let (a, b) = (index[a], index[b]);
        if a == b {
            for _ in 0..count {
                let x = fresh(&mut ids);
                let y = fresh(&mut ids);
                edges.extend([(a, x), (x, y), (y, a)]);
            }
        } else {
            edges.push((a, b));
            for _ in 1..count {
                let x = fresh(&mut ids);
                edges.extend([(a, x), (x, b)]);
            }
        }
    }
    for _ in 0..circles {
        let x = fresh(&mut ids);
        let y = fresh(&mut ids);
        let z = fresh(&mut ids);
        edges.extend([(x, y), (y, z), (z, x)]);
    }
    SimpleGraph::from_index_edges(ids, edges)
}

pub fn homeomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    is_isomorphic(&minimal_representative(a), &minimal_representative(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{betti1, family, subdivide_uniform, Family};

    fn g(f: Family) -> SimpleGraph {
        family(&f).unwrap()
    }

    #[test]
    fn smoothing() {
        let c9 = g(Family::Cycle(9));
        assert!(is_isomorphic(&minimal_representative(&c9), &g(Family::Cycle(3))));
        let p6 = g(Family::Path(6));
        assert!(is_isomorphic(&minimal_representative(&p6), &g(Family::Path(2))));
        let theta = g(Family::Theta(3, 4, 5));
        assert!(is_isomorphic(&minimal_representative(&theta), &g(Family::Theta(1, 2, 2))));
        let k4 = g(Family::Complete(4));
        assert_eq!(minimal_representative(&k4), k4);
        assert!(homeomorphic(&subdivide_uniform(&k4, 3).subdivided, &k4));
        assert!(!homeomorphic(&k4, &g(Family::Theta(1, 2, 2))));
        // lollipop: a loop at the end of a tail
        let lolli = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)]).unwrap();
        let rep = minimal_representative(&lolli);
        assert_eq!((rep.order(), rep.size(), betti1(&rep)), (4, 4, 1));
        let isolated = g(Family::Empty(2));
        assert_eq!(minimal_representative(&isolated).order(), 2);
    }
}
