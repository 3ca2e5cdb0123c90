use alloc::collections::VecDeque;
use alloc::vec;

use crate::graph::{subdivide_uniform, SimpleGraph, SubdivisionRecord};

/// Length of the shortest cycle, if any.
pub(crate) fn girth(g: &SimpleGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..g.order() {
        let mut dist = vec![usize::MAX; g.order()];
        let mut parent = vec![usize::MAX; g.order()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Every maximal chain through degree-2 vertices between vertices of degree
/// other than two, and every cycle, has at least `n + 1` edges.
pub fn is_sufficiently_subdivided(g: &SimpleGraph, n: usize) -> bool {
    if girth(g).is_some_and(|c| c < n + 1) {
        return false;
    }
    for start in 0..g.order() {
        if g.degree(start) == 2 {
            continue;
        }
        for &(first, _) in g.neighbors(start) {
            let (mut prev, mut cur, mut len) = (start, first, 1);
            while g.degree(cur) == 2 && cur != start {
                let next = g.neighbors(cur).iter().map(|&(w, _)| w).find(|&w| w != prev).expect("degree two");
                prev = cur;
                cur = next;
                len += 1;
            }
            if len < n + 1 {
                return false;
            }
        }
    }
    true
}

/// Every edge split into `n + 1` edges.
pub fn sufficient_subdivision(g: &SimpleGraph, n: usize) -> SubdivisionRecord {
    subdivide_uniform(g, n + 1)
}
