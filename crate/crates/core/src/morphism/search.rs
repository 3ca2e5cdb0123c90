//! Backtracking search for topological minor morphisms.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{is_subdivision, EmbeddingKind, TopMinorMorphism};
use crate::error::Result;
use crate::graph::{betti1, family, Family, Path, SimpleGraph};

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub morphisms: Vec<TopMinorMorphism>,
    /// The search stopped at the requested limit; more morphisms may exist.
    pub limit_reached: bool,
}

const FREE: u8 = 0;
const IMAGE: u8 = 1;
const INTERIOR: u8 = 2;

struct Search<'a, F> {
    s: &'a Arc<SimpleGraph>,
    t: &'a Arc<SimpleGraph>,
    kind: EmbeddingKind,
    order: Vec<usize>,
    back: Vec<Vec<(usize, usize)>>,
    rho_v: Vec<usize>,
    rho_e: Vec<Vec<usize>>,
    used: Vec<u8>,
    extra: usize,
    cap: Option<usize>,
    exact: Option<usize>,
    stop: bool,
    emit: F,
}

impl<'a, F: FnMut(&TopMinorMorphism) -> ControlFlow<()>> Search<'a, F> {
    fn new(s: &'a Arc<SimpleGraph>, t: &'a Arc<SimpleGraph>, kind: EmbeddingKind, emit: F) -> Self {
        let n = s.order();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let attached = s.neighbors(v).iter().any(|&(u, _)| placed[u]);
                    (s.degree(v) >= 2, attached, s.degree(v), core::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            placed[v] = true;
            order.push(v);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut b: Vec<(usize, usize)> =
                    s.neighbors(v).iter().filter(|&&(u, _)| pos[u] < i).map(|&(u, e)| (e, u)).collect();
                b.sort_unstable();
                b
            })
            .collect();
        Search {
            s,
            t,
            kind,
            order,
            back,
            rho_v: vec![usize::MAX; n],
            rho_e: vec![Vec::new(); s.size()],
            used: vec![FREE; t.order()],
            extra: 0,
            cap: None,
            exact: None,
            stop: false,
            emit,
        }
    }

    fn run(&mut self, cap: Option<usize>, exact: Option<usize>) {
        self.cap = cap;
        self.exact = exact;
        self.stop = false;
        self.place(0);
    }

    fn place(&mut self, i: usize) {
        if i == self.order.len() {
            if self.exact.is_none_or(|x| x == self.extra) {
                self.finish();
            }
            return;
        }
        let v = self.order[i];
        let dv = self.s.degree(v);
        for x in 0..self.t.order() {
            if self.used[x] != FREE || self.t.degree(x) < dv {
                continue;
            }
            if matches!(self.kind, EmbeddingKind::Simplicial | EmbeddingKind::Full) {
                let ok = self.back[i].iter().all(|&(_, u)| self.t.has_edge(self.rho_v[u], x));
                if !ok {
                    continue;
                }
                if self.kind == EmbeddingKind::Full {
                    let reflects = self.order[..i]
                        .iter()
                        .all(|&u| self.s.has_edge(u, v) || !self.t.has_edge(self.rho_v[u], x));
                    if !reflects {
                        continue;
                    }
                }
            }
            self.used[x] = IMAGE;
            self.rho_v[v] = x;
            self.route(i, 0);
            self.rho_v[v] = usize::MAX;
            self.used[x] = FREE;
            if self.stop {
                return;
            }
        }
    }

    fn route(&mut self, i: usize, k: usize) {
        if k == self.back[i].len() {
            self.place(i + 1);
            return;
        }
        let (e, u) = self.back[i][k];
        let a = self.rho_v[u];
        let b = self.rho_v[self.order[i]];
        if matches!(self.kind, EmbeddingKind::Simplicial | EmbeddingKind::Full) {
            self.rho_e[e] = vec![a, b];
            self.route(i, k + 1);
            return;
        }
        let mut walk = vec![a];
        self.extend(i, k, e, b, &mut walk);
    }

    fn extend(&mut self, i: usize, k: usize, e: usize, b: usize, walk: &mut Vec<usize>) {
        let cur = *walk.last().expect("nonempty walk");
        let t = self.t.clone();
        for &(w, _) in t.neighbors(cur) {
            if w == b {
                walk.push(b);
                self.rho_e[e] = walk.clone();
                walk.pop();
                self.route(i, k + 1);
            } else if self.used[w] == FREE && self.cap.is_none_or(|c| self.extra < c) {
                self.used[w] = INTERIOR;
                self.extra += 1;
                walk.push(w);
                self.extend(i, k, e, b, walk);
                walk.pop();
                self.extra -= 1;
                self.used[w] = FREE;
            }
            if self.stop {
                return;
            }
        }
    }

    fn finish(&mut self) {
        let rho_e = self
            .rho_e
            .iter()
            .map(|w| Path::new(w.clone()).expect("search produces simple paths"))
            .collect();
        let m = TopMinorMorphism {
            source: self.s.clone(),
            target: self.t.clone(),
            rho_v: self.rho_v.clone(),
            rho_e,
        };
        if self.kind == EmbeddingKind::Subdivision && !is_subdivision(&m).unwrap_or(false) {
            return;
        }
        if (self.emit)(&m).is_break() {
            self.stop = true;
        }
    }
}

/// Necessary conditions checked before any search.
fn may_exist(s: &SimpleGraph, t: &SimpleGraph, kind: EmbeddingKind) -> bool {
    if s.order() > t.order() || s.size() > t.size() || betti1(s) > betti1(t) {
        return false;
    }
    if kind == EmbeddingKind::Subdivision
        && (betti1(s) != betti1(t) || s.component_count() != t.component_count())
    {
        return false;
    }
    let mut ds: Vec<usize> = (0..s.order()).map(|v| s.degree(v)).collect();
    let mut dt: Vec<usize> = (0..t.order()).map(|v| t.degree(v)).collect();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    dt.sort_unstable_by(|a, b| b.cmp(a));
    ds.iter().zip(&dt).all(|(a, b)| a <= b)
}

/// Visit every morphism of the given kind in search order. The callback may
/// break to stop early.
pub fn for_each_tm<F>(source: &Arc<SimpleGraph>, target: &Arc<SimpleGraph>, kind: EmbeddingKind, f: F)
where
    F: FnMut(&TopMinorMorphism) -> ControlFlow<()>,
{
    if !may_exist(source, target, kind) {
        return;
    }
    Search::new(source, target, kind, f).run(None, None);
}

/// All morphisms, ordered by total path length (stable within a length).
/// With a limit, lengths are explored in increasing order and the search
/// stops once `limit` morphisms are found.
pub fn enumerate_tm(
    source: &Arc<SimpleGraph>,
    target: &Arc<SimpleGraph>,
    kind: EmbeddingKind,
    limit: Option<usize>,
) -> Enumeration {
    let mut found = Vec::new();
    if !may_exist(source, target, kind) || limit == Some(0) {
        return Enumeration { morphisms: found, limit_reached: limit == Some(0) };
    }
    match limit {
        None => {
            Search::new(source, target, kind, |m: &TopMinorMorphism| {
                found.push(m.clone());
                ControlFlow::Continue(())
            })
            .run(None, None);
            found.sort_by_key(TopMinorMorphism::total_path_length);
            Enumeration { morphisms: found, limit_reached: false }
        }
        Some(limit) => {
            let max_extra = match kind {
                EmbeddingKind::Simplicial | EmbeddingKind::Full => 0,
                _ => target.order() - source.order(),
            };
            for budget in 0..=max_extra {
                let mut s = Search::new(source, target, kind, |m: &TopMinorMorphism| {
                    found.push(m.clone());
                    if found.len() >= limit {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                s.run(Some(budget), Some(budget));
                if found.len() >= limit {
                    return Enumeration { morphisms: found, limit_reached: true };
                }
            }
            Enumeration { morphisms: found, limit_reached: false }
        }
    }
}

/// Some topological minor morphism `pattern -> host`, trying short paths
/// first.
pub fn find_tm(pattern: &Arc<SimpleGraph>, host: &Arc<SimpleGraph>) -> Option<TopMinorMorphism> {
    if !may_exist(pattern, host, EmbeddingKind::Tm) {
        return None;
    }
    let mut hit = None;
    let slack = host.order() - pattern.order();
    let mut cap = 0;
    loop {
        let bounded = cap < slack;
        let mut s = Search::new(pattern, host, EmbeddingKind::Tm, |m: &TopMinorMorphism| {
            hit = Some(m.clone());
            ControlFlow::Break(())
        });
        s.run(bounded.then_some(cap), None);
        if hit.is_some() || !bounded {
            return hit;
        }
        cap = (cap * 2).max(1);
    }
}

pub fn has_topological_minor(pattern: &SimpleGraph, host: &SimpleGraph) -> bool {
    find_tm(&Arc::new(pattern.clone()), &Arc::new(host.clone())).is_some()
}

/// Membership in the class of graphs with no Robertson chain `R_k` as a
/// topological minor.
pub fn gtm_k_member(g: &SimpleGraph, k: usize) -> Result<bool> {
    let r = family(&Family::RobertsonChain(k))?;
    Ok(!has_topological_minor(&r, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{subdivide_uniform, Family};
    use std::collections::BTreeSet;

    fn g(f: Family) -> Arc<SimpleGraph> {
        Arc::new(family(&f).unwrap())
    }

    fn injections(n: usize, m: usize) -> Vec<Vec<usize>> {
        fn go(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for x in 0..m {
                if !cur.contains(&x) {
                    cur.push(x);
                    go(n, m, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(n, m, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn simplicial_and_full_match_brute_force() {
        let cases = [
            (Family::Path(3), Family::Complete(4)),
            (Family::Cycle(4), Family::CompleteBipartite(2, 3)),
            (Family::Path(3), Family::Cycle(5)),
            (Family::Star(3), Family::Theta(1, 2, 3)),
        ];
        for (a, b) in cases {
            let (s, t) = (g(a), g(b));
            for kind in [EmbeddingKind::Simplicial, EmbeddingKind::Full] {
                let got: BTreeSet<Vec<usize>> =
                    enumerate_tm(&s, &t, kind, None).morphisms.into_iter().map(|m| m.rho_v).collect();
                let want: BTreeSet<Vec<usize>> = injections(s.order(), t.order())
                    .into_iter()
                    .filter_map(|f| TopMinorMorphism::from_vertex_map(s.clone(), t.clone(), f))
                    .filter(|m| kind == EmbeddingKind::Simplicial || m.is_full())
                    .map(|m| m.rho_v)
                    .collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn tm_results_validate_and_are_distinct() {
        let s = g(Family::Cycle(3));
        let t = g(Family::Complete(4));
        let all = enumerate_tm(&s, &t, EmbeddingKind::Tm, None).morphisms;
        assert!(all.iter().all(TopMinorMorphism::is_valid));
        let distinct: BTreeSet<_> = all.iter().map(|m| (m.rho_v.clone(), m.rho_e.clone())).collect();
        assert_eq!(distinct.len(), all.len());
        // 24 injective vertex maps of triangles, and the 4-cycles: 4! ordered
        // maps with each of the 3 choices of which edge becomes a 2-path.
        assert_eq!(all.iter().filter(|m| m.total_path_length() == 3).count(), 24);
        assert_eq!(all.iter().filter(|m| m.total_path_length() == 4).count(), 72);
        assert_eq!(all.len(), 96);
        assert!(all.windows(2).all(|w| w[0].total_path_length() <= w[1].total_path_length()));
        let head = enumerate_tm(&s, &t, EmbeddingKind::Tm, Some(30));
        assert!(head.limit_reached);
        assert_eq!(head.morphisms[..], all[..30]);
    }

    #[test]
    fn subdivision_kind() {
        let c3 = family(&Family::Cycle(3)).unwrap();
        let rec = subdivide_uniform(&c3, 3);
        let s = Arc::new(c3);
        let t = Arc::new(rec.subdivided);
        let subs = enumerate_tm(&s, &t, EmbeddingKind::Subdivision, None).morphisms;
        // any ordered triple of distinct vertices determines the arcs
        assert!(subs.iter().all(|m| is_subdivision(m).unwrap()));
        assert_eq!(subs.len(), 9 * 8 * 7);
    }

    #[test]
    fn minors_of_small_graphs() {
        let k4 = family(&Family::Complete(4)).unwrap();
        let k33 = family(&Family::CompleteBipartite(3, 3)).unwrap();
        let k5 = family(&Family::Complete(5)).unwrap();
        assert!(has_topological_minor(&k4, &k5));
        assert!(!has_topological_minor(&k5, &k33));
        assert!(!has_topological_minor(&k4, &family(&Family::Theta(2, 2, 2)).unwrap()));
        let k4s = subdivide_uniform(&k4, 3).subdivided;
        assert!(has_topological_minor(&k4, &k4s));
        assert!(!has_topological_minor(&k4s, &k4));
        let r1 = family(&Family::RobertsonChain(1)).unwrap();
        assert!(!gtm_k_member(&r1, 1).unwrap());
        assert!(!gtm_k_member(&k4, 1).unwrap());
        assert!(gtm_k_member(&family(&Family::Star(5)).unwrap(), 1).unwrap());
        let r2 = family(&Family::RobertsonChain(2)).unwrap();
        assert!(gtm_k_member(&k4, 2).unwrap() == !has_topological_minor(&r2, &k4));
    }
}
