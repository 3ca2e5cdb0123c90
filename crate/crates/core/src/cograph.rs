//! Cographs and their cotrees.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{complement, disjoint_union, SimpleGraph};
use crate::morphism::{enumerate_tm, EmbeddingKind, TopMinorMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CotreeLabel {
    /// Disjoint union.
    Zero,
    /// Join: complement of the disjoint union of complements.
    One,
    Leaf,
}

impl CotreeLabel {
    pub fn token(self) -> &'static str {
        match self {
            CotreeLabel::Zero => "0",
            CotreeLabel::One => "1",
            CotreeLabel::Leaf => "L",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "0" => Some(CotreeLabel::Zero),
            "1" => Some(CotreeLabel::One),
            "L" => Some(CotreeLabel::Leaf),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotreeNode {
    pub label: CotreeLabel,
    pub children: Vec<usize>,
}

/// Rooted `{0, 1, L}`-labelled tree. `leaf_map` sends leaf nodes to vertex
/// indices of the cograph they describe, when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotree {
    pub nodes: Vec<CotreeNode>,
    pub root: usize,
    pub leaf_map: BTreeMap<usize, usize>,
}

/// Recursive form used for building and enumerating.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Leaf(Option<usize>),
    Node(CotreeLabel, Vec<Shape>),
}

impl Shape {
    fn code(&self) -> String {
        match self {
            Shape::Leaf(_) => "L".into(),
            Shape::Node(l, ch) => {
                let mut codes: Vec<String> = ch.iter().map(Shape::code).collect();
                codes.sort();
                format!("{}({})", l.token(), codes.concat())
            }
        }
    }

    fn sorted(self) -> Shape {
        match self {
            Shape::Leaf(v) => Shape::Leaf(v),
            Shape::Node(l, ch) => {
                let mut ch: Vec<(String, Shape)> = ch.into_iter().map(|c| (c.code(), c.sorted())).collect();
                ch.sort_by(|a, b| a.0.cmp(&b.0));
                Shape::Node(l, ch.into_iter().map(|x| x.1).collect())
            }
        }
    }

    fn into_cotree(self) -> Cotree {
        fn push(s: Shape, nodes: &mut Vec<CotreeNode>, leaf_map: &mut BTreeMap<usize, usize>) -> usize {
            let id = nodes.len();
            match s {
                Shape::Leaf(v) => {
                    nodes.push(CotreeNode { label: CotreeLabel::Leaf, children: Vec::new() });
                    if let Some(v) = v {
                        leaf_map.insert(id, v);
                    }
                }
                Shape::Node(l, ch) => {
                    nodes.push(CotreeNode { label: l, children: Vec::new() });
                    let kids: Vec<usize> = ch.into_iter().map(|c| push(c, nodes, leaf_map)).collect();
                    nodes[id].children = kids;
                }
            }
            id
        }
        let mut nodes = Vec::new();
        let mut leaf_map = BTreeMap::new();
        let root = push(self.sorted(), &mut nodes, &mut leaf_map);
        Cotree { nodes, root, leaf_map }
    }
}

/// Connected components of the subgraph induced on `vs`, in the graph or in
/// its complement.
fn components(g: &SimpleGraph, vs: &[usize], in_complement: bool) -> Vec<Vec<usize>> {
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &v) in vs.iter().enumerate() {
        pos[v] = i;
    }
    let mut seen = vec![false; vs.len()];
    let mut out = Vec::new();
    for s in 0..vs.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![vs[s]];
        let mut stack = vec![vs[s]];
        while let Some(u) = stack.pop() {
            for (j, &w) in vs.iter().enumerate() {
                if seen[j] || w == u {
                    continue;
                }
                if g.has_edge(u, w) != in_complement {
                    seen[j] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn decompose(g: &SimpleGraph, vs: &[usize]) -> Option<Shape> {
    if vs.len() == 1 {
        return Some(Shape::Leaf(Some(vs[0])));
    }
    let comps = components(g, vs, false);
    if comps.len() > 1 {
        let ch = comps.iter().map(|c| decompose(g, c)).collect::<Option<Vec<_>>>()?;
        return Some(Shape::Node(CotreeLabel::Zero, ch));
    }
    let co = components(g, vs, true);
    if co.len() > 1 {
        let ch = co.iter().map(|c| decompose(g, c)).collect::<Option<Vec<_>>>()?;
        return Some(Shape::Node(CotreeLabel::One, ch));
    }
    None
}

/// Built from single vertices by disjoint unions and complements. The empty
/// graph counts as a cograph.
pub fn is_cograph(g: &SimpleGraph) -> bool {
    g.order() == 0 || decompose(g, &(0..g.order()).collect::<Vec<_>>()).is_some()
}

/// The cotree of a cograph, children in canonical order, with leaves mapped
/// to vertex indices.
pub fn cotree_of(g: &SimpleGraph) -> Result<Cotree> {
    if g.order() == 0 {
        return Err(Error::NotACograph);
    }
    decompose(g, &(0..g.order()).collect::<Vec<_>>()).map(Shape::into_cotree).ok_or(Error::NotACograph)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CotreeViolation {
    NotATree(String),
    SingletonNotLeaf,
    RootLabel,
    LeafWithChildren(usize),
    InternalLeafLabel(usize),
    TooFewChildren(usize),
    NoAlternation { parent: usize, child: usize },
}

/// All violations of the cotree conditions; empty means valid.
pub fn validate_cotree(t: &Cotree) -> Vec<CotreeViolation> {
    let mut out = Vec::new();
    let n = t.nodes.len();
    if t.root >= n {
        out.push(CotreeViolation::NotATree("root out of range".into()));
        return out;
    }
    let mut parents = vec![0usize; n];
    for node in &t.nodes {
        for &c in &node.children {
            if c >= n {
                out.push(CotreeViolation::NotATree(format!("child {} out of range", c)));
                return out;
            }
            parents[c] += 1;
        }
    }
    if parents[t.root] != 0 || (0..n).any(|v| v != t.root && parents[v] != 1) {
        out.push(CotreeViolation::NotATree("every non-root node needs exactly one parent".into()));
        return out;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![t.root];
    while let Some(v) = stack.pop() {
        if seen[v] {
            out.push(CotreeViolation::NotATree("cycle".into()));
            return out;
        }
        seen[v] = true;
        stack.extend(t.nodes[v].children.iter().copied());
    }
    if seen.iter().any(|s| !s) {
        out.push(CotreeViolation::NotATree("unreachable nodes".into()));
        return out;
    }
    if n == 1 {
        if t.nodes[0].label != CotreeLabel::Leaf || !t.nodes[0].children.is_empty() {
            out.push(CotreeViolation::SingletonNotLeaf);
        }
        return out;
    }
    if t.nodes[t.root].label == CotreeLabel::Leaf {
        out.push(CotreeViolation::RootLabel);
    }
    for (v, node) in t.nodes.iter().enumerate() {
        match node.label {
            CotreeLabel::Leaf => {
                if !node.children.is_empty() {
                    out.push(CotreeViolation::LeafWithChildren(v));
                }
            }
            l => {
                if node.children.is_empty() {
                    out.push(CotreeViolation::InternalLeafLabel(v));
                } else if node.children.len() < 2 {
                    out.push(CotreeViolation::TooFewChildren(v));
                }
                for &c in &node.children {
                    let cl = t.nodes[c].label;
                    if cl != CotreeLabel::Leaf && cl == l {
                        out.push(CotreeViolation::NoAlternation { parent: v, child: c });
                    }
                }
            }
        }
    }
    out
}

impl Cotree {
    pub fn singleton() -> Self {
        Shape::Leaf(None).into_cotree()
    }

    /// Build from `(label, children)` lists; no validation.
    pub fn from_nodes(nodes: Vec<CotreeNode>, root: usize) -> Self {
        Cotree { nodes, root, leaf_map: BTreeMap::new() }
    }

    pub fn is_valid(&self) -> bool {
        validate_cotree(self).is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.label == CotreeLabel::Leaf).count()
    }

    fn shape(&self, v: usize) -> Shape {
        let node = &self.nodes[v];
        match node.label {
            CotreeLabel::Leaf => Shape::Leaf(self.leaf_map.get(&v).copied()),
            l => Shape::Node(l, node.children.iter().map(|&c| self.shape(c)).collect()),
        }
    }

    /// Encoding that ignores child order and leaf identities.
    pub fn canonical_code(&self) -> String {
        self.shape(self.root).code()
    }

    /// Same tree with children in canonical order and nodes renumbered in
    /// preorder.
    pub fn canonical(&self) -> Cotree {
        self.shape(self.root).into_cotree()
    }

    /// Leaves in preorder; the `k`-th leaf becomes vertex `k` of
    /// [`cograph_of`].
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if self.nodes[v].label == CotreeLabel::Leaf {
                out.push(v);
            }
            stack.extend(self.nodes[v].children.iter().rev().copied());
        }
        out
    }

    /// Adjacency by the lowest common ancestor rule: leaves are adjacent iff
    /// their lowest common ancestor is a 1-node. Vertices follow
    /// [`Cotree::leaves`].
    pub fn lca_graph(&self) -> SimpleGraph {
        let n = self.nodes.len();
        let mut parent = vec![usize::MAX; n];
        for (v, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = v;
            }
        }
        let ancestors = |mut v: usize| {
            let mut path = vec![v];
            while parent[v] != usize::MAX {
                v = parent[v];
                path.push(v);
            }
            path
        };
        let leaves = self.leaves();
        let chains: Vec<Vec<usize>> = leaves.iter().map(|&l| ancestors(l)).collect();
        let mut edges = Vec::new();
        for a in 0..leaves.len() {
            for b in a + 1..leaves.len() {
                let lca = chains[a].iter().find(|x| chains[b].contains(x)).copied().expect("common root");
                if self.nodes[lca].label == CotreeLabel::One {
                    edges.push((a, b));
                }
            }
        }
        SimpleGraph::from_edges(leaves.len(), &edges).expect("simple")
    }
}

/// The cograph of a valid cotree, built recursively by disjoint unions and
/// complements. Vertex `k` is the `k`-th leaf in preorder.
pub fn cograph_of(t: &Cotree) -> Result<SimpleGraph> {
    let v = validate_cotree(t);
    if !v.is_empty() {
        return Err(Error::InvalidCotree(format!("{:?}", v)));
    }
    fn build(t: &Cotree, v: usize) -> SimpleGraph {
        let node = &t.nodes[v];
        match node.label {
            CotreeLabel::Leaf => SimpleGraph::from_edges(1, &[]).expect("K1"),
            l => {
                let parts = node.children.iter().map(|&c| build(t, c));
                let parts: Vec<SimpleGraph> =
                    if l == CotreeLabel::One { parts.map(|g| complement(&g)).collect() } else { parts.collect() };
                let mut acc = SimpleGraph::empty();
                for p in &parts {
                    acc = disjoint_union(&acc, p).0;
                }
                let acc = if l == CotreeLabel::One { complement(&acc) } else { acc };
                acc.canonical_relabel()
            }
        }
    }
    Ok(build(t, t.root))
}

/// Induced-subgraph embeddings `g -> h`.
pub fn enumerate_full_embeddings(g: &SimpleGraph, h: &SimpleGraph) -> Vec<TopMinorMorphism> {
    enumerate_tm(&Arc::new(g.clone()), &Arc::new(h.clone()), EmbeddingKind::Full, None).morphisms
}

/// All cotrees with `leaves` leaves, up to child order, in canonical form.
pub fn enumerate_cotrees(leaves: usize) -> Vec<Cotree> {
    if leaves == 0 {
        return Vec::new();
    }
    if leaves == 1 {
        return vec![Cotree::singleton()];
    }
    // shapes[s][l]: canonical shapes with s leaves and root label l (0 or 1)
    let mut shapes: Vec<[Vec<Shape>; 2]> = vec![[Vec::new(), Vec::new()]; leaves + 1];
    for s in 2..=leaves {
        for (li, label) in [CotreeLabel::Zero, CotreeLabel::One].into_iter().enumerate() {
            // child options: a leaf, or a shape of the other label with fewer leaves
            let mut options: Vec<(usize, Shape)> = vec![(1, Shape::Leaf(None))];
            for t in 2..s {
                for sh in &shapes[t][1 - li] {
                    options.push((t, sh.clone()));
                }
            }
            let mut out = Vec::new();
            let mut pick = Vec::new();
            fn go(
                options: &[(usize, Shape)],
                from: usize,
                left: usize,
                pick: &mut Vec<usize>,
                label: CotreeLabel,
                out: &mut Vec<Shape>,
            ) {
                if left == 0 {
                    if pick.len() >= 2 {
                        let ch = pick.iter().map(|&k| options[k].1.clone()).collect();
                        out.push(Shape::Node(label, ch).sorted());
                    }
                    return;
                }
                for k in from..options.len() {
                    if options[k].0 <= left {
                        pick.push(k);
                        go(options, k, left - options[k].0, pick, label, out);
                        pick.pop();
                    }
                }
            }
            go(&options, 0, s, &mut pick, label, &mut out);
            shapes[s][li] = out;
        }
    }
    let [zero, one] = core::mem::take(&mut shapes[leaves]);
    zero.into_iter().chain(one).map(Shape::into_cotree).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, graphs_up_to_iso, is_isomorphic, Family};
    use std::collections::BTreeSet;

    fn g(f: Family) -> SimpleGraph {
        family(&f).unwrap()
    }

    /// Independent test: no four vertices induce a path.
    fn p4_free(g: &SimpleGraph) -> bool {
        let n = g.order();
        let p4 = g_path4();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let (sub, _) = g.induced_subgraph(&[a, b, c, d]);
                        if sub.size() == 3 && is_isomorphic(&sub, &p4) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn g_path4() -> SimpleGraph {
        family(&Family::Path(4)).unwrap()
    }

    #[test]
    fn spec_examples() {
        for n in 1..=8 {
            assert!(is_cograph(&g(Family::Complete(n))));
        }
        assert!(is_cograph(&g(Family::CompleteBipartite(3, 4))));
        assert!(!is_cograph(&g_path4()));
        assert_eq!(cotree_of(&g_path4()), Err(Error::NotACograph));
        let k1 = cotree_of(&g(Family::Complete(1))).unwrap();
        assert_eq!(k1.canonical_code(), "L");
        let k2 = cotree_of(&g(Family::Complete(2))).unwrap();
        assert_eq!(k2.canonical_code(), "1(LL)");
        let k3 = Cotree::from_nodes(
            vec![
                CotreeNode { label: CotreeLabel::One, children: vec![1, 2, 3] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
            ],
            0,
        );
        assert!(is_isomorphic(&cograph_of(&k3).unwrap(), &g(Family::Complete(3))));
        let two_edges = Cotree::from_nodes(
            vec![
                CotreeNode { label: CotreeLabel::Zero, children: vec![1, 4] },
                CotreeNode { label: CotreeLabel::One, children: vec![2, 3] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::One, children: vec![5, 6] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
            ],
            0,
        );
        let ge = cograph_of(&two_edges).unwrap();
        assert_eq!((ge.order(), ge.size(), ge.component_count()), (4, 2, 2));
    }

    #[test]
    fn validation() {
        assert!(Cotree::singleton().is_valid());
        let one_child = Cotree::from_nodes(
            vec![
                CotreeNode { label: CotreeLabel::Zero, children: vec![1] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
            ],
            0,
        );
        assert!(validate_cotree(&one_child).contains(&CotreeViolation::TooFewChildren(0)));
        let same = Cotree::from_nodes(
            vec![
                CotreeNode { label: CotreeLabel::Zero, children: vec![1, 2] },
                CotreeNode { label: CotreeLabel::Zero, children: vec![3, 4] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
                CotreeNode { label: CotreeLabel::Leaf, children: vec![] },
            ],
            0,
        );
        assert!(validate_cotree(&same).contains(&CotreeViolation::NoAlternation { parent: 0, child: 1 }));
        assert!(cograph_of(&same).is_err());
    }

    #[test]
    fn full_embeddings() {
        assert_eq!(enumerate_full_embeddings(&g(Family::Complete(2)), &g(Family::Complete(3))).len(), 6);
        assert_eq!(enumerate_full_embeddings(&g(Family::Empty(2)), &g(Family::Complete(3))).len(), 0);
        assert_eq!(enumerate_full_embeddings(&g(Family::Complete(1)), &g(Family::Cycle(5))).len(), 5);
    }

    #[test]
    fn recognition_matches_p4_oracle() {
        let mut counts = Vec::new();
        for n in 1..=6 {
            let all = graphs_up_to_iso(n);
            let mut c = 0;
            for gr in &all {
                let ok = is_cograph(gr);
                assert_eq!(ok, p4_free(gr));
                if ok {
                    c += 1;
                    let t = cotree_of(gr).unwrap();
                    assert!(t.is_valid());
                    let back = cograph_of(&t).unwrap();
                    assert!(is_isomorphic(&back, gr));
                    assert_eq!(back, t.lca_graph());
                    // leaf map gives an explicit isomorphism
                    let leaves = t.leaves();
                    for a in 0..leaves.len() {
                        for b in a + 1..leaves.len() {
                            let (x, y) = (t.leaf_map[&leaves[a]], t.leaf_map[&leaves[b]]);
                            assert_eq!(back.has_edge(a, b), gr.has_edge(x, y));
                        }
                    }
                    // induced subgraphs stay cographs
                    for mask in 1u32..(1 << n) {
                        let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                        assert!(is_cograph(&gr.induced_subgraph(&vs).0));
                    }
                }
            }
            counts.push(c);
        }
        assert_eq!(counts, vec![1, 2, 4, 10, 24, 66]);
    }

    #[test]
    fn cotree_enumeration_and_uniqueness() {
        let expected = [1, 2, 4, 10, 24, 66];
        for (k, &want) in expected.iter().enumerate() {
            let trees = enumerate_cotrees(k + 1);
            assert_eq!(trees.len(), want);
            let codes: BTreeSet<String> = trees.iter().map(Cotree::canonical_code).collect();
            assert_eq!(codes.len(), want);
            for t in &trees {
                assert!(t.is_valid());
                let gr = cograph_of(t).unwrap();
                assert_eq!(gr, t.lca_graph());
                assert_eq!(cotree_of(&gr).unwrap().canonical_code(), t.canonical_code());
            }
        }
    }
}
