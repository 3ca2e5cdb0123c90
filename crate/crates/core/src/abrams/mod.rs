//! Discretized configuration spaces `D_n(G)` as integral cubical chain
//! complexes, ordered and unordered.

mod maps;
mod sufficiency;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::SimpleGraph;
use crate::homology::{ChainComplex, SparseMatrix};

pub use maps::{
    cell_generators_check, generator_graph, inclusion_chain_map, subdivision_chain_map,
    CellGeneratorReport, GeneratorWitness,
};
pub use sufficiency::{is_sufficiently_subdivided, sufficient_subdivision};

const EDGE_BIT: u32 = 1 << 31;

/// A slot of a cell: a vertex or an (open) edge of the ambient graph, by
/// dense index. Vertices order before edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Vertex(usize),
    Edge(usize),
}

impl Slot {
    fn encode(self) -> u32 {
        match self {
            Slot::Vertex(v) => v as u32,
            Slot::Edge(e) => EDGE_BIT | e as u32,
        }
    }

    fn decode(x: u32) -> Slot {
        if x & EDGE_BIT != 0 {
            Slot::Edge((x & !EDGE_BIT) as usize)
        } else {
            Slot::Vertex(x as usize)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicalCell {
    pub slots: Vec<Slot>,
}

impl CubicalCell {
    pub fn dimension(&self) -> usize {
        self.slots.iter().filter(|s| matches!(s, Slot::Edge(_))).count()
    }
}

#[derive(Clone, Debug)]
pub struct CubicalComplex {
    graph: SimpleGraph,
    n: usize,
    ordered: bool,
    /// Per dimension, cells flattened with stride `n`, sorted.
    cells: Vec<Vec<u32>>,
    chain: ChainComplex,
}

fn is_edge(x: u32) -> bool {
    x & EDGE_BIT != 0
}

/// Sort into the unordered representative; returns the sign of the
/// permutation induced on edge slots.
fn canonicalize(slots: &mut [u32]) -> i64 {
    let edges: Vec<u32> = slots.iter().copied().filter(|&x| is_edge(x)).collect();
    let mut inversions = 0usize;
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            if edges[a] > edges[b] {
                inversions += 1;
            }
        }
    }
    slots.sort_unstable();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn permutations(items: &[u32], out: &mut Vec<Vec<u32>>) {
    fn go(items: &[u32], used: &mut Vec<bool>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == items.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                cur.push(items[i]);
                go(items, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(items, &mut vec![false; items.len()], &mut Vec::new(), out);
}

/// Unordered cells of dimension `k` using only the allowed vertices and
/// edges, each as a sorted slot list.
fn unordered_cells(g: &SimpleGraph, n: usize, k: usize, vmask: &[bool], emask: &[bool]) -> Vec<Vec<u32>> {
    struct Ctx<'a> {
        g: &'a SimpleGraph,
        n: usize,
        k: usize,
        vmask: &'a [bool],
        edges: Vec<usize>,
        blocked: Vec<bool>,
        chosen: Vec<u32>,
        out: Vec<Vec<u32>>,
    }
    fn pick_vertices(c: &mut Ctx, from: usize, left: usize) {
        if left == 0 {
            let mut cell = c.chosen.clone();
            cell.sort_unstable();
            c.out.push(cell);
            return;
        }
        for v in from..c.g.order() {
            if c.vmask[v] && !c.blocked[v] {
                c.chosen.push(v as u32);
                pick_vertices(c, v + 1, left - 1);
                c.chosen.pop();
            }
        }
    }
    fn pick_edges(c: &mut Ctx, from: usize, left: usize) {
        if left == 0 {
            let rest = c.n - c.k;
            pick_vertices(c, 0, rest);
            return;
        }
        for i in from..c.edges.len() {
            let e = c.edges[i];
            let (a, b) = c.g.edge(e);
            if c.blocked[a] || c.blocked[b] {
                continue;
            }
            c.blocked[a] = true;
            c.blocked[b] = true;
            c.chosen.push(EDGE_BIT | e as u32);
            pick_edges(c, i + 1, left - 1);
            c.chosen.pop();
            c.blocked[a] = false;
            c.blocked[b] = false;
        }
    }
    let edges = (0..g.size()).filter(|&e| emask[e] && vmask[g.edge(e).0] && vmask[g.edge(e).1]).collect();
    let mut c = Ctx {
        g,
        n,
        k,
        vmask,
        edges,
        blocked: vec![false; g.order()],
        chosen: Vec::new(),
        out: Vec::new(),
    };
    pick_edges(&mut c, 0, k);
    c.out
}

impl CubicalComplex {
    /// `D_n(G)`. Cells are numbered in lexicographic order of their slot
    /// lists, vertices before edges.
    pub fn build(g: &SimpleGraph, n: usize, ordered: bool) -> Self {
        Self::build_on(g, n, ordered, &vec![true; g.order()], &vec![true; g.size()])
    }

    /// `D_n(H)` for the subgraph `H` of `g` given by masks, with cells
    /// labelled by the indices of `g`. An edge is used only if both its
    /// endpoints are allowed.
    pub fn build_on(g: &SimpleGraph, n: usize, ordered: bool, vmask: &[bool], emask: &[bool]) -> Self {
        assert!(n >= 1, "at least one particle");
        let mut cells: Vec<Vec<u32>> = Vec::new();
        for k in 0..=n {
            let mut list = unordered_cells(g, n, k, vmask, emask);
            if list.is_empty() && k > 0 {
                break;
            }
            if ordered {
                let mut all = Vec::with_capacity(list.len() * (1..=n).product::<usize>());
                for c in &list {
                    permutations(c, &mut all);
                }
                list = all;
            }
            list.sort_unstable();
            cells.push(list.concat());
        }
        let mut cx = CubicalComplex {
            graph: g.clone(),
            n,
            ordered,
            cells,
            chain: ChainComplex::new(vec![0], Vec::new()).expect("empty complex"),
        };
        let dims: Vec<usize> = (0..cx.cells.len()).map(|d| cx.count(d)).collect();
        let boundaries = (1..cx.cells.len()).map(|d| cx.boundary_matrix(d)).collect();
        cx.chain = ChainComplex::new(dims, boundaries).expect("cubical boundary squares to zero");
        cx
    }

    fn boundary_matrix(&self, d: usize) -> SparseMatrix {
        let n = self.n;
        let mut cols = Vec::with_capacity(self.count(d));
        let mut face = vec![0u32; n];
        for c in self.cells[d].chunks_exact(n) {
            let mut col = Vec::with_capacity(2 * d);
            let mut j = 0;
            for p in 0..n {
                if !is_edge(c[p]) {
                    continue;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                j += 1;
                let (lo, hi) = self.graph.edge((c[p] & !EDGE_BIT) as usize);
                for (v, s) in [(hi, sign), (lo, -sign)] {
                    face.copy_from_slice(c);
                    face[p] = v as u32;
                    let extra = if self.ordered { 1 } else { canonicalize(&mut face) };
                    let row = self.find_raw(d - 1, &face).expect("face is a cell");
                    col.push((row, s * extra));
                }
            }
            cols.push(col);
        }
        SparseMatrix::from_columns(self.count(d - 1), cols)
    }

    fn find_raw(&self, d: usize, key: &[u32]) -> Option<usize> {
        let flat = self.cells.get(d)?;
        let n = self.n;
        let (mut lo, mut hi) = (0, flat.len() / n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * n..(mid + 1) * n].cmp(key) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// Highest dimension with cells.
    pub fn top(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, |c| c.len() / self.n)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        (0..self.cells.len()).map(|d| self.count(d)).collect()
    }

    pub fn raw_cell(&self, d: usize, i: usize) -> &[u32] {
        &self.cells[d][i * self.n..(i + 1) * self.n]
    }

    pub fn cell(&self, d: usize, i: usize) -> CubicalCell {
        CubicalCell { slots: self.raw_cell(d, i).iter().map(|&x| Slot::decode(x)).collect() }
    }

    pub fn cells(&self, d: usize) -> impl Iterator<Item = CubicalCell> + '_ {
        (0..self.count(d)).map(move |i| self.cell(d, i))
    }

    /// Index of a cell given in its stored form (sorted for the unordered
    /// model).
    pub fn find(&self, cell: &CubicalCell) -> Option<usize> {
        let key: Vec<u32> = cell.slots.iter().map(|s| s.encode()).collect();
        if key.len() != self.n {
            return None;
        }
        self.find_raw(cell.dimension(), &key)
    }

    /// Index and orientation sign of an arbitrary slot tuple, after
    /// canonicalization in the unordered model.
    pub(crate) fn locate(&self, slots: &mut [u32]) -> Option<(usize, i64)> {
        let d = slots.iter().filter(|&&x| is_edge(x)).count();
        let sign = if self.ordered { 1 } else { canonicalize(slots) };
        self.find_raw(d, slots).map(|i| (i, sign))
    }

    pub fn chain_complex(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn into_chain_complex(self) -> ChainComplex {
        self.chain
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chain.euler_characteristic()
    }
}

pub fn build_discretized(g: &SimpleGraph, n: usize, ordered: bool) -> CubicalComplex {
    CubicalComplex::build(g, n, ordered)
}

#[cfg(test)]
mod tests;
