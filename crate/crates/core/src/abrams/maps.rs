use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{is_edge, CubicalComplex, EDGE_BIT};
use crate::error::{Error, Result};
use crate::graph::{Path, SimpleGraph, SubdivisionRecord};
use crate::homology::{ChainMap, SparseMatrix};
use crate::morphism::TopMinorMorphism;

fn same_model(a: &CubicalComplex, b: &CubicalComplex) -> Result<()> {
    if a.n != b.n || a.ordered != b.ordered {
        return Err(Error::Shape(format!(
            "complexes differ in particle count or ordering ({} vs {})",
            a.n, b.n
        )));
    }
    Ok(())
}

/// Cell-by-cell inclusion `D_n(H) -> D_n(G)` for a subgraph `H` of `G`,
/// matched by vertex ids.
pub fn inclusion_chain_map(h: &CubicalComplex, g: &CubicalComplex) -> Result<ChainMap> {
    same_model(h, g)?;
    let (hg, gg) = (&h.graph, &g.graph);
    let vmap: Vec<usize> = (0..hg.order())
        .map(|v| gg.index_of(hg.id(v)).ok_or_else(|| Error::NotASubgraph(format!("vertex {} missing", hg.id(v)))))
        .collect::<Result<_>>()?;
    let emap: Vec<(u32, i64)> = hg
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (vmap[a], vmap[b]);
            let e = gg
                .edge_between(x, y)
                .ok_or_else(|| Error::NotASubgraph(format!("edge {{{}, {}}} missing", gg.id(x), gg.id(y))))?;
            Ok((EDGE_BIT | e as u32, if x < y { 1 } else { -1 }))
        })
        .collect::<Result<_>>()?;
    let mut maps = Vec::new();
    let mut slots = vec![0u32; h.n];
    for d in 0..=h.top() {
        let mut cols = Vec::with_capacity(h.count(d));
        for c in h.cells[d].chunks_exact(h.n) {
            let mut sign = 1;
            for (s, &x) in slots.iter_mut().zip(c) {
                *s = if is_edge(x) {
                    let (e, o) = emap[(x & !EDGE_BIT) as usize];
                    sign *= o;
                    e
                } else {
                    vmap[x as usize] as u32
                };
            }
            let (row, extra) = g.locate(&mut slots).ok_or_else(|| Error::NotASubgraph("cell missing".into()))?;
            cols.push(vec![(row, sign * extra)]);
        }
        maps.push(SparseMatrix::from_columns(g.count(d), cols));
    }
    ChainMap::new(h.chain_complex(), g.chain_complex(), maps)
}

/// Chain map `D_n(G) -> D_n(G')` of a subdivision: each edge goes to the
/// signed sum of the edges on its path, vertices go to themselves.
pub fn subdivision_chain_map(
    record: &SubdivisionRecord,
    src: &CubicalComplex,
    dst: &CubicalComplex,
) -> Result<ChainMap> {
    same_model(src, dst)?;
    let (og, sg) = (&record.original, &record.subdivided);
    if src.graph != *og || dst.graph != *sg {
        return Err(Error::Shape("complexes do not match the subdivision".into()));
    }
    // original vertices keep their ids
    let vmap: Vec<u32> = (0..og.order())
        .map(|v| {
            sg.index_of(og.id(v))
                .map(|x| x as u32)
                .ok_or_else(|| Error::Shape(format!("vertex {} lost by the subdivision", og.id(v))))
        })
        .collect::<Result<_>>()?;
    let pieces: Vec<Vec<(u32, i64)>> = og
        .edges()
        .iter()
        .zip(&record.edge_paths)
        .map(|(&(a, _), p)| {
            let walk = p.oriented_from(vmap[a] as usize);
            walk.windows(2)
                .map(|w| {
                    let e = sg.edge_between(w[0], w[1]).expect("path in subdivided graph");
                    (EDGE_BIT | e as u32, if w[0] < w[1] { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    let n = src.n;
    let mut maps = Vec::new();
    for d in 0..=src.top() {
        let mut cols = Vec::with_capacity(src.count(d));
        for c in src.cells[d].chunks_exact(n) {
            let choices: Vec<&[(u32, i64)]> = c
                .iter()
                .filter(|&&x| is_edge(x))
                .map(|&x| pieces[(x & !EDGE_BIT) as usize].as_slice())
                .collect();
            let mut col = Vec::new();
            let mut pick = vec![0usize; choices.len()];
            let mut slots = vec![0u32; n];
            loop {
                let mut sign = 1;
                let mut j = 0;
                for (s, &x) in slots.iter_mut().zip(c) {
                    *s = if is_edge(x) {
                        let (e, o) = choices[j][pick[j]];
                        j += 1;
                        sign *= o;
                        e
                    } else {
                        vmap[x as usize]
                    };
                }
                let (row, extra) = dst.locate(&mut slots).ok_or_else(|| Error::Shape("image cell missing".into()))?;
                col.push((row, sign * extra));
                // odometer over the choices
                let mut k = 0;
                while k < pick.len() {
                    pick[k] += 1;
                    if pick[k] < choices[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
            cols.push(col);
        }
        maps.push(SparseMatrix::from_columns(dst.count(d), cols));
    }
    ChainMap::new(src.chain_complex(), dst.chain_complex(), maps)
}

#[derive(Clone, Debug)]
pub struct GeneratorWitness {
    pub cell: usize,
    pub morphism: TopMinorMorphism,
    /// Slot `p` of the cell is slot `permutation[p]` of the pushed canonical
    /// cell.
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CellGeneratorReport {
    pub i: usize,
    pub n: usize,
    pub cells: usize,
    pub witnessed: usize,
    pub failures: Vec<usize>,
    /// Number of `i`-cells of ordered `D_n(G_{i,n-i})`.
    pub source_cells: usize,
    pub witnesses: Vec<GeneratorWitness>,
}

impl CellGeneratorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.witnessed == self.cells
    }
}

/// `i` isolated edges followed by `n - i` isolated vertices.
pub fn generator_graph(i: usize, n: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..i).map(|j| (2 * j, 2 * j + 1)).collect();
    SimpleGraph::from_edges(2 * i + (n - i), &edges).expect("valid graph")
}

/// Every `i`-cell of ordered `D_n(G)` is the image of the canonical cell of
/// `G_{i,n-i}` under a topological minor morphism (up to the slot action).
pub fn cell_generators_check(g: &SimpleGraph, i: usize, n: usize) -> CellGeneratorReport {
    assert!(i <= n && n >= 1);
    let source = Arc::new(generator_graph(i, n));
    let target = Arc::new(g.clone());
    let source_cells = CubicalComplex::build(&source, n, true).count(i);
    let cx = CubicalComplex::build(g, n, true);
    let mut report = CellGeneratorReport {
        i,
        n,
        cells: cx.count(i),
        witnessed: 0,
        failures: Vec::new(),
        source_cells,
        witnesses: Vec::new(),
    };
    for idx in 0..cx.count(i) {
        let c = cx.raw_cell(i, idx);
        let mut rho_v = vec![0usize; source.order()];
        let mut rho_e = vec![Path::edge(0, 1); i];
        let mut permutation = vec![0usize; n];
        let (mut ej, mut vk) = (0, 0);
        for (p, &x) in c.iter().enumerate() {
            if is_edge(x) {
                let (lo, hi) = g.edge((x & !EDGE_BIT) as usize);
                rho_v[2 * ej] = lo;
                rho_v[2 * ej + 1] = hi;
                rho_e[ej] = Path::edge(lo, hi);
                permutation[p] = ej;
                ej += 1;
            } else {
                rho_v[2 * i + vk] = x as usize;
                permutation[p] = i + vk;
                vk += 1;
            }
        }
        let m = TopMinorMorphism::new(source.clone(), target.clone(), rho_v, rho_e);
        // push the canonical cell and compare slot by slot
        let pushed: Vec<u32> = (0..i)
            .map(|j| EDGE_BIT | g.edge_between(m.rho_v[2 * j], m.rho_v[2 * j + 1]).map_or(u32::MAX >> 1, |e| e as u32))
            .chain((0..n - i).map(|k| m.rho_v[2 * i + k] as u32))
            .collect();
        let matches = c.iter().enumerate().all(|(p, &x)| pushed[permutation[p]] == x);
        if m.is_valid() && matches {
            report.witnessed += 1;
            report.witnesses.push(GeneratorWitness { cell: idx, morphism: m, permutation });
        } else {
            report.failures.push(idx);
        }
    }
    report
}
