//! Elimination of unit pivots in a based chain complex. Each step removes a
//! pair `(a, b)` with `<db, a> = +-1`; the recorded steps give the projection
//! onto the residual complex and the inclusion back.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::coeff::Coeff;
use super::matrix::axpy;
use super::ChainComplex;

#[derive(Clone, Debug)]
pub(crate) struct Step<T> {
    /// Degree of `b`; `a` lives one degree lower.
    pub deg: usize,
    pub a: usize,
    pub b: usize,
    pub eps: T,
    pub col_b: Vec<(usize, T)>,
    pub row_a: Vec<(usize, T)>,
}

#[derive(Clone, Debug)]
pub(crate) struct Reduced<T> {
    pub steps: Vec<Step<T>>,
    /// Residual cells per degree, as original indices.
    pub cells: Vec<Vec<usize>>,
    /// Original index to residual index, `usize::MAX` when eliminated.
    pub index: Vec<Vec<usize>>,
    /// Residual boundaries `d_d` for `d >= 1` (entry 0 is empty), in
    /// residual indices.
    pub boundary: Vec<Vec<Vec<(usize, T)>>>,
}

fn coeff_at<T: Coeff>(col: &[(usize, T)], r: usize) -> T {
    col.binary_search_by_key(&r, |(x, _)| *x).map(|i| col[i].1.clone()).unwrap_or_else(|_| T::zero())
}

struct Work<T> {
    cols: Vec<Vec<Vec<(usize, T)>>>,
    rows: Vec<Vec<BTreeSet<usize>>>,
    alive: Vec<Vec<bool>>,
    steps: Vec<Step<T>>,
}

impl<T: Coeff> Work<T> {
    fn eliminate(&mut self, d: usize, a: usize, b: usize) -> Option<()> {
        let top = self.cols.len() - 1;
        let col_b = core::mem::take(&mut self.cols[d][b]);
        let eps = coeff_at(&col_b, a);
        let row_a: Vec<(usize, T)> = self.rows[d][a]
            .iter()
            .filter(|&&c| c != b)
            .map(|&c| (c, coeff_at(&self.cols[d][c], a)))
            .collect();
        for (c, lam) in &row_a {
            let factor = lam.checked_mul(&eps)?.neg_checked()?;
            let old = core::mem::take(&mut self.cols[d][*c]);
            let new = axpy(&old, &factor, &col_b)?;
            for (r, _) in &old {
                self.rows[d][*r].remove(c);
            }
            for (r, _) in &new {
                self.rows[d][*r].insert(*c);
            }
            self.cols[d][*c] = new;
        }
        for (r, _) in &col_b {
            self.rows[d][*r].remove(&b);
        }
        debug_assert!(self.rows[d][a].is_empty());
        self.alive[d][b] = false;
        self.alive[d - 1][a] = false;
        if d >= 2 {
            for (r, _) in core::mem::take(&mut self.cols[d - 1][a]) {
                self.rows[d - 1][r].remove(&a);
            }
        }
        if d < top {
            for c in core::mem::take(&mut self.rows[d + 1][b]) {
                self.cols[d + 1][c].retain(|(r, _)| *r != b);
            }
        }
        self.steps.push(Step { deg: d, a, b, eps, col_b, row_a });
        Some(())
    }

    fn pass(&mut self, d: usize) -> Option<bool> {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.cols[d].len())
            .filter(|&b| self.alive[d][b] && !self.cols[d][b].is_empty())
            .map(|b| Reverse((self.cols[d][b].len(), b)))
            .collect();
        let mut progress = false;
        while let Some(Reverse((len, b))) = heap.pop() {
            if !self.alive[d][b] || self.cols[d][b].is_empty() {
                continue;
            }
            let now = self.cols[d][b].len();
            if now != len {
                heap.push(Reverse((now, b)));
                continue;
            }
            // Markowitz-style: the unit entry whose row is shortest
            let pick = self.cols[d][b]
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(r, _)| (self.rows[d][*r].len(), *r))
                .map(|(r, _)| *r);
            if let Some(a) = pick {
                self.eliminate(d, a, b)?;
                progress = true;
            }
        }
        Some(progress)
    }
}

pub(crate) fn reduce<T: Coeff>(cx: &ChainComplex) -> Option<Reduced<T>> {
    let top = cx.top();
    let mut cols: Vec<Vec<Vec<(usize, T)>>> = vec![Vec::new(); top + 1];
    let mut rows: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new(); top + 1];
    for d in 1..=top {
        let m = cx.boundary(d);
        rows[d] = vec![BTreeSet::new(); cx.dim(d - 1)];
        cols[d] = m
            .columns()
            .iter()
            .enumerate()
            .map(|(c, col)| {
                for &(r, _) in col {
                    rows[d][r].insert(c);
                }
                col.iter().map(|&(r, v)| (r, T::from_i64(v))).collect()
            })
            .collect();
    }
    let alive = (0..=top).map(|d| vec![true; cx.dim(d)]).collect();
    let mut w = Work { cols, rows, alive, steps: Vec::new() };
    loop {
        let mut progress = false;
        for d in (1..=top).rev() {
            progress |= w.pass(d)?;
        }
        if !progress {
            break;
        }
    }
    let mut cells = Vec::with_capacity(top + 1);
    let mut index = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut idx = vec![usize::MAX; cx.dim(d)];
        let live: Vec<usize> = (0..cx.dim(d)).filter(|&c| w.alive[d][c]).collect();
        for (i, &c) in live.iter().enumerate() {
            idx[c] = i;
        }
        cells.push(live);
        index.push(idx);
    }
    let mut boundary = vec![Vec::new()];
    for d in 1..=top {
        let cols = cells[d]
            .iter()
            .map(|&c| {
                let mut col: Vec<(usize, T)> =
                    w.cols[d][c].iter().map(|(r, v)| (index[d - 1][*r], v.clone())).collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        boundary.push(cols);
    }
    Some(Reduced { steps: w.steps, cells, index, boundary })
}

impl<T: Coeff> Reduced<T> {
    /// Image of a chain of degree `deg` in the residual complex, in residual
    /// indices.
    pub fn project<U: Coeff>(&self, deg: usize, chain: &[(usize, U)]) -> Option<Vec<(usize, U)>> {
        let mut z: BTreeMap<usize, U> = BTreeMap::new();
        for (c, v) in chain {
            if !v.is_zero() {
                let e = z.entry(*c).or_insert_with(U::zero);
                *e = e.checked_add(v)?;
            }
        }
        for s in &self.steps {
            if s.deg == deg + 1 {
                if let Some(lam) = z.remove(&s.a) {
                    if lam.is_zero() {
                        continue;
                    }
                    let f = lam.checked_mul(&s.eps.convert::<U>()?)?.neg_checked()?;
                    for (r, v) in &s.col_b {
                        if *r == s.a {
                            continue;
                        }
                        let add = f.checked_mul(&v.convert::<U>()?)?;
                        let e = z.entry(*r).or_insert_with(U::zero);
                        *e = e.checked_add(&add)?;
                        if e.is_zero() {
                            z.remove(r);
                        }
                    }
                }
            } else if s.deg == deg {
                z.remove(&s.b);
            }
        }
        z.into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| {
                let i = self.index[deg][c];
                debug_assert!(i != usize::MAX);
                Some((i, v))
            })
            .collect()
    }

    /// Chain of the original complex representing a residual chain.
    pub fn lift<U: Coeff>(&self, deg: usize, chain: &[(usize, U)]) -> Option<Vec<(usize, U)>> {
        let mut x: BTreeMap<usize, U> =
            chain.iter().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (self.cells[deg][*i], v.clone())).collect();
        for s in self.steps.iter().rev() {
            if s.deg != deg {
                continue;
            }
            let mut acc = U::zero();
            for (c, lam) in &s.row_a {
                if let Some(v) = x.get(c) {
                    acc = acc.checked_add(&v.checked_mul(&lam.convert::<U>()?)?)?;
                }
            }
            if !acc.is_zero() {
                x.insert(s.b, acc.checked_mul(&s.eps.convert::<U>()?)?.neg_checked()?);
            }
        }
        Some(x.into_iter().collect())
    }
}
