use alloc::vec;
use alloc::vec::Vec;

use super::coeff::Coeff;

/// Column-compressed integer matrix; each column is sorted by row with no
/// stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

pub(crate) fn normalize_column(mut col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Duplicate entries in a column are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                assert!(c.iter().all(|&(r, _)| r < rows), "row index out of range");
                normalize_column(c)
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for &(r, c, v) in entries {
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |&(x, _)| x)
            .map(|i| self.columns[c][i].1)
            .unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    /// `self * other`, or `None` on overflow or shape mismatch.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            let mut acc: Vec<(usize, i64)> = Vec::new();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    acc.push((r, a.checked_mul(b)?));
                }
            }
            acc.sort_unstable_by_key(|&(r, _)| r);
            let mut out: Vec<(usize, i64)> = Vec::new();
            for (r, v) in acc {
                match out.last_mut() {
                    Some(last) if last.0 == r => last.1 = last.1.checked_add(v)?,
                    _ => out.push((r, v)),
                }
            }
            out.retain(|&(_, v)| v != 0);
            columns.push(out);
        }
        Some(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    /// Apply to a sparse vector.
    pub fn apply<T: Coeff>(&self, x: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
        let mut acc: Vec<(usize, T)> = Vec::new();
        for (c, v) in x {
            for &(r, a) in &self.columns[*c] {
                acc.push((r, v.checked_mul(&T::from_i64(a))?));
            }
        }
        sum_sorted(acc)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn to_dense<T: Coeff>(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = T::from_i64(v);
        }
        out
    }
}

/// Sort by index, merge duplicates and drop zeros.
pub(crate) fn sum_sorted<T: Coeff>(mut acc: Vec<(usize, T)>) -> Option<Vec<(usize, T)>> {
    acc.sort_by_key(|(r, _)| *r);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(acc.len());
    for (r, v) in acc {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = last.1.checked_add(&v)?,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    Some(out)
}

/// `x + lambda * y` for sorted sparse vectors.
pub(crate) fn axpy<T: Coeff>(x: &[(usize, T)], lambda: &T, y: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, lambda.checked_mul(&y[j].1)?));
            j += 1;
        } else {
            let v = x[i].1.checked_add(&lambda.checked_mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}
