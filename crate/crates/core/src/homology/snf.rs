//! Dense Smith normal form with optional unimodular transforms.

use alloc::vec;
use alloc::vec::Vec;

use super::coeff::Coeff;

pub type Dense<T> = Vec<Vec<T>>;

pub fn identity<T: Coeff>(n: usize) -> Dense<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// `U * A * V = D` with `D` diagonal, diagonal entries positive and each
/// dividing the next. Transforms that were not requested are left empty.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<T>,
    pub u: Dense<T>,
    pub u_inv: Dense<T>,
    pub v: Dense<T>,
    pub v_inv: Dense<T>,
}

impl<T> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct State<T> {
    a: Dense<T>,
    m: usize,
    n: usize,
    left: bool,
    right: bool,
    u: Dense<T>,
    u_inv: Dense<T>,
    v: Dense<T>,
    v_inv: Dense<T>,
}

/// `dst -= q * src` on rows of `mat`.
fn row_sub<T: Coeff>(mat: &mut Dense<T>, dst: usize, src: usize, q: &T) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    let (d, s) = if dst < src {
        let (lo, hi) = mat.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = mat.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s) {
        if !y.is_zero() {
            *x = x.checked_sub(&q.checked_mul(y)?)?;
        }
    }
    Some(())
}

/// `dst -= q * src` on columns of `mat`.
fn col_sub<T: Coeff>(mat: &mut Dense<T>, dst: usize, src: usize, q: &T) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    for row in mat.iter_mut() {
        if !row[src].is_zero() {
            let t = q.checked_mul(&row[src])?;
            row[dst] = row[dst].checked_sub(&t)?;
        }
    }
    Some(())
}

fn swap_cols<T>(mat: &mut Dense<T>, i: usize, j: usize) {
    for row in mat.iter_mut() {
        row.swap(i, j);
    }
}

impl<T: Coeff> State<T> {
    // R_i -= q R_t
    fn row_op(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        row_sub(&mut self.a, i, t, q)?;
        if self.left {
            row_sub(&mut self.u, i, t, q)?;
            col_sub(&mut self.u_inv, t, i, &q.neg_checked()?)?;
        }
        Some(())
    }

    // C_j -= q C_t
    fn col_op(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        col_sub(&mut self.a, j, t, q)?;
        if self.right {
            col_sub(&mut self.v, j, t, q)?;
            row_sub(&mut self.v_inv, t, j, &q.neg_checked()?)?;
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.left {
            self.u.swap(i, j);
            swap_cols(&mut self.u_inv, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if self.right {
            swap_cols(&mut self.v, i, j);
            self.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for x in self.a[t].iter_mut() {
            *x = x.neg_checked()?;
        }
        if self.left {
            for x in self.u[t].iter_mut() {
                *x = x.neg_checked()?;
            }
            for row in self.u_inv.iter_mut() {
                row[t] = row[t].neg_checked()?;
            }
        }
        Some(())
    }

    fn smallest_from(&self, t: usize) -> Option<Option<(usize, usize)>> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs_checked()?;
                if best.as_ref().is_none_or(|b| ax < b.0) {
                    let unit = ax.is_one();
                    best = Some((ax, i, j));
                    if unit {
                        return Some(best.map(|b| (b.1, b.2)));
                    }
                }
            }
        }
        Some(best.map(|b| (b.1, b.2)))
    }

    fn run(&mut self) -> Option<Vec<T>> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.smallest_from(t)? else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let p = self.a[t][t].clone();
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].checked_div(&p)?;
                        self.row_op(i, t, &q)?;
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].checked_div(&p)?;
                        self.col_op(j, t, &q)?;
                    }
                }
                // leftover remainders are smaller than the pivot
                let mut best: Option<(T, bool, usize)> = None;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let ax = self.a[i][t].abs_checked()?;
                        if best.as_ref().is_none_or(|b| ax < b.0) {
                            best = Some((ax, true, i));
                        }
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let ax = self.a[t][j].abs_checked()?;
                        if best.as_ref().is_none_or(|b| ax < b.0) {
                            best = Some((ax, false, j));
                        }
                    }
                }
                if let Some((_, is_row, k)) = best {
                    if is_row {
                        self.row_swap(t, k);
                    } else {
                        self.col_swap(t, k);
                    }
                    continue;
                }
                if p.is_unit() {
                    break;
                }
                let mut bad = None;
                'scan: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if !self.a[i][j].is_zero() && !self.a[i][j].rem_checked(&p)?.is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => self.row_op(t, i, &T::from_i64(-1))?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        Some(diag)
    }
}

/// Smith form of an `m x n` matrix; `None` on arithmetic overflow.
pub fn smith<T: Coeff>(a: Dense<T>, m: usize, n: usize, left: bool, right: bool) -> Option<Smith<T>> {
    debug_assert!(a.len() == m && a.iter().all(|r| r.len() == n));
    let pick = |on: bool, k: usize| if on { identity(k) } else { Vec::new() };
    let mut st = State {
        a,
        m,
        n,
        left,
        right,
        u: pick(left, m),
        u_inv: pick(left, m),
        v: pick(right, n),
        v_inv: pick(right, n),
    };
    let diag = st.run()?;
    Some(Smith { rows: m, cols: n, diag, u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv })
}

pub fn mat_mul<T: Coeff>(a: &Dense<T>, b: &Dense<T>, inner: usize, cols: usize) -> Option<Dense<T>> {
    let mut out = vec![vec![T::zero(); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].checked_add(&row[k].checked_mul(&b[k][j])?)?;
                }
            }
        }
    }
    Some(out)
}
