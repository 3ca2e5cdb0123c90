//! Integral homology of based chain complexes: sparse elimination of unit
//! pivots, then Smith normal form on what is left.

mod coeff;
mod hermite;
mod matrix;
mod reduce;
mod snf;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use coeff::Coeff;
pub use hermite::{hermite, span_and_test, Presentation, Subgroup};
pub use matrix::SparseMatrix;
pub use snf::{smith, Dense, Smith};

use crate::error::{Error, Result};
use reduce::{reduce, Reduced};

/// Chain with integer coefficients, sorted by cell index.
pub type Chain = Vec<(usize, BigInt)>;

/// `C_0 <- C_1 <- ... <- C_top`. `boundaries[i]` is `d_{i+1}: C_{i+1} -> C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    zero: SparseMatrix,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        let dims = if dims.is_empty() { vec![0] } else { dims };
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} groups need {} boundary maps", dims.len(), dims.len() - 1)));
        }
        for (i, m) in boundaries.iter().enumerate() {
            if m.rows() != dims[i] || m.cols() != dims[i + 1] {
                return Err(Error::Shape(format!(
                    "boundary of degree {} is {}x{}, expected {}x{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for d in 2..dims.len() {
            let dd = boundaries[d - 2].mul(&boundaries[d - 1]);
            if dd.is_none_or(|x| !x.is_zero()) {
                return Err(Error::NotAComplex(d));
            }
        }
        let zero = SparseMatrix::zero(0, dims[0]);
        Ok(ChainComplex { dims, boundaries, zero })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Rank of `C_d`, zero outside the range.
    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    /// `d_d`; the zero map for `d = 0`.
    pub fn boundary(&self, d: usize) -> &SparseMatrix {
        if d == 0 {
            &self.zero
        } else {
            &self.boundaries[d - 1]
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn is_cycle<C: Coeff>(&self, d: usize, chain: &[(usize, C)]) -> bool {
        if chain.iter().any(|(c, _)| *c >= self.dim(d)) {
            return false;
        }
        d == 0 || self.boundary(d).apply(chain).is_some_and(|b| b.is_empty())
    }
}

/// Degreewise matrices `f_d: C_d -> D_d` commuting with the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Degrees beyond `maps.len()` are taken to be zero.
    pub fn new(source: &ChainComplex, target: &ChainComplex, maps: Vec<SparseMatrix>) -> Result<Self> {
        for (d, f) in maps.iter().enumerate() {
            if f.cols() != source.dim(d) || f.rows() != target.dim(d) {
                return Err(Error::Shape(format!("chain map in degree {} has the wrong shape", d)));
            }
        }
        for d in 1..maps.len() {
            let lhs = target.boundary(d).mul(&maps[d]);
            let rhs = maps[d - 1].mul(source.boundary(d));
            if lhs.is_none() || lhs != rhs {
                return Err(Error::NotChainMap(d));
            }
        }
        if let Some(f) = maps.last() {
            // the next degree maps to zero, so the last square must also commute
            let d = maps.len();
            if d <= source.top() && f.mul(source.boundary(d)).is_none_or(|x| !x.is_zero()) {
                return Err(Error::NotChainMap(d));
            }
        }
        Ok(ChainMap { maps })
    }

    pub fn degree(&self, d: usize) -> Option<&SparseMatrix> {
        self.maps.get(d)
    }

    pub fn apply<C: Coeff>(&self, d: usize, chain: &[(usize, C)]) -> Option<Vec<(usize, C)>> {
        match self.maps.get(d) {
            Some(f) => f.apply(chain),
            None => Some(Vec::new()),
        }
    }
}

/// Betti numbers and torsion coefficients per degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    pub fn presentation(&self, d: usize) -> Presentation {
        Presentation {
            torsion: self.torsion.get(d).cloned().unwrap_or_default(),
            free: self.betti.get(d).copied().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug)]
struct DegreeData {
    presentation: Presentation,
    /// Rows `r..m` of `V^-1` for the Smith form of the residual `d_d`.
    kernel_coords: Dense<BigInt>,
    /// Columns `r..m` of `V`.
    kernel_basis: Dense<BigInt>,
    /// Left transform (and inverse) of the Smith form of the boundaries in
    /// kernel coordinates.
    u: Dense<BigInt>,
    u_inv: Dense<BigInt>,
    /// Which rows of `u` are homology coordinates.
    coordinate_rows: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Engine {
    Small(Reduced<i64>),
    Big(Reduced<BigInt>),
}

impl Engine {
    fn residual_dim(&self, d: usize) -> usize {
        match self {
            Engine::Small(r) => r.cells[d].len(),
            Engine::Big(r) => r.cells[d].len(),
        }
    }

    fn project(&self, d: usize, chain: &[(usize, BigInt)]) -> Chain {
        let small: Option<Vec<(usize, i64)>> = chain.iter().map(|(c, v)| Some((*c, v.convert::<i64>()?))).collect();
        if let Some(small) = small {
            let fast = match self {
                Engine::Small(r) => r.project(d, &small),
                Engine::Big(r) => r.project(d, &small),
            };
            if let Some(z) = fast {
                return z.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect();
            }
        }
        match self {
            Engine::Small(r) => r.project(d, chain),
            Engine::Big(r) => r.project(d, chain),
        }
        .expect("bigint arithmetic")
    }

    fn lift(&self, d: usize, chain: &[(usize, BigInt)]) -> Chain {
        match self {
            Engine::Small(r) => r.lift(d, chain),
            Engine::Big(r) => r.lift(d, chain),
        }
        .expect("bigint arithmetic")
    }
}

/// Homology of a complex with enough data kept to read off coordinates of
/// cycles and representatives of generators.
#[derive(Clone, Debug)]
pub struct Homology {
    complex: ChainComplex,
    engine: Engine,
    degrees: Vec<DegreeData>,
}

fn to_big<T: Coeff>(m: &Dense<T>) -> Dense<BigInt> {
    m.iter().map(|r| r.iter().map(Coeff::to_big).collect()).collect()
}

fn dense_phase<T: Coeff>(red: &Reduced<T>) -> Option<Vec<DegreeData>> {
    let top = red.cells.len() - 1;
    let dense_boundary = |d: usize| -> Dense<T> {
        let rows = if d == 0 { 0 } else { red.cells[d - 1].len() };
        let cols = red.cells.get(d).map_or(0, Vec::len);
        let mut out = vec![vec![T::zero(); cols]; rows];
        if d >= 1 && d <= top {
            for (c, col) in red.boundary[d].iter().enumerate() {
                for (r, v) in col {
                    out[*r][c] = v.clone();
                }
            }
        }
        out
    };
    let mut out = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let m = red.cells[d].len();
        let rows_below = if d == 0 { 0 } else { red.cells[d - 1].len() };
        let s = smith(dense_boundary(d), rows_below, m, false, true)?;
        let r = s.rank();
        let kernel_coords: Dense<T> = s.v_inv[r..].to_vec();
        let kernel_basis: Dense<T> = s.v.iter().map(|row| row[r..].to_vec()).collect();
        let k = m - r;
        let above = if d < top { red.cells[d + 1].len() } else { 0 };
        let bd = dense_boundary(d + 1);
        let in_kernel = snf::mat_mul(&kernel_coords, &bd, m, above)?;
        let s2 = smith(in_kernel, k, above, true, false)?;
        let mut torsion = Vec::new();
        let mut coordinate_rows = Vec::new();
        for (i, x) in s2.diag.iter().enumerate() {
            if !x.is_one() {
                torsion.push(x.to_big());
                coordinate_rows.push(i);
            }
        }
        coordinate_rows.extend(s2.rank()..k);
        out.push(DegreeData {
            presentation: Presentation { torsion, free: k - s2.rank() },
            kernel_coords: to_big(&kernel_coords),
            kernel_basis: to_big(&kernel_basis),
            u: to_big(&s2.u),
            u_inv: to_big(&s2.u_inv),
            coordinate_rows,
        });
    }
    Some(out)
}

impl Homology {
    pub fn compute(complex: ChainComplex) -> Self {
        if let Some(red) = reduce::<i64>(&complex) {
            if let Some(degrees) = dense_phase(&red) {
                return Homology { complex, engine: Engine::Small(red), degrees };
            }
        }
        let red = reduce::<BigInt>(&complex).expect("bigint arithmetic");
        let degrees = dense_phase(&red).expect("bigint arithmetic");
        Homology { complex, engine: Engine::Big(red), degrees }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.complex.top()
    }

    pub fn presentation(&self, d: usize) -> Presentation {
        self.degrees.get(d).map(|x| x.presentation.clone()).unwrap_or_default()
    }

    pub fn betti(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |x| x.presentation.free)
    }

    pub fn summary(&self) -> HomologySummary {
        HomologySummary {
            betti: self.degrees.iter().map(|x| x.presentation.free).collect(),
            torsion: self.degrees.iter().map(|x| x.presentation.torsion.clone()).collect(),
        }
    }

    /// Cells left after sparse elimination, per degree.
    pub fn residual_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|d| self.engine.residual_dim(d)).collect()
    }

    /// Coordinates of the class of a cycle in the presentation of `H_d`.
    pub fn coordinates<C: Coeff>(&self, d: usize, chain: &[(usize, C)]) -> Result<Vec<BigInt>> {
        if d > self.top() {
            return Ok(Vec::new());
        }
        if !self.complex.is_cycle(d, chain) {
            return Err(Error::Shape(format!("chain of degree {} is not a cycle", d)));
        }
        let big: Chain = chain.iter().map(|(c, v)| (*c, v.to_big())).collect();
        Ok(self.coordinates_unchecked(d, &big))
    }

    pub(crate) fn coordinates_unchecked(&self, d: usize, chain: &[(usize, BigInt)]) -> Vec<BigInt> {
        let data = &self.degrees[d];
        let z = self.engine.project(d, chain);
        let w: Vec<BigInt> = data
            .kernel_coords
            .iter()
            .map(|row| z.iter().map(|(c, v)| &row[*c] * v).sum())
            .collect();
        let mut coords: Vec<BigInt> = data
            .coordinate_rows
            .iter()
            .map(|&i| data.u[i].iter().zip(&w).map(|(a, b)| a * b).sum())
            .collect();
        data.presentation.normalize(&mut coords);
        coords
    }

    /// Representative cycle for each coordinate direction of `H_d`.
    pub fn generators(&self, d: usize) -> Vec<Chain> {
        let Some(data) = self.degrees.get(d) else { return Vec::new() };
        data.coordinate_rows
            .iter()
            .map(|&i| {
                let k: Vec<BigInt> = data.u_inv.iter().map(|row| row[i].clone()).collect();
                let residual: Chain = data
                    .kernel_basis
                    .iter()
                    .enumerate()
                    .map(|(c, row)| (c, row.iter().zip(&k).map(|(a, b)| a * b).sum::<BigInt>()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                self.engine.lift(d, &residual)
            })
            .collect()
    }
}

/// Matrix of `f_*: H_d(C) -> H_d(D)`, one column per generator of `H_d(C)`.
pub fn induced_on_homology(f: &ChainMap, source: &Homology, target: &Homology, d: usize) -> Result<Vec<Vec<BigInt>>> {
    source
        .generators(d)
        .iter()
        .map(|z| {
            let image = f.apply(d, z).ok_or_else(|| Error::Shape("overflow applying chain map".into()))?;
            target.coordinates(d, &image)
        })
        .collect()
}

/// Convenience: homology summary of a complex.
pub fn homology(complex: &ChainComplex) -> HomologySummary {
    Homology::compute(complex.clone()).summary()
}

pub fn unit_vector(width: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); width];
    v[i] = BigInt::one();
    v
}

#[cfg(test)]
mod tests;
