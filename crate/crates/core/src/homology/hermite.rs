//! Row Hermite normal form over `Z` and subgroups of finitely generated
//! abelian groups.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced row echelon form over `Z` of the lattice spanned by `rows`: pivots
/// positive, entries above a pivot in `[0, pivot)`, zero rows dropped.
pub fn hermite(rows: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..width {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let top: Vec<BigInt> = m[r].iter().zip(&m[i]).map(|(u, v)| &x * u + &y * v).collect();
            let bottom: Vec<BigInt> = m[r].iter().zip(&m[i]).map(|(u, v)| &ag * v - &bg * u).collect();
            m[r] = top;
            m[i] = bottom;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        let p = m[r][c].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&p);
            if !q.is_zero() {
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
        r += 1;
    }
    m
}

/// `Z/t_1 + ... + Z/t_s + Z^f`; coordinates list torsion entries first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    pub torsion: Vec<BigInt>,
    pub free: usize,
}

impl Presentation {
    pub fn width(&self) -> usize {
        self.torsion.len() + self.free
    }

    /// Reduce torsion coordinates into `[0, t)`.
    pub fn normalize(&self, coords: &mut [BigInt]) {
        for (x, t) in coords.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(t);
        }
    }
}

/// Subgroup of a presented group, stored as the Hermite form of its
/// generators together with the torsion relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub ambient: Presentation,
    pub hnf: Vec<Vec<BigInt>>,
}

impl Subgroup {
    pub fn generated_by(ambient: &Presentation, gens: &[Vec<BigInt>]) -> Result<Self> {
        let h = ambient.width();
        if let Some(g) = gens.iter().find(|g| g.len() != h) {
            return Err(Error::Shape(alloc::format!("generator of length {} in a group of width {}", g.len(), h)));
        }
        let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
        for (j, t) in ambient.torsion.iter().enumerate() {
            let mut r = vec![BigInt::zero(); h];
            r[j] = t.clone();
            rows.push(r);
        }
        Ok(Subgroup { ambient: ambient.clone(), hnf: hermite(&rows, h) })
    }

    pub fn trivial(ambient: &Presentation) -> Self {
        Self::generated_by(ambient, &[]).expect("no generators")
    }

    pub fn everything(ambient: &Presentation) -> Self {
        let h = ambient.width();
        let gens: Vec<Vec<BigInt>> =
            (0..h).map(|i| (0..h).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        Self::generated_by(ambient, &gens).expect("unit vectors")
    }

    /// Free rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.hnf.len() - self.ambient.torsion.len()
    }

    pub fn is_everything(&self) -> bool {
        let h = self.ambient.width();
        self.hnf.len() == h && self.hnf.iter().enumerate().all(|(i, r)| r[i].is_one())
    }

    /// Index of the subgroup when it is of finite index.
    pub fn index(&self) -> Option<BigInt> {
        if self.hnf.len() != self.ambient.width() {
            return None;
        }
        let det: BigInt = self.hnf.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        let tors: BigInt = self.ambient.torsion.iter().cloned().product();
        Some(det / tors)
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.ambient.width() {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = self.hnf.clone();
        rows.push(v.to_vec());
        Ok(hermite(&rows, v.len()) == self.hnf)
    }

    pub fn contains(&self, other: &Subgroup) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = self.hnf.clone();
        rows.extend(other.hnf.iter().cloned());
        Ok(hermite(&rows, self.ambient.width()) == self.hnf)
    }

    pub fn same_as(&self, other: &Subgroup) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.hnf == other.hnf)
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = self.hnf.clone();
        rows.extend(other.hnf.iter().cloned());
        Ok(Subgroup { ambient: self.ambient.clone(), hnf: hermite(&rows, self.ambient.width()) })
    }
}

/// Span the given coordinate vectors and report whether they generate.
pub fn span_and_test(ambient: &Presentation, gens: &[Vec<BigInt>]) -> Result<(Subgroup, bool)> {
    if gens.iter().any(|g| g.len() != ambient.width()) {
        return Err(Error::AmbientMismatch);
    }
    let s = Subgroup::generated_by(ambient, gens)?;
    let all = s.is_everything();
    Ok((s, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn free_group_generation() {
        let z2 = Presentation { torsion: vec![], free: 2 };
        assert!(span_and_test(&z2, &[b(&[1, 0]), b(&[1, 1])]).unwrap().1);
        let (s, all) = span_and_test(&z2, &[b(&[2, 0]), b(&[0, 1])]).unwrap();
        assert!(!all);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.index(), Some(BigInt::from(2)));
        assert_eq!(span_and_test(&z2, &[b(&[1])]), Err(Error::AmbientMismatch));
    }

    #[test]
    fn torsion_coordinates() {
        // Z/2 + Z
        let p = Presentation { torsion: vec![BigInt::from(2)], free: 1 };
        let (s, all) = span_and_test(&p, &[b(&[3, 1])]).unwrap();
        assert!(!all);
        assert_eq!(s.rank(), 1);
        assert!(span_and_test(&p, &[b(&[1, 1]), b(&[0, 1])]).unwrap().1);
        assert!(span_and_test(&p, &[b(&[1, 0]), b(&[4, 1])]).unwrap().1);
        let t = Subgroup::trivial(&p);
        assert_eq!(t.rank(), 0);
        assert!(Subgroup::everything(&p).contains(&s).unwrap());
    }

    proptest! {
        #[test]
        fn hermite_is_canonical(rows in proptest::collection::vec(proptest::collection::vec(-5i64..6, 3), 0..5),
                                mix in -3i64..4) {
            let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| b(r)).collect();
            let h = hermite(&rows, 3);
            // adding an integer combination of rows leaves the lattice unchanged
            let mut more = rows.clone();
            if rows.len() >= 2 {
                let extra: Vec<BigInt> = rows[0].iter().zip(&rows[1]).map(|(x, y)| x + BigInt::from(mix) * y).collect();
                more.push(extra);
            }
            more.reverse();
            prop_assert_eq!(hermite(&more, 3), h.clone());
            prop_assert_eq!(hermite(&h, 3), h);
        }
    }
}
