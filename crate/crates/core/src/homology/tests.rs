use super::*;
use alloc::collections::BTreeSet;
use proptest::prelude::*;

/// Simplicial chain complex of the downward closure of `facets`.
fn simplicial(facets: &[Vec<usize>]) -> ChainComplex {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        for mask in 1u32..(1 << f.len()) {
            faces.insert((0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(1) - 1;
    let by_dim: Vec<Vec<Vec<usize>>> =
        (0..=top).map(|d| faces.iter().filter(|f| f.len() == d + 1).cloned().collect()).collect();
    let mut bds = Vec::new();
    for d in 1..=top {
        let cols = by_dim[d]
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|i| {
                        let mut g = f.clone();
                        g.remove(i);
                        let r = by_dim[d - 1].binary_search(&g).unwrap();
                        (r, if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        bds.push(SparseMatrix::from_columns(by_dim[d - 1].len(), cols));
    }
    ChainComplex::new(by_dim.iter().map(Vec::len).collect(), bds).unwrap()
}

/// Homology straight from Smith forms of the full boundary matrices.
fn oracle(cx: &ChainComplex) -> HomologySummary {
    let rank_and_diag = |d: usize| -> (usize, Vec<BigInt>) {
        if d == 0 || d > cx.top() {
            return (0, Vec::new());
        }
        let m = cx.boundary(d);
        let s = smith(m.to_dense::<BigInt>(), m.rows(), m.cols(), false, false).unwrap();
        (s.rank(), s.diag)
    };
    let mut out = HomologySummary::default();
    for d in 0..=cx.top() {
        let (r_in, _) = rank_and_diag(d);
        let (r_out, diag) = rank_and_diag(d + 1);
        out.betti.push(cx.dim(d) - r_in - r_out);
        out.torsion.push(diag.into_iter().filter(|x| !x.is_one()).collect());
    }
    out
}

fn rp2() -> ChainComplex {
    // six-vertex triangulation
    let t = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ];
    simplicial(&t.iter().map(|f| f.to_vec()).collect::<Vec<_>>())
}

#[test]
fn projective_plane_has_two_torsion() {
    let cx = rp2();
    assert_eq!(cx.euler_characteristic(), 1);
    let h = Homology::compute(cx.clone());
    let s = h.summary();
    assert_eq!(s.betti, vec![1, 0, 0]);
    assert_eq!(s.torsion[1], vec![BigInt::from(2)]);
    assert_eq!(s, oracle(&cx));
    let g = h.generators(1);
    assert_eq!(g.len(), 1);
    assert_eq!(h.coordinates(1, &g[0]).unwrap(), vec![BigInt::one()]);
    let twice: Chain = g[0].iter().map(|(c, v)| (*c, v * 2)).collect();
    assert_eq!(h.coordinates(1, &twice).unwrap(), vec![BigInt::zero()]);
}

#[test]
fn circle_and_wedge() {
    let circle = simplicial(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
    let h = Homology::compute(circle);
    assert_eq!(h.summary().betti, vec![1, 1]);
    let cycle: Vec<(usize, i64)> = vec![(0, 1), (1, -1), (2, 1)];
    let c = h.coordinates(1, &cycle).unwrap();
    assert!(c == vec![BigInt::one()] || c == vec![-BigInt::one()]);
    assert!(h.coordinates(1, &[(0usize, 1i64)]).is_err());
}

#[test]
fn rejects_non_complex_and_non_chain_map() {
    let d1 = SparseMatrix::from_triplets(1, 1, &[(0, 0, 1)]);
    let d2 = SparseMatrix::from_triplets(1, 1, &[(0, 0, 1)]);
    assert_eq!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]), Err(Error::NotAComplex(2)));
    let circle = simplicial(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
    let f0 = SparseMatrix::identity(3);
    let f1 = SparseMatrix::zero(3, 3);
    assert_eq!(ChainMap::new(&circle, &circle, vec![f0, f1]), Err(Error::NotChainMap(1)));
    let id = ChainMap::new(&circle, &circle, vec![SparseMatrix::identity(3), SparseMatrix::identity(3)]).unwrap();
    let h = Homology::compute(circle.clone());
    let m = induced_on_homology(&id, &h, &h, 1).unwrap();
    assert_eq!(m, vec![vec![BigInt::one()]]);
}

fn facets_strategy() -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(proptest::collection::btree_set(0usize..7, 1..4), 1..14)
        .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn reduction_matches_dense_oracle(facets in facets_strategy()) {
        let cx = simplicial(&facets);
        let h = Homology::compute(cx.clone());
        prop_assert_eq!(h.summary(), oracle(&cx));
        for d in 0..=cx.top() {
            let p = h.presentation(d);
            for (i, g) in h.generators(d).iter().enumerate() {
                prop_assert!(cx.is_cycle(d, g));
                let mut e = unit_vector(p.width(), i);
                p.normalize(&mut e);
                prop_assert_eq!(h.coordinates(d, g).unwrap(), e);
            }
            if d < cx.top() {
                for c in 0..cx.dim(d + 1).min(6) {
                    let b = cx.boundary(d + 1).apply(&[(c, 1i64)]).unwrap();
                    prop_assert!(h.coordinates(d, &b).unwrap().iter().all(|x| x.is_zero()));
                }
            }
        }
    }
}
