use exactla::{
    from_text, homology_dims, q, rank, rank_kernel, rref, to_text, ComplexSlice, Echelon, Rational, SparseMatrix,
};
use num_traits::Zero;
use proptest::prelude::*;

/// Textbook dense Gauss-Jordan over ℚ; independent of the library eliminator.
fn oracle_rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pv = a[r][c].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &pv;
                for k in 0..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..5], c), r)
    })
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

#[test]
fn spec_examples() {
    let empty = SparseMatrix::zeros(0, 0);
    assert_eq!(rank_kernel(&empty), (0, vec![]));
    let id = SparseMatrix::identity(2);
    assert_eq!(rank_kernel(&id), (2, vec![]));
    let m = SparseMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
    let (r, k) = rank_kernel(&m);
    assert_eq!(r, 1);
    assert_eq!(k.len(), 1);
    // hand elimination: x + 2y = 0, so the kernel is spanned by (2, -1)
    let v = &k[0];
    let ratio = &v[0].1 / &v[1].1;
    assert_eq!(ratio, q(-2));
}

#[test]
fn homology_examples() {
    let zero_in = SparseMatrix::zeros(3, 2);
    let zero_out = SparseMatrix::zeros(1, 3);
    assert_eq!(homology_dims(&ComplexSlice::new(zero_in, zero_out).unwrap()).unwrap(), 3);

    // 0 → ℚ² → ℚ² → 0 exact
    let iso = SparseMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
    let s = ComplexSlice::new(iso, SparseMatrix::zeros(0, 2)).unwrap();
    assert_eq!(homology_dims(&s).unwrap(), 0);

    // CE chains of a one-dimensional abelian Lie algebra on an even class x: sx is odd, so
    // Λ²(sx) = 0 and δ₁ vanishes; the slice Λ² → Λ¹ → Λ⁰ has homology 1.
    let s = ComplexSlice::new(SparseMatrix::zeros(1, 0), SparseMatrix::zeros(1, 1)).unwrap();
    assert_eq!(homology_dims(&s).unwrap(), 1);

    let bad_out = SparseMatrix::from_i64(&[vec![1]]);
    let bad_in = SparseMatrix::from_i64(&[vec![1]]);
    assert!(homology_dims(&ComplexSlice::new(bad_in, bad_out).unwrap()).is_err());
}

#[test]
fn text_roundtrip() {
    let m = SparseMatrix::from_dense(&[vec![q(1), Rational::new(3.into(), 7.into())], vec![q(0), q(-5)]]);
    let t = to_text(&m);
    assert_eq!(from_text(&t).unwrap(), m);
    assert!(t.contains("0 1 3/7"));
}

#[test]
fn dense_fallback_agrees_with_oracle() {
    // 24x24 with every entry nonzero forces the dense path immediately
    let m: Vec<Vec<i64>> = (0..24).map(|i| (0..24).map(|j| ((i * 7 + j * 3) % 11) as i64 - 5 + (i == j) as i64).collect()).collect();
    let qm = to_q(&m);
    let sm = SparseMatrix::from_dense(&qm);
    assert_eq!(rank(&sm), oracle_rank(&qm));
    let (r, k) = rank_kernel(&sm);
    assert_eq!(r + k.len(), 24);
    for v in &k {
        assert!(sm.mul_vec(v).is_empty());
    }
}

#[test]
fn large_entries_fall_back_to_bigint() {
    let big: i64 = 1 << 62;
    let m = SparseMatrix::from_i64(&[vec![big, big - 1, 3], vec![big - 3, big, 5], vec![7, big - 11, big]]);
    assert_eq!(rank(&m), oracle_rank(&m.to_dense()));
}

proptest! {
    #[test]
    fn rank_equals_transpose_rank(m in small_matrix()) {
        let sm = SparseMatrix::from_i64(&m);
        prop_assert_eq!(rank(&sm), rank(&sm.transpose()));
        prop_assert_eq!(rank(&sm), oracle_rank(&to_q(&m)));
    }

    #[test]
    fn rank_plus_nullity(m in small_matrix()) {
        let sm = SparseMatrix::from_i64(&m);
        let (r, k) = rank_kernel(&sm);
        prop_assert_eq!(r + k.len(), sm.cols());
        for v in &k {
            prop_assert!(sm.mul_vec(v).is_empty());
        }
        // independence: stacking the kernel vectors gives full rank
        let km = SparseMatrix::from_rows(sm.cols(), k.clone()).unwrap();
        prop_assert_eq!(rank(&km), k.len());
    }

    #[test]
    fn insertion_order_irrelevant(m in small_matrix(), seed in any::<u64>()) {
        let sm = SparseMatrix::from_i64(&m);
        let mut trip: Vec<(usize, usize, Rational)> = sm.entries().map(|(r, c, v)| (r, c, v.clone())).collect();
        let n = trip.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            trip.swap(i, (s >> 33) as usize % (i + 1));
        }
        let sm2 = SparseMatrix::from_triplets(sm.rows(), sm.cols(), trip).unwrap();
        prop_assert_eq!(rref(&sm), rref(&sm2));
    }

    #[test]
    fn echelon_matches_rank(m in small_matrix()) {
        let sm = SparseMatrix::from_i64(&m);
        let mut e = Echelon::new(sm.cols());
        for r in sm.row_slices() {
            e.insert(r);
        }
        prop_assert_eq!(e.rank(), rank(&sm));
        for r in sm.row_slices() {
            prop_assert!(e.contains(r));
        }
    }

    #[test]
    fn rref_has_no_stored_zeros(m in small_matrix()) {
        let e = rref(&SparseMatrix::from_i64(&m));
        for row in &e.rows {
            prop_assert!(row.iter().all(|(_, v)| !v.is_zero()));
        }
    }
}

#[test]
fn coordinates_in_row_space() {
    let m = SparseMatrix::from_i64(&[vec![1, 2, 0, 3], vec![0, 1, 1, 1], vec![1, 3, 1, 4]]);
    let e = rref(&m);
    assert_eq!(e.rank(), 2);
    let v: exactla::SparseVec = vec![(0, q(2)), (1, q(5)), (2, q(1)), (3, q(7))];
    let c = e.coordinates(&v).unwrap();
    let mut back: exactla::SparseVec = Vec::new();
    for (k, x) in &c {
        back = exactla::vec_lincomb(&q(1), &back, x, &e.rows[*k]);
    }
    assert_eq!(back, v);
    assert!(e.coordinates(&vec![(3, q(1))]).is_none());
}

proptest! {
    #[test]
    fn solve_reproduces_consistent_right_sides(a in small_matrix(), x in prop::collection::vec(-3i64..4, 8)) {
        let am = SparseMatrix::from_i64(&a);
        let xs: Vec<Vec<i64>> = (0..am.cols()).map(|i| vec![x[i]]).collect();
        let b = am.mul(&SparseMatrix::from_i64(&xs)).unwrap();
        let sol = exactla::solve(&am, &b).expect("b is in the column space");
        prop_assert_eq!(am.mul(&sol).unwrap(), b);
    }

    #[test]
    fn inverse_is_two_sided(a in small_matrix()) {
        let am = SparseMatrix::from_i64(&a);
        let inv = exactla::inverse(&am);
        let square_full = am.rows() == am.cols() && oracle_rank(&to_q(&a)) == am.rows();
        prop_assert_eq!(inv.is_some(), square_full);
        if let Some(inv) = inv {
            prop_assert_eq!(am.mul(&inv).unwrap(), SparseMatrix::identity(am.rows()));
            prop_assert_eq!(inv.mul(&am).unwrap(), SparseMatrix::identity(am.rows()));
        }
    }
}

#[test]
fn solve_rejects_inconsistent_system() {
    let a = SparseMatrix::from_i64(&[vec![1, 1], vec![2, 2]]);
    let b = SparseMatrix::from_i64(&[vec![1], vec![3]]);
    assert!(exactla::solve(&a, &b).is_none());
}
