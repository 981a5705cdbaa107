use std::collections::BTreeMap;

use exactla::{inverse, q, Rational, SparseMatrix};
use hpl::{
    bpl, contraction_along, contraction_from_split, cone_instance, homology_square, linfty_transfer, split_complex,
    ChainComplex, Contraction, HplError, Perturbation, QuadraticModel, SplitData,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).unwrap()
}

fn add(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.add(b).unwrap()
}

fn sub(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.sub(b).unwrap()
}

/// Dense Gauss-Jordan rank, kept apart from the library eliminator.
fn oracle_rank(m: &SparseMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
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

fn oracle_homology(c: &ChainComplex) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = c.degree_range() else { return out };
    for k in lo..=hi {
        let here = c.basis_in_degree(k);
        let r_out = oracle_rank(&hpl::block(c.d(), &c.basis_in_degree(k - 1), &here));
        let r_in = oracle_rank(&hpl::block(c.d(), &here, &c.basis_in_degree(k + 1)));
        let h = here.len() - r_out - r_in;
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

/// Direct sum of single classes and acyclic pairs `a → b`, conjugated by a random unipotent
/// change of basis in each degree. Returns the complex and its homology by construction.
fn random_complex(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> (ChainComplex, BTreeMap<i64, usize>) {
    let mut degrees = Vec::new();
    let mut trip = Vec::new();
    let mut homology = BTreeMap::new();
    for k in lo..=hi {
        for _ in 0..rng.gen_range(0..3) {
            degrees.push(k);
            *homology.entry(k).or_insert(0) += 1;
        }
        if k > lo {
            for _ in 0..rng.gen_range(0..3) {
                let a = degrees.len();
                degrees.push(k);
                degrees.push(k - 1);
                trip.push((a + 1, a, q(rng.gen_range(1..4))));
            }
        }
    }
    let n = degrees.len();
    let d0 = SparseMatrix::from_triplets(n, n, trip).unwrap();
    let mut ut = Vec::new();
    for i in 0..n {
        ut.push((i, i, q(1)));
        for j in i + 1..n {
            if degrees[i] == degrees[j] && rng.gen_bool(0.5) {
                ut.push((i, j, q(rng.gen_range(-2..3))));
            }
        }
    }
    let u = SparseMatrix::from_triplets(n, n, ut).unwrap();
    let d = mul(&mul(&u, &d0), &inverse(&u).unwrap());
    (ChainComplex::new(degrees, d).unwrap(), homology)
}

fn random_map(rng: &mut ChaCha8Rng, tgt: &[i64], src: &[i64], shift: i64) -> SparseMatrix {
    let mut trip = Vec::new();
    for (i, a) in tgt.iter().enumerate() {
        for (j, b) in src.iter().enumerate() {
            if *a == b + shift && rng.gen_bool(0.6) {
                trip.push((i, j, q(rng.gen_range(-2..3))));
            }
        }
    }
    SparseMatrix::from_triplets(tgt.len(), src.len(), trip).unwrap()
}

/// Block-diagonal sum of contractions.
fn direct_sum(parts: &[Contraction]) -> Contraction {
    let (mut bd, mut sd) = (Vec::new(), Vec::new());
    let (mut dt, mut ft, mut gt, mut ht) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let (mut ob, mut os) = (0, 0);
    for c in parts {
        bd.extend_from_slice(c.big.degrees());
        sd.extend_from_slice(c.small.degrees());
        dt.extend(c.big.d().entries().map(|(r, k, v)| (ob + r, ob + k, v.clone())));
        ft.extend(c.f.entries().map(|(r, k, v)| (os + r, ob + k, v.clone())));
        gt.extend(c.g.entries().map(|(r, k, v)| (ob + r, os + k, v.clone())));
        ht.extend(c.h.entries().map(|(r, k, v)| (ob + r, ob + k, v.clone())));
        ob += c.big.dim();
        os += c.small.dim();
    }
    let big = ChainComplex::new(bd, SparseMatrix::from_triplets(ob, ob, dt).unwrap()).unwrap();
    let small = ChainComplex::zero(sd);
    Contraction::new(
        big,
        small,
        SparseMatrix::from_triplets(os, ob, ft).unwrap(),
        SparseMatrix::from_triplets(ob, os, gt).unwrap(),
        SparseMatrix::from_triplets(ob, ob, ht).unwrap(),
    )
    .unwrap()
}

/// Contraction of a sum of `blocks` random complexes (the filtration index) and a perturbation
/// `t = U d U⁻¹ − d` with `U − 1` strictly lowering the filtration.
fn filtered_instance(rng: &mut ChaCha8Rng, blocks: usize) -> (Contraction, SparseMatrix, Vec<usize>) {
    let mut parts = Vec::new();
    let mut filt = Vec::new();
    for p in 0..blocks {
        let (c, _) = random_complex(rng, 0, 3);
        filt.extend(std::iter::repeat(p).take(c.dim()));
        parts.push(contraction_from_split(&split_complex(&c)).unwrap().normalize());
    }
    let c = direct_sum(&parts);
    let n = c.big.dim();
    let deg = c.big.degrees().to_vec();
    let mut ut: Vec<(usize, usize, Rational)> = (0..n).map(|i| (i, i, q(1))).collect();
    for i in 0..n {
        for j in 0..n {
            if filt[i] < filt[j] && deg[i] == deg[j] && rng.gen_bool(0.5) {
                ut.push((i, j, q(rng.gen_range(-2..3))));
            }
        }
    }
    let u = SparseMatrix::from_triplets(n, n, ut).unwrap();
    let conj = mul(&mul(&u, c.big.d()), &inverse(&u).unwrap());
    let t = sub(&conj, c.big.d());
    (c, t, filt)
}

#[test]
fn zero_differential_splits_trivially() {
    let c = ChainComplex::zero(vec![0, 1, 1, 2]);
    let sd = split_complex(&c);
    assert!(sd.s.is_zero());
    let k = contraction_from_split(&sd).unwrap();
    assert_eq!(k.f, SparseMatrix::identity(4));
    assert_eq!(k.g, SparseMatrix::identity(4));
    assert_eq!(k.h, sd.s);
}

#[test]
fn acyclic_iso_splits_by_inverse() {
    let d1 = SparseMatrix::from_i64(&[vec![2, 1], vec![1, 1]]);
    let c = ChainComplex::from_blocks(0, &[2, 2], &[d1.clone()]).unwrap();
    let sd = split_complex(&c);
    let inv = inverse(&d1).unwrap();
    assert_eq!(hpl::block(&sd.s, &[2, 3], &[0, 1]), inv);
    let k = contraction_from_split(&sd).unwrap();
    assert_eq!(k.small.dim(), 0);
}

#[test]
fn non_splitting_is_rejected() {
    let d1 = SparseMatrix::from_i64(&[vec![1]]);
    let c = ChainComplex::from_blocks(0, &[1, 1], &[d1]).unwrap();
    let s = SparseMatrix::from_i64(&[vec![0, 0], vec![2, 0]]);
    assert_eq!(SplitData::new(c.clone(), s.clone()).unwrap_err(), HplError::NotSplit);
    let bad = SplitData { complex: c, s };
    assert_eq!(contraction_from_split(&bad).unwrap_err(), HplError::NotSplit);
}

#[test]
fn non_complex_is_rejected() {
    let d = SparseMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    assert_eq!(ChainComplex::new(vec![0, 1, 2], d).unwrap_err(), HplError::NotComplex);
    let d = SparseMatrix::from_i64(&[vec![0, 1], vec![0, 0]]);
    assert_eq!(ChainComplex::new(vec![0, 2], d).unwrap_err(), HplError::Degree("d"));
}

#[test]
fn homology_square_commutes_up_to_homotopy() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let (c, _) = random_complex(&mut rng, 0, 3);
        let (e, _) = random_complex(&mut rng, 0, 3);
        let mut dd = c.degrees().to_vec();
        dd.extend_from_slice(e.degrees());
        let (nc, ne) = (c.dim(), e.dim());
        let mut trip: Vec<_> = c.d().entries().map(|(r, k, v)| (r, k, v.clone())).collect();
        trip.extend(e.d().entries().map(|(r, k, v)| (nc + r, nc + k, v.clone())));
        let d = ChainComplex::new(dd.clone(), SparseMatrix::from_triplets(nc + ne, nc + ne, trip).unwrap()).unwrap();
        let incl = SparseMatrix::from_triplets(nc + ne, nc, (0..nc).map(|i| (i, i, q(1)))).unwrap();
        let k = random_map(&mut rng, &dd, c.degrees(), 1);
        let phi = add(&incl, &add(&mul(d.d(), &k), &mul(&k, c.d())));
        let cc = contraction_from_split(&split_complex(&c)).unwrap();
        let cd = contraction_from_split(&split_complex(&d)).unwrap();
        let (hphi, kk) = homology_square(&cc, &cd, &phi).unwrap();
        let lhs = sub(&mul(&hphi, &cc.f), &mul(&cd.f, &phi));
        assert_eq!(lhs, mul(&kk, c.d()));
        assert!(hpl::is_homogeneous(&kk, cd.small.degrees(), c.degrees(), 1));
        // H(φ) is injective here: φ is the inclusion of a summand up to homotopy
        assert_eq!(oracle_rank(&hphi), cc.small.dim());
    }
}

#[test]
fn zero_perturbation_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (c, _, _) = filtered_instance(&mut rng, 2);
    let zero = SparseMatrix::zeros(c.big.dim(), c.big.dim());
    let out = bpl(&c, &Perturbation::new(&c, zero).unwrap(), None).unwrap();
    assert_eq!(out.f, c.f);
    assert_eq!(out.g, c.g);
    assert_eq!(out.h, c.h);
    assert_eq!(out.small, c.small);
}

#[test]
fn single_step_perturbation_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for _ in 0..20 {
        let (c, t, _) = filtered_instance(&mut rng, 2);
        let th = mul(&t, &c.h);
        assert!(mul(&th, &th).is_zero());
        let out = bpl(&c, &Perturbation::new(&c, t.clone()).unwrap(), None).unwrap();
        assert_eq!(out.f, sub(&c.f, &mul(&c.f, &th)));
        assert_eq!(out.g, sub(&c.g, &mul(&mul(&c.h, &t), &c.g)));
        assert_eq!(out.h, sub(&c.h, &mul(&c.h, &th)));
        let t2 = sub(out.small.d(), c.small.d());
        assert_eq!(t2, mul(&mul(&sub(&c.f, &mul(&c.f, &th)), &t), &c.g));
        if !th.is_zero() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 5);
}

#[test]
fn divergent_series_is_reported() {
    // d: a ↦ b, h: b ↦ a, and t = −d kills the differential; then −th is the projection onto b
    let d1 = SparseMatrix::from_i64(&[vec![1]]);
    let c = ChainComplex::from_blocks(0, &[1, 1], &[d1]).unwrap();
    let k = contraction_from_split(&split_complex(&c)).unwrap();
    let t = c.d().scale(&q(-1));
    let p = Perturbation::new(&k, t).unwrap();
    assert_eq!(bpl(&k, &p, Some(6)).unwrap_err(), HplError::Divergence(6));
}

#[test]
fn raw_homotopy_is_normalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut fixed = 0;
    for _ in 0..20 {
        let (c, _) = random_complex(&mut rng, 0, 3);
        let k = contraction_from_split(&split_complex(&c)).unwrap();
        // h + g a f keeps 1 − gf = dh + hd when the small differential vanishes
        let a = random_map(&mut rng, k.small.degrees(), k.small.degrees(), 1);
        let h = add(&k.h, &mul(&mul(&k.g, &a), &k.f));
        let raw = Contraction::new(k.big.clone(), k.small.clone(), k.f.clone(), k.g.clone(), h).unwrap();
        let had = raw.side_conditions();
        let n = raw.normalize();
        n.check().unwrap();
        assert!(n.side_conditions());
        assert_eq!(n.normalized, !had);
        fixed += usize::from(!had);
    }
    assert!(fixed > 0);
}

#[test]
fn contraction_along_rejects_non_quasi_isomorphism() {
    let c = ChainComplex::zero(vec![0, 0]);
    let small = ChainComplex::zero(vec![0, 0]);
    let f = SparseMatrix::from_i64(&[vec![1, 1], vec![2, 2]]);
    assert_eq!(contraction_along(&c, &small, &f).unwrap_err(), HplError::NotQuasiIso);
}

#[test]
fn cone_instance_keeps_projection_and_perturbation() {
    // H_1 for d = 3 and d = 4, and H_1 ⊕ H_1 for d = 3
    let h1_odd = vec![vec![0, 1], vec![-1, 0]];
    let h1_even = vec![vec![0, 1], vec![1, 0]];
    let h2_odd = vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]];
    for (gram, d, w) in [(&h1_odd, 3, 3), (&h1_odd, 3, 5), (&h1_even, 4, 4), (&h2_odd, 3, 2)] {
        let inst = cone_instance(gram, d, w).unwrap();
        assert!(inst.projection_unchanged(), "f′ = f_* fails for d = {d}");
        assert!(inst.small_perturbation_unchanged(), "t′ = t fails for d = {d}");
        let f = &inst.pair.contraction.f;
        assert_eq!(mul(f, &inst.pair.t_big), mul(&inst.pair.t_small, f));
        assert_eq!(inst.perturbed.big.homology_dims(), inst.perturbed.small.homology_dims());
        assert_eq!(inst.perturbed.big.homology_dims(), oracle_homology(&inst.perturbed.big));
    }
}

#[test]
fn cone_instance_for_h1_in_dimension_six() {
    // L = 𝕃(α₁, α₂)/([α₁, α₂]) is abelian on two classes of degree 2: the cone has sL in degree 3,
    // Hom(α, L) = gl₂ in degree 0 and Hom(ρ, L) in degree −3
    let inst = cone_instance(&[vec![0, 1], vec![-1, 0]], 3, 3).unwrap();
    assert_eq!(inst.pair.small_layout.dim(), 8);
    let expected: BTreeMap<i64, usize> = [(-3, 2), (0, 4), (3, 2)].into_iter().collect();
    assert_eq!(inst.perturbed.small.homology_dims(), expected);
}

fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> hpl::Quadratic {
    let mut rel = Vec::new();
    for j in 0..n {
        for k in j..n {
            if rng.gen_bool(0.6) {
                rel.push(((j, k), q(rng.gen_range(-2..3))));
            }
        }
    }
    rel
}

#[test]
fn linfty_components_satisfy_low_arity_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    for round in 0..12 {
        let deg = 1 + (round % 2) as i64;
        let rel = random_relation(&mut rng, 3);
        let Ok(qm) = QuadraticModel::new(3, deg, &[rel], 4) else { continue };
        let Ok(c) = qm.contraction() else { continue };
        let gf = mul(&c.g, &c.f);
        for (small, psi1) in [(&qm.quotient, c.g.clone()), (qm.model.lie(), gf)] {
            let m = linfty_transfer(&c, qm.model.lie(), small, &psi1, 3).unwrap();
            let n = small.dim();
            for i in 0..n {
                for j in 0..n {
                    assert!(m.arity2_defect(i, j).is_empty());
                }
            }
            for _ in 0..300 {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                assert!(m.arity3_defect(i, j, k).is_empty(), "arity 3 fails at {i} {j} {k}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 12, "too few quasi-isomorphic random models: {checked}");
}

#[test]
fn bracket_preserving_map_has_no_psi2() {
    let rel = vec![((0, 1), q(1)), ((1, 2), q(1))];
    let qm = QuadraticModel::new(3, 2, &[rel], 4).unwrap();
    let c = qm.contraction().unwrap();
    let id = SparseMatrix::identity(qm.model.lie().dim());
    let m = linfty_transfer(&c, qm.model.lie(), qm.model.lie(), &id, 2).unwrap();
    assert!(m.psi2_is_zero());
    let m = linfty_transfer(&c, qm.model.lie(), &qm.quotient, &c.g, 2).unwrap();
    assert!(!m.psi2_is_zero());
}

#[test]
fn wrong_shape_for_linfty_is_rejected() {
    let rel = vec![((0, 1), q(1))];
    let qm = QuadraticModel::new(2, 1, &[rel], 4).unwrap();
    let c = qm.contraction().unwrap();
    let twice = c.g.scale(&q(2));
    let err = linfty_transfer(&c, qm.model.lie(), &qm.quotient, &twice, 2).unwrap_err();
    assert_eq!(err, HplError::NotTransferShape);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn splitting_gives_contraction_onto_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, homology) = random_complex(&mut rng, -1, 3);
        let sd = split_complex(&c);
        prop_assert_eq!(mul(&mul(c.d(), &sd.s), c.d()), c.d().clone());
        let k = contraction_from_split(&sd).unwrap();
        k.check().unwrap();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for &g in k.small.degrees() {
            *dims.entry(g).or_insert(0) += 1;
        }
        prop_assert_eq!(&dims, &homology);
        prop_assert_eq!(&c.homology_dims(), &homology);
        prop_assert_eq!(oracle_homology(&c), homology);
        // p(z) = [z] on cycles: p kills boundaries
        let bound = mul(c.d(), &random_map(&mut rng, c.degrees(), c.degrees(), 1));
        prop_assert!(mul(&k.f, &bound).is_zero());
    }

    #[test]
    fn perturbed_contraction_is_a_contraction(seed in any::<u64>(), blocks in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, t, _) = filtered_instance(&mut rng, blocks);
        let p = Perturbation::new(&c, t.clone()).unwrap();
        let out = bpl(&c, &p, None).unwrap();
        out.check().unwrap();
        prop_assert!(out.side_conditions());
        prop_assert_eq!(out.big.homology_dims(), oracle_homology(&out.big));
        prop_assert_eq!(out.small.homology_dims(), oracle_homology(&out.small));
        prop_assert_eq!(out.big.homology_dims(), out.small.homology_dims());
        let zero = SparseMatrix::zeros(c.big.dim(), c.big.dim());
        let again = bpl(&out, &Perturbation::new(&out, zero).unwrap(), None).unwrap();
        prop_assert_eq!(&again.f, &out.f);
        prop_assert_eq!(&again.g, &out.g);
        prop_assert_eq!(&again.h, &out.h);
        prop_assert_eq!(&again.small, &out.small);
    }
}
