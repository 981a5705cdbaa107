use exactla::{inverse, rank_kernel, rref, solve, SparseMatrix, SparseVec};

use crate::complex::{block, id, is_homogeneous, mul, sub, ChainComplex};
use crate::contraction::Contraction;
use crate::HplError;

/// A complex together with `s: C_n → C_{n+1}` such that `dsd = d`.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub complex: ChainComplex,
    pub s: SparseMatrix,
}

impl SplitData {
    pub fn new(complex: ChainComplex, s: SparseMatrix) -> Result<Self, HplError> {
        let n = complex.dim();
        if s.rows() != n || s.cols() != n {
            return Err(HplError::Shape { map: "s", expected: (n, n), got: (s.rows(), s.cols()) });
        }
        if !is_homogeneous(&s, complex.degrees(), complex.degrees(), 1) {
            return Err(HplError::Degree("s"));
        }
        let d = complex.d();
        if mul(&mul(d, &s), d) != *d {
            return Err(HplError::NotSplit);
        }
        Ok(SplitData { complex, s })
    }
}

/// Splitting maps from complements of the boundaries: on `B_{n−1}` the map `s` sends `d(e_j)` back
/// to `e_j` for the pivot columns `j` of `d_n`; on a coordinate complement of `B_{n−1}` it is zero.
pub fn split_complex(c: &ChainComplex) -> SplitData {
    let n = c.dim();
    let mut trip = Vec::new();
    let Some((lo, hi)) = c.degree_range() else {
        return SplitData { complex: c.clone(), s: SparseMatrix::zeros(0, 0) };
    };
    for k in lo + 1..=hi {
        let src = c.basis_in_degree(k);
        let tgt = c.basis_in_degree(k - 1);
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        let dk = block(c.d(), &tgt, &src);
        let pivots = rref(&dk).pivots;
        if pivots.is_empty() {
            continue;
        }
        let image: Vec<SparseVec> = dk.columns().into_iter().enumerate().filter(|(j, _)| pivots.contains(j)).map(|(_, v)| v).collect();
        let image_piv = rref(&SparseMatrix::from_rows(tgt.len(), image.clone()).expect("in range")).pivots;
        let mut cols = image;
        for r in 0..tgt.len() {
            if !image_piv.contains(&r) {
                cols.push(vec![(r, exactla::q(1))]);
            }
        }
        let basis = SparseMatrix::from_cols(tgt.len(), cols).expect("in range");
        let binv = inverse(&basis).expect("image basis extended by unit vectors");
        // s(basis[i]) = e_{pivots[i]} for i < rank, 0 otherwise
        let r = pivots.len();
        let sel = SparseMatrix::from_triplets(src.len(), tgt.len(), (0..r).map(|i| (pivots[i], i, exactla::q(1))))
            .expect("in range");
        let sk = mul(&sel, &binv);
        trip.extend(sk.entries().map(|(i, j, v)| (src[i], tgt[j], v.clone())));
    }
    let s = SparseMatrix::from_triplets(n, n, trip).expect("in range");
    SplitData { complex: c.clone(), s }
}

/// Contraction of a split complex onto its homology: `p(x) = [x − sdx]`, `∇[z] = z − dsz`,
/// `h = s − s²d`. Homology classes are represented by `Z ∩ ker(ds)`.
pub fn contraction_from_split(sd: &SplitData) -> Result<Contraction, HplError> {
    let c = &sd.complex;
    let (d, s) = (c.d(), &sd.s);
    if mul(&mul(d, s), d) != *d {
        return Err(HplError::NotSplit);
    }
    let n = c.dim();
    let ds = mul(d, s);
    let sdm = mul(s, d);
    let stacked = SparseMatrix::vstack(&[d.clone(), ds.clone()]).expect("same width");
    let (_, w) = rank_kernel(&stacked);
    let small_deg: Vec<i64> = w.iter().map(|v| c.degrees()[v[0].0]).collect();
    let nabla = SparseMatrix::from_cols(n, w).expect("in range");
    let proj = mul(&sub(&id(n), &ds), &sub(&id(n), &sdm));
    let p = solve(&nabla, &proj).expect("projection lands in the harmonic space");
    let h = sub(s, &mul(&mul(s, s), d));
    Contraction::new(c.clone(), ChainComplex::zero(small_deg), p, nabla, h)
}

/// Contraction onto a complex with zero differential along a given quasi-isomorphism `f`:
/// `g = ∇(f∇)^{-1}` and `h = (1 − gf)h₀` from the splitting contraction, then normalized.
pub fn contraction_along(c: &ChainComplex, small: &ChainComplex, f: &SparseMatrix) -> Result<Contraction, HplError> {
    if !small.d().is_zero() {
        return Err(HplError::Unsupported("target differential must vanish"));
    }
    if f.rows() != small.dim() || f.cols() != c.dim() {
        return Err(HplError::Shape { map: "f", expected: (small.dim(), c.dim()), got: (f.rows(), f.cols()) });
    }
    if !mul(f, c.d()).is_zero() {
        return Err(HplError::Identity("f is not a chain map"));
    }
    let base = contraction_from_split(&split_complex(c))?;
    let fn_ = mul(f, &base.g);
    let k = inverse(&fn_).ok_or(HplError::NotQuasiIso)?;
    let g = mul(&base.g, &k);
    let h = mul(&sub(&id(c.dim()), &mul(&g, f)), &base.h);
    Ok(Contraction::new(c.clone(), small.clone(), f.clone(), g, h)?.normalize())
}

/// Induced map on homology `H(φ) = p_D φ ∇_C` and a homotopy `K` with
/// `H(φ) p_C − p_D φ = K d_C`.
pub fn homology_square(
    cc: &Contraction,
    cd: &Contraction,
    phi: &SparseMatrix,
) -> Result<(SparseMatrix, SparseMatrix), HplError> {
    if mul(cd.big.d(), phi) != mul(phi, cc.big.d()) {
        return Err(HplError::Identity("φ is not a chain map"));
    }
    let hphi = mul(&mul(&cd.f, phi), &cc.g);
    let r = sub(&mul(&hphi, &cc.f), &mul(&cd.f, phi));
    // K d = R  ⇔  dᵀ Kᵀ = Rᵀ
    let kt = solve(&cc.big.d().transpose(), &r.transpose()).ok_or(HplError::Identity("square does not commute up to homotopy"))?;
    let k = kt.transpose();
    let (tgt, src) = (cd.small.degrees(), cc.big.degrees());
    let homog = SparseMatrix::from_triplets(
        k.rows(),
        k.cols(),
        k.entries().filter(|(i, j, _)| tgt[*i] == src[*j] + 1).map(|(i, j, v)| (i, j, v.clone())),
    )
    .expect("in range");
    Ok((hphi, homog))
}
