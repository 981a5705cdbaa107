use exactla::SparseMatrix;

use crate::complex::{add, id, is_homogeneous, mul, neg};
use crate::contraction::Contraction;
use crate::HplError;

/// A degree `−1` map `t` with `(d + t)² = 0`.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub t: SparseMatrix,
}

impl Perturbation {
    pub fn new(c: &Contraction, t: SparseMatrix) -> Result<Self, HplError> {
        let n = c.big.dim();
        if t.rows() != n || t.cols() != n {
            return Err(HplError::Shape { map: "t", expected: (n, n), got: (t.rows(), t.cols()) });
        }
        if !is_homogeneous(&t, c.big.degrees(), c.big.degrees(), -1) {
            return Err(HplError::Degree("t"));
        }
        let dt = add(c.big.d(), &t);
        if !mul(&dt, &dt).is_zero() {
            return Err(HplError::NotComplex);
        }
        Ok(Perturbation { t })
    }
}

/// `Σ_{k<N} a^k`, or `None` if `a^N ≠ 0`.
fn geometric(a: &SparseMatrix, bound: usize) -> Option<SparseMatrix> {
    let mut sum = id(a.rows());
    let mut pow = id(a.rows());
    for _ in 0..bound {
        pow = mul(&pow, a);
        if pow.is_zero() {
            return Some(sum);
        }
        sum = add(&sum, &pow);
    }
    None
}

/// Default iteration bound: the number of degrees spanned by the big complex.
pub fn default_bound(c: &Contraction) -> usize {
    c.big.degree_range().map(|(lo, hi)| (hi - lo + 1) as usize).unwrap_or(1)
}

/// Basic perturbation lemma. Homotopies here satisfy `1 − gf = dh + hd`, so the recursions
/// `f′ = f − f′th`, `g′ = g − htg′`, `h′ = h − h′th`, `t′ = f′tg` are unrolled as
/// `f′ = f Σ (−th)ᵏ`, `g′ = Σ (−ht)ᵏ g`, `h′ = h Σ (−th)ᵏ`.
pub fn bpl(c: &Contraction, p: &Perturbation, bound: Option<usize>) -> Result<Contraction, HplError> {
    let bound = bound.unwrap_or_else(|| default_bound(c));
    let t = &p.t;
    let sa = geometric(&neg(&mul(t, &c.h)), bound).ok_or(HplError::Divergence(bound))?;
    let sb = geometric(&neg(&mul(&c.h, t)), bound + 1).ok_or(HplError::Divergence(bound))?;
    let f2 = mul(&c.f, &sa);
    let g2 = mul(&sb, &c.g);
    let h2 = mul(&c.h, &sa);
    let t2 = mul(&mul(&f2, t), &c.g);
    let big = c.big.perturbed(t)?;
    let small = c.small.perturbed(&t2)?;
    let mut out = Contraction::new(big, small, f2, g2, h2)?;
    out.normalized = c.normalized;
    Ok(out)
}
