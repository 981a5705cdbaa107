use std::collections::HashMap;

use cechains::DgLie;
use exactla::{vec_lincomb, Rational, SparseMatrix, SparseVec};
use num_traits::{One, Zero};

use crate::complex::{is_homogeneous, mul};
use crate::contraction::Contraction;
use crate::HplError;

fn koszul(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn unit(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

fn axpy(acc: &SparseVec, c: &Rational, v: &SparseVec) -> SparseVec {
    vec_lincomb(&Rational::one(), acc, c, v)
}

/// Differential of a dg Lie algebra as a matrix.
pub fn differential_matrix(l: &DgLie) -> SparseMatrix {
    let cols = (0..l.dim()).map(|i| l.d_basis(i).clone()).collect();
    SparseMatrix::from_cols(l.dim(), cols).expect("in range")
}

/// Components `ψ₁, ψ₂, ψ₃` of an L∞ morphism `𝔥 → 𝔊` built from a chain map `ψ₁` and the homotopy
/// of a contraction of `𝔊`: `ψ₂ = h λ₂` with `λ₂(x, y) = ψ₁[x, y] − [ψ₁x, ψ₁y]`, and `ψ₃ = h λ₃`.
///
/// `λ₃(x, y, z)` is the sum over the three `(2,1)`-unshuffles of `χ·ψ₂([·,·], ·)` minus the sum
/// over the three `(1,2)`-unshuffles of `χ·(−1)^{|x_σ1|}[ψ₁x_σ1, ψ₂(·,·)]`, where `χ` is the
/// antisymmetric Koszul sign.
#[derive(Clone, Debug)]
pub struct LinftyMorphism {
    big: DgLie,
    small: DgLie,
    psi1: SparseMatrix,
    h: SparseMatrix,
    psi2: HashMap<(usize, usize), SparseVec>,
    max_arity: usize,
}

pub fn linfty_transfer(
    c: &Contraction,
    big: &DgLie,
    small: &DgLie,
    psi1: &SparseMatrix,
    max_arity: usize,
) -> Result<LinftyMorphism, HplError> {
    if !(1..=3).contains(&max_arity) {
        return Err(HplError::Unsupported("arity must be 1, 2 or 3"));
    }
    if big.degrees() != c.big.degrees() || differential_matrix(big) != *c.big.d() {
        return Err(HplError::Identity("bracketed complex does not match the contraction"));
    }
    if psi1.rows() != big.dim() || psi1.cols() != small.dim() {
        return Err(HplError::Shape { map: "ψ₁", expected: (big.dim(), small.dim()), got: (psi1.rows(), psi1.cols()) });
    }
    if !is_homogeneous(psi1, big.degrees(), small.degrees(), 0) {
        return Err(HplError::Degree("ψ₁"));
    }
    if mul(c.big.d(), psi1) != mul(psi1, &differential_matrix(small)) {
        return Err(HplError::Identity("ψ₁ is not a chain map"));
    }
    let mut m = LinftyMorphism {
        big: big.clone(),
        small: small.clone(),
        psi1: psi1.clone(),
        h: c.h.clone(),
        psi2: HashMap::new(),
        max_arity,
    };
    if max_arity >= 2 {
        for i in 0..small.dim() {
            for j in 0..small.dim() {
                let l2 = m.lambda2(&unit(i), &unit(j));
                if !c.f.mul_vec(&l2).is_empty() {
                    return Err(HplError::NotTransferShape);
                }
                let v = m.h.mul_vec(&l2);
                if !v.is_empty() {
                    m.psi2.insert((i, j), v);
                }
            }
        }
    }
    Ok(m)
}

impl LinftyMorphism {
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn psi1(&self, x: &SparseVec) -> SparseVec {
        self.psi1.mul_vec(x)
    }

    /// `ψ₁[x, y] − [ψ₁x, ψ₁y]`.
    pub fn lambda2(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let a = self.psi1(&self.small.bracket(x, y));
        let b = self.big.bracket(&self.psi1(x), &self.psi1(y));
        vec_lincomb(&Rational::one(), &a, &-Rational::one(), &b)
    }

    pub fn psi2(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                if let Some(v) = self.psi2.get(&(*i, *j)) {
                    acc = axpy(&acc, &(a * b), v);
                }
            }
        }
        acc
    }

    fn lambda3_basis(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let (p, q, r) = (self.small.degree(i), self.small.degree(j), self.small.degree(k));
        let (x, y, z) = (unit(i), unit(j), unit(k));
        let one = Rational::one();
        let mut acc = SparseVec::new();
        let inner = [
            (one.clone(), &x, &y, &z),
            (-koszul(q * r), &x, &z, &y),
            (koszul(p * (q + r)), &y, &z, &x),
        ];
        for (chi, a, b, c) in inner {
            acc = axpy(&acc, &chi, &self.psi2(&self.small.bracket(a, b), c));
        }
        let outer = [
            (one.clone(), p, &x, &y, &z),
            (-koszul(p * q), q, &y, &x, &z),
            (koszul(r * (p + q)), r, &z, &x, &y),
        ];
        for (chi, deg, a, b, c) in outer {
            let term = self.big.bracket(&self.psi1(a), &self.psi2(b, c));
            acc = axpy(&acc, &-(chi * koszul(deg)), &term);
        }
        acc
    }

    pub fn lambda3(&self, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in z {
                    acc = axpy(&acc, &(a * b * c), &self.lambda3_basis(*i, *j, *k));
                }
            }
        }
        acc
    }

    pub fn psi3(&self, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> SparseVec {
        self.h.mul_vec(&self.lambda3(x, y, z))
    }

    /// `∂ψ₂ − λ₂` on a pair of basis elements, with `∂φ = dφ + φ d_⊗` for `φ` of degree 1.
    pub fn arity2_defect(&self, i: usize, j: usize) -> SparseVec {
        let (x, y) = (unit(i), unit(j));
        let one = Rational::one();
        let mut lhs = self.big.d(&self.psi2(&x, &y));
        lhs = axpy(&lhs, &one, &self.psi2(&self.small.d(&x), &y));
        lhs = axpy(&lhs, &koszul(self.small.degree(i)), &self.psi2(&x, &self.small.d(&y)));
        axpy(&lhs, &-one, &self.lambda2(&x, &y))
    }

    /// `∂ψ₃ − λ₃` on a basis triple, with `∂φ = dφ − φ d_⊗` for `φ` of degree 2.
    pub fn arity3_defect(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let (x, y, z) = (unit(i), unit(j), unit(k));
        let (p, q) = (self.small.degree(i), self.small.degree(j));
        let one = Rational::one();
        let mut lhs = self.big.d(&self.psi3(&x, &y, &z));
        lhs = axpy(&lhs, &-one.clone(), &self.psi3(&self.small.d(&x), &y, &z));
        lhs = axpy(&lhs, &-koszul(p), &self.psi3(&x, &self.small.d(&y), &z));
        lhs = axpy(&lhs, &-koszul(p + q), &self.psi3(&x, &y, &self.small.d(&z)));
        axpy(&lhs, &-one, &self.lambda3(&x, &y, &z))
    }

    /// Whether `ψ₂` vanishes identically.
    pub fn psi2_is_zero(&self) -> bool {
        self.psi2.values().all(|v| v.iter().all(|(_, c)| c.is_zero()))
    }
}
