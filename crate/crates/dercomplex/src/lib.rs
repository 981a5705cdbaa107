//! Derivations of free graded Lie algebras `𝕃(V)` in the `V ⊗ 𝕃(V)` model, the Lie algebra
//! `𝔤(V)` of positive-degree derivations killing `ω_V`, functoriality along isometric embeddings,
//! the action of automorphisms, and the two-term complex computing derivations of `𝕃(V)/(ω_V)`.

use std::sync::Arc;

use exactla::{q, rank, rank_kernel, Rational, SparseMatrix, SparseVec};
use gradedlie::{algebra, substitute, BracketWord, GeneratorSet, IdealTower, LieElement, LieError, Presentation, Tensor, Word};
use num_traits::One;
use quadmod::{
    adjoint_and_complement, generator_images, inverse_unimodular, is_automorphism, omega_element, IntMatrix,
    IsometryMatrix, QuadError, QuadraticModule,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerError {
    #[error("derivations live on different algebras")]
    Mismatch,
    #[error("value on generator {0} has the wrong degree")]
    WrongDegree(usize),
    #[error("expected {expected} values, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("matrix is not an automorphism of the quadratic module")]
    NotAutomorphism,
    #[error("word length {0} is out of range")]
    BadLength(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// A derivation of `𝕃(V)`, recorded by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    gens: Arc<GeneratorSet>,
    degree: i64,
    values: Vec<LieElement>,
}

impl Derivation {
    pub fn new(gens: &Arc<GeneratorSet>, degree: i64, values: Vec<LieElement>) -> Result<Self, DerError> {
        if values.len() != gens.len() {
            return Err(DerError::WrongCount { expected: gens.len(), got: values.len() });
        }
        for (i, v) in values.iter().enumerate() {
            if v.gens() != gens {
                return Err(DerError::Mismatch);
            }
            if !v.is_zero() && v.degree() != Some(gens.degree(i) + degree) {
                return Err(DerError::WrongDegree(i));
            }
        }
        Ok(Derivation { gens: gens.clone(), degree, values })
    }

    pub fn zero(gens: &Arc<GeneratorSet>, degree: i64) -> Self {
        Derivation { gens: gens.clone(), degree, values: vec![LieElement::zero(gens); gens.len()] }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn values(&self) -> &[LieElement] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &LieElement {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check(&self, other: &Derivation) -> Result<(), DerError> {
        if self.gens != other.gens || (self.degree != other.degree && !self.is_zero() && !other.is_zero()) {
            return Err(DerError::Mismatch);
        }
        Ok(())
    }

    pub fn add_scaled(&self, other: &Derivation, c: &Rational) -> Result<Derivation, DerError> {
        self.check(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add_scaled(b, c)).collect::<Result<_, _>>()?;
        Ok(Derivation { gens: self.gens.clone(), degree, values })
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation, DerError> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation, DerError> {
        self.add_scaled(other, &-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { gens: self.gens.clone(), degree: self.degree, values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    /// Extend to the tensor algebra by the graded Leibniz rule.
    pub fn apply_tensor(&self, t: &Tensor) -> Tensor {
        let vals: Vec<Tensor> = self.values.iter().map(|v| v.to_tensor()).collect();
        let mut out = Tensor::zero();
        for (w, c) in t.iter() {
            let mut prefix_deg = 0i64;
            for j in 0..w.len() {
                let l = w.get(j) as usize;
                if !vals[l].is_zero() {
                    let s = sign(self.degree * prefix_deg);
                    let term = Tensor::word(w.slice(0, j)).mul(&vals[l]).mul(&Tensor::word(w.slice(j + 1, w.len())));
                    out.add_scaled(&term, &(c * s));
                }
                prefix_deg += self.gens.degree(l);
            }
        }
        out
    }

    pub fn apply(&self, x: &LieElement) -> Result<LieElement, DerError> {
        if x.gens() != &self.gens {
            return Err(DerError::Mismatch);
        }
        Ok(LieElement::from_tensor(&self.gens, self.apply_tensor(&x.to_tensor()))?)
    }
}

/// `[a, b] = a∘b − (−1)^{|a||b|} b∘a`.
pub fn der_bracket(a: &Derivation, b: &Derivation) -> Result<Derivation, DerError> {
    if a.gens != b.gens {
        return Err(DerError::Mismatch);
    }
    let s = sign(a.degree * b.degree);
    let mut values = Vec::with_capacity(a.values.len());
    for i in 0..a.values.len() {
        let ab = a.apply_tensor(&b.values[i].to_tensor());
        let ba = b.apply_tensor(&a.values[i].to_tensor());
        let mut t = ab;
        t.add_scaled(&ba, &-s.clone());
        values.push(LieElement::from_tensor(&a.gens, t)?);
    }
    Ok(Derivation { gens: a.gens.clone(), degree: a.degree + b.degree, values })
}

fn homogeneous_degree(xi: &LieElement) -> Result<i64, DerError> {
    xi.degree().ok_or(DerError::Inhomogeneous)
}

/// `θ_{x,ξ}(y) = (−1)^{(|ξ|−1)(d−1)} ⟨x, y⟩ ξ` on generators `y`.
pub fn theta(qm: &QuadraticModule, x: &[i64], xi: &LieElement) -> Result<Derivation, DerError> {
    let n = qm.rank();
    if x.len() != n {
        return Err(QuadError::SizeMismatch { expected: n, got: x.len() }.into());
    }
    let gens = qm.generators();
    if xi.gens() != gens {
        return Err(DerError::Mismatch);
    }
    let dg = qm.d() - 1;
    if xi.is_zero() {
        return Ok(Derivation::zero(gens, 0));
    }
    let deg = homogeneous_degree(xi)?;
    let s = sign((deg - 1) * dg);
    let values = (0..n)
        .map(|j| {
            let y: Vec<i64> = (0..n).map(|k| (k == j) as i64).collect();
            xi.scale(&(&s * q(qm.form(x, &y))))
        })
        .collect();
    Ok(Derivation { gens: gens.clone(), degree: deg - dg, values })
}

/// The inverse of `θ`: the elements `ξ_i` with `a = Σ_i θ_{e_i, ξ_i}`.
pub fn theta_coords(qm: &QuadraticModule, a: &Derivation) -> Result<Vec<LieElement>, DerError> {
    let gens = qm.generators();
    if a.gens() != gens {
        return Err(DerError::Mismatch);
    }
    let n = qm.rank();
    let ginv = inverse_unimodular(qm.gram()).ok_or(QuadError::Singular(0))?;
    let s = sign((a.degree + qm.d() - 2) * (qm.d() - 1));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut xi = LieElement::zero(gens);
        for j in 0..n {
            if ginv[j][i] != 0 {
                xi = xi.add_scaled(&a.values[j], &(&s * q(ginv[j][i])))?;
            }
        }
        out.push(xi);
    }
    Ok(out)
}

/// `a(ω_V)`.
pub fn ev_omega(a: &Derivation, qm: &QuadraticModule) -> Result<LieElement, DerError> {
    a.apply(&omega_element(qm)?)
}

/// Coordinates of `[x_i, b]` for `b` the `j`-th basis element of word length `k − 1`.
fn bracket_column(gens: &Arc<GeneratorSet>, i: usize, k: usize, j: usize) -> SparseVec {
    let alg = algebra(gens);
    let b = alg.basis(k - 1).elems[j];
    let basis = alg.basis(k);
    let mut v: SparseVec =
        alg.bracket_basis(BracketWord::Lyndon(Word::letter(i as u8)), b).into_iter().map(|(b, c)| (basis.index_of(b).unwrap(), c)).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// The bracketing map `V ⊗ 𝕃^{k−1}(V) → 𝕃^k(V)`; column `i·dim 𝕃^{k−1} + j` is `[x_i, b_j]`.
pub fn bracketing_matrix(gens: &Arc<GeneratorSet>, k: usize) -> SparseMatrix {
    let alg = algebra(gens);
    let prev = alg.basis(k - 1).len();
    let rows = alg.basis(k).len();
    let cols: Vec<SparseVec> =
        (0..gens.len()).flat_map(|i| (0..prev).map(move |j| (i, j))).map(|(i, j)| bracket_column(gens, i, k, j)).collect();
    SparseMatrix::from_cols(rows, cols).expect("indices in range")
}

/// Basis of the word-length-`k` part of `𝔤(V) = ker(ev_ω) ⊂ Der⁺ 𝕃(V)`.
pub fn g_basis(qm: &QuadraticModule, k: usize) -> Result<Vec<Derivation>, DerError> {
    if k < 3 {
        return Err(DerError::BadLength(k));
    }
    let gens = qm.generators();
    let alg = algebra(gens);
    let prev = alg.basis(k - 1);
    let n = qm.rank();
    let m = bracketing_matrix(gens, k);
    let (_, ker) = rank_kernel(&m);
    let mut out = Vec::with_capacity(ker.len());
    for v in ker {
        let mut xis = vec![LieElement::zero(gens); n];
        for (c, x) in v {
            let (i, j) = (c / prev.len(), c % prev.len());
            xis[i] = xis[i].add_scaled(&LieElement::basis(gens, prev.elems[j]), &x)?;
        }
        out.push(from_theta_coords(qm, &xis)?);
    }
    Ok(out)
}

/// `dim 𝔤(V)` in word length `k` from the rank of the bracketing map.
pub fn g_dim(qm: &QuadraticModule, k: usize) -> usize {
    let m = bracketing_matrix(qm.generators(), k);
    m.cols() - rank(&m)
}

/// `Σ_i θ_{e_i, ξ_i}`.
pub fn from_theta_coords(qm: &QuadraticModule, xis: &[LieElement]) -> Result<Derivation, DerError> {
    let n = qm.rank();
    let gens = qm.generators();
    let mut acc: Option<Derivation> = None;
    for (i, xi) in xis.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let e: Vec<i64> = (0..n).map(|k| (k == i) as i64).collect();
        let t = theta(qm, &e, xi)?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Derivation::zero(gens, 0)))
}

/// `𝕃(m)` applied to `Σ_j c_j x_j` where `c` is column `col` of `coeffs`.
fn mapped_combination(
    vals: &[LieElement],
    coeffs: &IntMatrix,
    col: usize,
    src_zero: &LieElement,
    images: &[LieElement],
) -> Result<LieElement, DerError> {
    let mut x = src_zero.clone();
    for (j, v) in vals.iter().enumerate() {
        let c = coeffs[j][col];
        if c != 0 && !v.is_zero() {
            x = x.add_scaled(v, &q(c))?;
        }
    }
    Ok(substitute(&x, images)?)
}

/// `χ_f(a)(x) = 𝕃(f)(a(f^! x))`.
pub fn chi_f(f: &IntMatrix, qv: &QuadraticModule, qw: &QuadraticModule, a: &Derivation) -> Result<Derivation, DerError> {
    if a.gens() != qv.generators() {
        return Err(DerError::Mismatch);
    }
    let (adj, _) = adjoint_and_complement(f, qv, qw)?;
    let images = generator_images(f, qw.generators());
    let zero = LieElement::zero(qv.generators());
    let values = (0..qw.rank()).map(|i| mapped_combination(&a.values, &adj, i, &zero, &images)).collect::<Result<_, _>>()?;
    Derivation::new(qw.generators(), a.degree, values)
}

/// `ψ_f(b)(x) = 𝕃(f^!)(b(f x))`.
pub fn psi_f(f: &IntMatrix, qv: &QuadraticModule, qw: &QuadraticModule, b: &Derivation) -> Result<Derivation, DerError> {
    if b.gens() != qw.generators() {
        return Err(DerError::Mismatch);
    }
    let (adj, _) = adjoint_and_complement(f, qv, qw)?;
    let images = generator_images(&adj, qv.generators());
    let zero = LieElement::zero(qw.generators());
    let values = (0..qv.rank()).map(|j| mapped_combination(&b.values, f, j, &zero, &images)).collect::<Result<_, _>>()?;
    Derivation::new(qv.generators(), b.degree, values)
}

/// `a ↦ φ ∘ a ∘ φ^{−1}` with `φ = 𝕃(m)`.
pub fn act(qm: &QuadraticModule, m: &IsometryMatrix, a: &Derivation) -> Result<Derivation, DerError> {
    if !is_automorphism(qm, m)? {
        return Err(DerError::NotAutomorphism);
    }
    if a.gens() != qm.generators() {
        return Err(DerError::Mismatch);
    }
    let minv = inverse_unimodular(&m.entries).ok_or(DerError::NotAutomorphism)?;
    let images = generator_images(&m.entries, qm.generators());
    let zero = LieElement::zero(qm.generators());
    let values = (0..qm.rank()).map(|j| mapped_combination(&a.values, &minv, j, &zero, &images)).collect::<Result<_, _>>()?;
    Derivation::new(qm.generators(), a.degree, values)
}

/// One degree of the complex `L^n → L`, `(ζ_j) ↦ Σ ⟨e_i, e_j⟩ [x_i, ζ_j]`, with `L = 𝕃(V)/(ω_V)`.
///
/// `source_length` is the word length of the `ζ_j`; the target sits in word length one more.
/// `degree` is the target degree shifted down by `2d`, so `source_length = 0` is degree `−d − 1`.
#[derive(Debug, Clone)]
pub struct TwoTermSlice {
    pub source_length: usize,
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: SparseMatrix,
    pub rank: usize,
}

impl TwoTermSlice {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.rank
    }
}

/// Quotient `𝕃(V)/(ω_V)` as an ideal tower.
pub fn closed_quotient(qm: &QuadraticModule) -> Result<IdealTower, DerError> {
    let pres = Presentation::new(qm.generators().clone(), vec![omega_element(qm)?])?;
    Ok(IdealTower::new(&pres))
}

/// The slices for source word lengths `0..=max_len`.
pub fn two_term_complex(qm: &QuadraticModule, max_len: usize) -> Result<Vec<TwoTermSlice>, DerError> {
    let gens = qm.generators().clone();
    let n = qm.rank();
    let mut tower = closed_quotient(qm)?;
    let d = qm.d();
    let mut out = Vec::new();
    for m in 0..=max_len {
        let target_dim = tower.quotient_dim(m + 1);
        let degree = (m as i64 + 1) * (d - 1) - 2 * d;
        if m == 0 {
            out.push(TwoTermSlice {
                source_length: 0,
                degree,
                source_dim: 0,
                target_dim,
                matrix: SparseMatrix::zeros(target_dim, 0),
                rank: 0,
            });
            continue;
        }
        let normal = tower.normal_words(m);
        let mut cols = Vec::with_capacity(n * normal.len());
        for j in 0..n {
            for &u in &normal {
                let mut acc: Vec<(usize, Rational)> = Vec::new();
                for i in 0..n {
                    let g = qm.gram()[i][j];
                    if g == 0 {
                        continue;
                    }
                    let col = bracket_column(&gens, i, m + 1, u);
                    acc = exactla::vec_lincomb(&Rational::one(), &acc, &q(g), &col);
                }
                cols.push(tower.quotient_coords(m + 1, &acc));
            }
        }
        let matrix = SparseMatrix::from_cols(target_dim, cols).expect("indices in range");
        let r = rank(&matrix);
        out.push(TwoTermSlice { source_length: m, degree, source_dim: n * normal.len(), target_dim, matrix, rank: r });
    }
    Ok(out)
}

/// Evaluate `a` on a basis element.
pub fn apply_basis(a: &Derivation, b: BracketWord) -> Result<LieElement, DerError> {
    a.apply(&LieElement::basis(a.gens(), b))
}
