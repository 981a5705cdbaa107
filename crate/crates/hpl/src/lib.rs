//! Splittings of chain complexes over ℚ, contractions with side conditions, the basic
//! perturbation lemma, and the first components of the induced L∞ morphism.
//!
//! Complexes are finite, on a homogeneous basis, with the differential lowering degree by one.
//! Homotopies follow `1 − gf = dh + hd`.

mod complex;
mod contraction;
mod linfty;
mod model;
mod perturb;
mod split;

pub use complex::{block, is_homogeneous, ChainComplex};
pub use contraction::Contraction;
pub use linfty::{differential_matrix, linfty_transfer, LinftyMorphism};
pub use model::{
    contraction_by_blocks, DerCell, DerivationLayout, DerivationPair, FreeModel, Quadratic, QuadraticModel,
};
pub use perturb::{bpl, default_bound, Perturbation};
pub use split::{contraction_along, contraction_from_split, homology_square, split_complex, SplitData};

use exactla::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HplError {
    #[error("map {map} has shape {got:?}, expected {expected:?}")]
    Shape { map: &'static str, expected: (usize, usize), got: (usize, usize) },
    #[error("map {0} is not homogeneous of the required degree")]
    Degree(&'static str),
    #[error("differential does not square to zero")]
    NotComplex,
    #[error("dsd ≠ d")]
    NotSplit,
    #[error("contraction identity fails: {0}")]
    Identity(&'static str),
    #[error("map does not induce an isomorphism on homology")]
    NotQuasiIso,
    #[error("perturbation series did not terminate within {0} iterations")]
    Divergence(usize),
    #[error("f ∘ λ₂ ≠ 0")]
    NotTransferShape,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    Lie(#[from] gradedlie::LieError),
    #[error(transparent)]
    Chains(#[from] cechains::CEError),
}

/// Derivation complexes of the model `(𝕃(α₁…α_n, ρ), dρ = ω) → 𝕃(α)/(ω)` for the form `gram`,
/// perturbed by the cone differential.
#[derive(Clone, Debug)]
pub struct ConeInstance {
    pub model: QuadraticModel,
    pub pair: DerivationPair,
    pub perturbed: Contraction,
}

impl ConeInstance {
    /// `f′ = f_*`.
    pub fn projection_unchanged(&self) -> bool {
        self.perturbed.f == self.pair.contraction.f
    }

    /// `t′` equals the perturbation computed directly on the quotient side.
    pub fn small_perturbation_unchanged(&self) -> bool {
        let t2 = exactla::SparseMatrix::sub(self.perturbed.small.d(), self.pair.contraction.small.d()).expect("same shape");
        t2 == self.pair.t_small
    }
}

/// `ω = ½ Σ ⟨e_i, e_j⟩ [α_i, α_j]` as a quadratic relation.
pub fn omega_relation(gram: &[Vec<i64>]) -> Quadratic {
    let mut q = Quadratic::new();
    for (i, row) in gram.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            if g != 0 {
                q.push(((i, j), Rational::new(g.into(), 2.into())));
            }
        }
    }
    q
}

/// Builds the model for generators of degree `d − 1`, the derivation complexes up to derivation
/// weight `weight`, and runs the perturbation lemma.
pub fn cone_instance(gram: &[Vec<i64>], d: i64, weight: i64) -> Result<ConeInstance, HplError> {
    let n = gram.len();
    let model = QuadraticModel::new(n, d - 1, &[omega_relation(gram)], (weight + 2) as usize)?;
    let base = model.contraction()?;
    let pair = DerivationPair::new(&model, &base, weight)?;
    let p = Perturbation::new(&pair.contraction, pair.t_big.clone())?;
    let perturbed = bpl(&pair.contraction, &p, None)?;
    Ok(ConeInstance { model, pair, perturbed })
}
