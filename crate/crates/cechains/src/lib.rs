//! Chevalley–Eilenberg chains of finite-dimensional dg Lie algebras: bigraded homology, the
//! spectral sequence of the word-length filtration, and the mapping cone of `ad: L → Der L`.

mod ce;
mod cone;
mod dglie;
mod homology;
mod ss;
mod table;

pub use ce::{CEComplex, CEWord};
pub use cone::{cone_der_ad, derivation_space, truncate_positive, MappingCone};
pub use dglie::DgLie;
pub use homology::{chain_homology, homology_lie, HomologyBasis};
pub use ss::{wordlength_ss, SpectralSequence};
pub use table::DimTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CEError {
    #[error("sizes of names, degrees, brackets or differential do not match")]
    SizeMismatch,
    #[error("structure constants are not homogeneous")]
    Degree,
    #[error("brackets violate graded antisymmetry")]
    Antisymmetry,
    #[error("d ∘ d ≠ 0")]
    NotDifferential,
    #[error("d is not a derivation of the bracket")]
    NotDerivation,
    #[error("word outside the truncation window")]
    OutOfTruncation,
    #[error("word is not in normal form")]
    NotNormal,
    #[error("the Lie algebra must be concentrated in positive degrees")]
    NotPositive,
    #[error("bigraded homology needs a trivial differential")]
    NonTrivialDifferential,
    #[error(transparent)]
    Lie(#[from] gradedlie::LieError),
}

/// Convenience: one-hot vector.
pub fn unit(i: usize) -> exactla::SparseVec {
    homology::unit(i)
}
