//! Free graded Lie algebras on generators of one degree: graded-Lyndon bases, brackets in normal
//! form, ideals generated by homogeneous relations, quotients and centers.
//!
//! Elements are expanded into the tensor algebra and rewritten back into the basis by leading-word
//! elimination. For odd generators the basis also contains the self-brackets of odd Lyndon words.

mod algebra;
mod gens;
mod ideal;
mod pbw;
mod syntax;
mod tensor;
mod word;

pub use algebra::{algebra, bracket, lyndon_basis, substitute, BracketWord, FreeLie, LengthBasis, LieElement};
pub use gens::GeneratorSet;
pub use ideal::{
    center_up_to, enveloping_series, ideal_basis, one_relator_series, quotient_dims, IdealTower, Presentation,
};
pub use pbw::{multiply_factor, pbw_dim_oracle, pbw_solve, witt_number};
pub use syntax::{format_bracket_word, format_element, parse_element};
pub use tensor::Tensor;
pub use word::{lyndon_words, Word, MAX_LEN, MAX_LETTERS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("generator degree must be at least 1, got {0}")]
    BadDegree(i64),
    #[error("at most 16 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("tensor is not a Lie polynomial")]
    NotLie,
    #[error("elements belong to different generator sets")]
    MismatchedGenerators,
    #[error("word length must be at least 1")]
    ZeroLength,
    #[error("relation is not homogeneous")]
    Inhomogeneous,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
