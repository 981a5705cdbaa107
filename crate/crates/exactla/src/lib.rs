//! Exact linear algebra over ℚ: sparse matrices, fraction-free elimination, kernels, ranks and
//! homology of finite chain complexes.

mod complex;
mod echelon;
mod elim;
mod matrix;
mod scalar;
mod text;

pub use complex::{homology_dims, ComplexSlice};
pub use echelon::Echelon;
pub use elim::{inverse, rank, rank_kernel, rref, solve, RowEchelon};
pub use matrix::{primitive_integer, vec_lincomb, SparseMatrix, SparseVec};
pub use text::{from_text, parse_rational, to_text};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("entry ({row},{col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("d_out ∘ d_in is not zero")]
    NotAComplex,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rank of the transpose, computed by eliminating the columns instead of the rows.
pub fn rank_by_columns(m: &SparseMatrix) -> usize {
    rank(&m.transpose())
}

/// Whether `v` is in the kernel of `m`.
pub fn annihilates(m: &SparseMatrix, v: &SparseVec) -> bool {
    m.mul_vec(v).is_empty()
}
