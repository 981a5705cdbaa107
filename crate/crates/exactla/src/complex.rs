use crate::{rank, LinAlgError, SparseMatrix};

/// The two differentials around one spot of a chain complex: `d_in: C_{n+1} → C_n`,
/// `d_out: C_n → C_{n−1}`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub d_in: SparseMatrix,
    pub d_out: SparseMatrix,
}

impl ComplexSlice {
    pub fn new(d_in: SparseMatrix, d_out: SparseMatrix) -> Result<Self, LinAlgError> {
        if d_in.rows() != d_out.cols() {
            return Err(LinAlgError::DimensionMismatch {
                left: (d_out.rows(), d_out.cols()),
                right: (d_in.rows(), d_in.cols()),
            });
        }
        Ok(ComplexSlice { d_in, d_out })
    }

    /// Dimension of the middle term.
    pub fn middle_dim(&self) -> usize {
        self.d_out.cols()
    }
}

/// `dim ker(d_out) − rank(d_in)`, after checking `d_out ∘ d_in = 0`.
pub fn homology_dims(s: &ComplexSlice) -> Result<usize, LinAlgError> {
    let comp = s.d_out.mul(&s.d_in)?;
    if !comp.is_zero() {
        return Err(LinAlgError::NotAComplex);
    }
    let ker = s.middle_dim() - rank(&s.d_out);
    Ok(ker - rank(&s.d_in))
}
