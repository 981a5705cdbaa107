use std::collections::BTreeMap;

use exactla::{rank, Rational, SparseMatrix};
use num_traits::One;

use crate::HplError;

/// Finite chain complex over ℚ on a homogeneous basis; `d` lowers degree by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    degrees: Vec<i64>,
    d: SparseMatrix,
}

impl ChainComplex {
    pub fn new(degrees: Vec<i64>, d: SparseMatrix) -> Result<Self, HplError> {
        let n = degrees.len();
        if d.rows() != n || d.cols() != n {
            return Err(HplError::Shape { map: "d", expected: (n, n), got: (d.rows(), d.cols()) });
        }
        if !is_homogeneous(&d, &degrees, &degrees, -1) {
            return Err(HplError::Degree("d"));
        }
        if !mul(&d, &d).is_zero() {
            return Err(HplError::NotComplex);
        }
        Ok(ChainComplex { degrees, d })
    }

    pub fn zero(degrees: Vec<i64>) -> Self {
        let n = degrees.len();
        ChainComplex { degrees, d: SparseMatrix::zeros(n, n) }
    }

    /// Complex given by dimensions `dims[i]` in degree `lo + i` and blocks `blocks[i]: C_{lo+i+1} → C_{lo+i}`.
    pub fn from_blocks(lo: i64, dims: &[usize], blocks: &[SparseMatrix]) -> Result<Self, HplError> {
        if blocks.len() + 1 != dims.len().max(1) {
            return Err(HplError::Shape { map: "d", expected: (dims.len().saturating_sub(1), 0), got: (blocks.len(), 0) });
        }
        let mut offs = vec![0usize];
        for &k in dims {
            offs.push(offs.last().unwrap() + k);
        }
        let n = *offs.last().unwrap();
        let mut degrees = Vec::with_capacity(n);
        for (i, &k) in dims.iter().enumerate() {
            degrees.extend(std::iter::repeat(lo + i as i64).take(k));
        }
        let mut trip = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            if b.rows() != dims[i] || b.cols() != dims[i + 1] {
                return Err(HplError::Shape { map: "d", expected: (dims[i], dims[i + 1]), got: (b.rows(), b.cols()) });
            }
            trip.extend(b.entries().map(|(r, c, v)| (offs[i] + r, offs[i + 1] + c, v.clone())));
        }
        let d = SparseMatrix::from_triplets(n, n, trip).expect("indices in range");
        ChainComplex::new(degrees, d)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn d(&self) -> &SparseMatrix {
        &self.d
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    pub fn basis_in_degree(&self, k: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// Same basis, differential `d + t`.
    pub fn perturbed(&self, t: &SparseMatrix) -> Result<Self, HplError> {
        ChainComplex::new(self.degrees.clone(), add(&self.d, t))
    }

    /// Betti numbers by degree (only nonzero entries).
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        for k in lo..=hi {
            let here = self.basis_in_degree(k);
            if here.is_empty() {
                continue;
            }
            let below = self.basis_in_degree(k - 1);
            let above = self.basis_in_degree(k + 1);
            let out_rank = rank(&block(&self.d, &below, &here));
            let in_rank = rank(&block(&self.d, &here, &above));
            let h = here.len() - out_rank - in_rank;
            if h > 0 {
                out.insert(k, h);
            }
        }
        out
    }
}

/// Whether every nonzero entry `(r, c)` has `tgt[r] = src[c] + shift`.
pub fn is_homogeneous(m: &SparseMatrix, tgt: &[i64], src: &[i64], shift: i64) -> bool {
    m.entries().all(|(r, c, _)| tgt[r] == src[c] + shift)
}

/// Submatrix on the given rows and columns.
pub fn block(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> SparseMatrix {
    m.transpose().select_cols(rows).transpose().select_cols(cols)
}

pub(crate) fn mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).expect("composable maps")
}

pub(crate) fn add(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.add(b).expect("maps of equal shape")
}

pub(crate) fn sub(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.sub(b).expect("maps of equal shape")
}

pub(crate) fn id(n: usize) -> SparseMatrix {
    SparseMatrix::identity(n)
}

pub(crate) fn neg(a: &SparseMatrix) -> SparseMatrix {
    a.scale(&-Rational::one())
}
