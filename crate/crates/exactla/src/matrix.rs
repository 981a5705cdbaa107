use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{LinAlgError, Rational};

/// Sparse vector: sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// Sparse matrix over ℚ stored row-wise, columns sorted, no explicit zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Build from triplets; duplicates are summed, zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinAlgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    /// Build from sparse rows (each is summed and sorted).
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Result<Self, LinAlgError> {
        let n = rows.len();
        Self::from_triplets(
            n,
            cols,
            rows.into_iter().enumerate().flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v))),
        )
    }

    /// Build from sparse columns.
    pub fn from_cols(rows: usize, cols: Vec<SparseVec>) -> Result<Self, LinAlgError> {
        let n = cols.len();
        Self::from_triplets(
            rows,
            n,
            cols.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let data = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
            .collect();
        SparseMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_slices(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut dense: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, x) in v {
            dense.insert(*c, x.clone());
        }
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    s += a * x;
                }
            }
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
        self.lincomb(&Rational::one(), other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
        self.lincomb(&Rational::one(), other, &-Rational::one())
    }

    /// `a*self + b*other`.
    pub fn lincomb(&self, a: &Rational, other: &SparseMatrix, b: &Rational) -> Result<SparseMatrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| vec_lincomb(a, x, b, y)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, a: &Rational) -> SparseMatrix {
        if a.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|r| r.iter().map(|(c, v)| (*c, v * a)).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Select a subset of columns, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (i, &c) in keep.iter().enumerate() {
            pos[c] = i;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut row: SparseVec =
                    r.iter().filter(|(c, _)| pos[*c] != usize::MAX).map(|(c, v)| (pos[*c], v.clone())).collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: keep.len(), data }
    }

    /// Stack matrices with equal column counts vertically.
    pub fn vstack(parts: &[SparseMatrix]) -> Result<SparseMatrix, LinAlgError> {
        let cols = parts.first().map(|p| p.cols).unwrap_or(0);
        let mut data = Vec::new();
        for p in parts {
            if p.cols != cols {
                return Err(LinAlgError::DimensionMismatch { left: (0, cols), right: (p.rows, p.cols) });
            }
            data.extend(p.data.iter().cloned());
        }
        Ok(SparseMatrix { rows: data.len(), cols, data })
    }

    /// Integer rows scaled to primitive form (row scaling does not change row space).
    pub(crate) fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.data.iter().map(|r| primitive_integer(r)).collect()
    }
}

/// `a*x + b*y` for sparse vectors.
pub fn vec_lincomb(a: &Rational, x: &SparseVec, b: &Rational, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &x[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, b * &y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (ci, a * &x[i - 1].1 + b * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Scale a rational vector to a primitive integer vector (same direction, positive leading entry
/// not enforced).
pub fn primitive_integer(v: &SparseVec) -> Vec<(usize, BigInt)> {
    let mut l = BigInt::one();
    for (_, x) in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<(usize, BigInt)> = v.iter().map(|(c, x)| (*c, x.numer() * (&l / x.denom()))).collect();
    let mut g = BigInt::zero();
    for (_, x) in &out {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for (_, x) in out.iter_mut() {
            *x = &*x / &g;
        }
    }
    out
}
