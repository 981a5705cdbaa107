use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::scalar::{eliminate, entry, normalize, Overflow, Row, Scalar};
use crate::{Rational, SparseMatrix, SparseVec};

/// Below this many active cells the dense switch is not worth it.
const DENSE_MIN_CELLS: usize = 256;

/// Reduced row echelon form with rational rows whose pivot entries are 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_piv = vec![false; self.cols];
        for &p in &self.pivots {
            is_piv[p] = true;
        }
        (0..self.cols).filter(|&c| !is_piv[c]).collect()
    }

    /// Kernel basis of the original matrix: one vector per free column, with 1 there and 0 at the
    /// other free columns.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let free = self.free_cols();
        let mut slot = vec![usize::MAX; self.cols];
        for (k, &c) in free.iter().enumerate() {
            slot[c] = k;
        }
        let mut vecs: Vec<SparseVec> = free.iter().map(|&c| vec![(c, Rational::from_integer(1.into()))]).collect();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            for (c, v) in row {
                if c != p {
                    vecs[slot[*c]].push((*p, -v.clone()));
                }
            }
        }
        for v in vecs.iter_mut() {
            v.sort_by_key(|e| e.0);
        }
        vecs
    }

    /// Coordinates of `v` with respect to `rows`, or `None` if `v` is not in their span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut coords = SparseVec::new();
        let mut rest: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        for (k, (p, row)) in self.pivots.iter().zip(&self.rows).enumerate() {
            let Some(c) = rest.get(p).cloned() else { continue };
            for (j, x) in row {
                let e = rest.entry(*j).or_insert_with(|| Rational::from_integer(0.into()));
                *e -= &c * x;
                if *e == Rational::from_integer(0.into()) {
                    rest.remove(j);
                }
            }
            coords.push((k, c));
        }
        rest.is_empty().then_some(coords)
    }
}

/// Forward elimination: column-order pivoting, largest magnitude first, ties by original row index.
fn forward<T: Scalar>(rows: Vec<Row<T>>, ncols: usize) -> Result<Vec<Row<T>>, Overflow> {
    let mut buckets: BTreeMap<usize, Vec<(usize, Row<T>)>> = BTreeMap::new();
    let mut nnz = 0usize;
    let mut active = 0usize;
    for (i, mut r) in rows.into_iter().enumerate() {
        if r.is_empty() {
            continue;
        }
        normalize(&mut r)?;
        nnz += r.len();
        active += 1;
        buckets.entry(r[0].0).or_default().push((i, r));
    }
    let mut out = Vec::new();
    while let Some((&col, _)) = buckets.iter().next() {
        let cells = active * (ncols - col);
        if cells >= DENSE_MIN_CELLS && 2 * nnz > cells {
            let rest: Vec<(usize, Row<T>)> = std::mem::take(&mut buckets).into_values().flatten().collect();
            out.extend(forward_dense(rest, col, ncols)?);
            return Ok(out);
        }
        let mut group = buckets.remove(&col).unwrap();
        let mut best = 0;
        for k in 1..group.len() {
            let ord = group[k].1[0].1.abs_cmp(&group[best].1[0].1);
            if ord == std::cmp::Ordering::Greater
                || (ord == std::cmp::Ordering::Equal && group[k].0 < group[best].0)
            {
                best = k;
            }
        }
        let (_, piv) = group.swap_remove(best);
        active -= 1;
        nnz -= piv.len();
        for (i, r) in group {
            nnz -= r.len();
            let reduced = eliminate(&r, &r[0].1, &piv, &piv[0].1)?;
            if reduced.is_empty() {
                active -= 1;
            } else {
                nnz += reduced.len();
                buckets.entry(reduced[0].0).or_default().push((i, reduced));
            }
        }
        out.push(piv);
    }
    Ok(out)
}

fn forward_dense<T: Scalar>(rows: Vec<(usize, Row<T>)>, start: usize, ncols: usize) -> Result<Vec<Row<T>>, Overflow> {
    let width = ncols - start;
    let mut mat: Vec<(usize, Vec<T>)> = rows
        .into_iter()
        .map(|(i, r)| {
            let mut d = vec![T::zero(); width];
            for (c, v) in r {
                d[c - start] = v;
            }
            (i, d)
        })
        .collect();
    mat.sort_by_key(|e| e.0);
    let mut out = Vec::new();
    for c in 0..width {
        let mut best: Option<usize> = None;
        for (k, (i, r)) in mat.iter().enumerate() {
            if r[c].is_zero() {
                continue;
            }
            best = match best {
                None => Some(k),
                Some(b) => {
                    let ord = r[c].abs_cmp(&mat[b].1[c]);
                    if ord == std::cmp::Ordering::Greater || (ord == std::cmp::Ordering::Equal && *i < mat[b].0) {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(b) = best else { continue };
        let (_, piv) = mat.swap_remove(b);
        let pv = piv[c].clone();
        for (_, r) in mat.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&r[c]);
            let a = pv.div_exact(&g);
            let bb = r[c].div_exact(&g);
            let mut content = T::zero();
            for k in c..width {
                let v = a.mul(&r[k])?.sub(&bb.mul(&piv[k])?)?;
                if !v.is_zero() {
                    content = if content.is_zero() { v.gcd(&v) } else { content.gcd(&v) };
                }
                r[k] = v;
            }
            if !content.is_zero() && !content.is_one() {
                for k in c..width {
                    if !r[k].is_zero() {
                        r[k] = r[k].div_exact(&content);
                    }
                }
            }
        }
        mat.retain(|(_, r)| r.iter().any(|v| !v.is_zero()));
        mat.sort_by_key(|e| e.0);
        let mut srow: Row<T> = piv
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k + start, v))
            .collect();
        normalize(&mut srow)?;
        out.push(srow);
    }
    Ok(out)
}

/// Back-substitute so that every pivot column is zero outside its own row.
fn backward<T: Scalar>(mut piv: Vec<Row<T>>) -> Result<Vec<Row<T>>, Overflow> {
    piv.sort_by_key(|r| r[0].0);
    let cols: Vec<usize> = piv.iter().map(|r| r[0].0).collect();
    let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    for i in (0..piv.len()).rev() {
        let targets: Vec<usize> =
            piv[i].iter().skip(1).filter(|(c, _)| index.contains_key(c)).map(|(c, _)| *c).collect();
        for c in targets {
            let k = index[&c];
            let rv = entry(&piv[i], c).cloned().unwrap();
            let p = &piv[k];
            let pv = p[0].1.clone();
            let new = eliminate(&piv[i], &rv, p, &pv)?;
            piv[i] = new;
        }
    }
    Ok(piv)
}

fn to_small(rows: &[Row<BigInt>]) -> Result<Vec<Row<i128>>, Overflow> {
    rows.iter().map(|r| r.iter().map(|(c, v)| Ok((*c, i128::from_big(v)?))).collect()).collect()
}

fn to_rational<T: Scalar>(rows: Vec<Row<T>>, cols: usize) -> RowEchelon {
    let mut pivots = Vec::with_capacity(rows.len());
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let lead = r[0].1.to_big();
        pivots.push(r[0].0);
        out.push(r.into_iter().map(|(c, v)| (c, Rational::new(v.to_big(), lead.clone()))).collect());
    }
    RowEchelon { cols, pivots, rows: out }
}

/// Reduced row echelon form of `m`.
pub fn rref(m: &SparseMatrix) -> RowEchelon {
    let rows = m.integer_rows();
    if let Ok(small) = to_small(&rows) {
        if let Ok(r) = forward(small, m.cols()).and_then(backward) {
            return to_rational(r, m.cols());
        }
    }
    let r = forward(rows, m.cols()).and_then(backward).expect("bigint elimination cannot overflow");
    to_rational(r, m.cols())
}

/// Rank without back substitution.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_of_integer_rows(m.integer_rows(), m.cols())
}

pub(crate) fn rank_of_integer_rows(rows: Vec<Row<BigInt>>, cols: usize) -> usize {
    if let Ok(small) = to_small(&rows) {
        if let Ok(r) = forward(small, cols) {
            return r.len();
        }
    }
    forward(rows, cols).expect("bigint elimination cannot overflow").len()
}

/// Rank and a kernel basis (right null space) of `m`.
pub fn rank_kernel(m: &SparseMatrix) -> (usize, Vec<SparseVec>) {
    let e = rref(m);
    (e.rank(), e.kernel())
}

/// Some `X` with `a·X = b`, or `None` if a column of `b` is outside the column space of `a`.
pub fn solve(a: &SparseMatrix, b: &SparseMatrix) -> Option<SparseMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row counts differ");
    let n = a.cols();
    let rows: Vec<SparseVec> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).clone();
            row.extend(b.row(r).iter().map(|(c, v)| (n + c, v.clone())));
            row
        })
        .collect();
    let aug = SparseMatrix::from_rows(n + b.cols(), rows).expect("indices in range");
    let e = rref(&aug);
    if e.pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = vec![SparseVec::new(); n];
    for (p, row) in e.pivots.iter().zip(&e.rows) {
        x[*p] = row.iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v.clone())).collect();
    }
    Some(SparseMatrix::from_rows(b.cols(), x).expect("indices in range"))
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(a: &SparseMatrix) -> Option<SparseMatrix> {
    if a.rows() != a.cols() || rank(a) < a.rows() {
        return None;
    }
    solve(a, &SparseMatrix::identity(a.rows()))
}
