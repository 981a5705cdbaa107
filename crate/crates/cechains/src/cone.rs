use std::collections::{BTreeMap, HashMap};

use exactla::{rank_kernel, rref, vec_lincomb, Rational, RowEchelon, SparseMatrix, SparseVec};
use num_traits::One;

use crate::dglie::{koszul, DgLie};
use crate::CEError;

/// A derivation stored as the images of the basis: `cols[j] = θ(x_j)`.
type Cols = Vec<SparseVec>;

fn to_cols(n: usize, v: &SparseVec) -> Cols {
    let mut cols = vec![SparseVec::new(); n];
    for (idx, c) in v {
        cols[idx / n].push((idx % n, c.clone()));
    }
    cols
}

fn from_cols(n: usize, cols: &Cols) -> SparseVec {
    let mut v: SparseVec = cols.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, c)| (j * n + i, c.clone()))).collect();
    v.sort_by_key(|e| e.0);
    v
}

fn apply(cols: &Cols, x: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (j, a) in x {
        acc = vec_lincomb(&Rational::one(), &acc, a, &cols[*j]);
    }
    acc
}

/// `a∘b − (−1)^{s} b∘a` on columns.
fn commutator(a: &Cols, b: &Cols, s: i64) -> Cols {
    (0..a.len()).map(|j| vec_lincomb(&Rational::one(), &apply(a, &b[j]), &-koszul(s), &apply(b, &a[j]))).collect()
}

/// Basis (reduced echelon rows, index `j·n + i` for the coefficient of `x_i` in `θ(x_j)`) of the
/// degree-`k` derivations of the underlying graded Lie algebra.
pub fn derivation_space(l: &DgLie, k: i64) -> RowEchelon {
    let n = l.dim();
    let unknowns: Vec<(usize, usize)> =
        (0..n).flat_map(|j| (0..n).map(move |i| (j, i))).filter(|&(j, i)| l.degree(i) == l.degree(j) + k).collect();
    let col_of: HashMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(c, &u)| (u, c)).collect();
    let mut rows: HashMap<(usize, usize, usize), Vec<(usize, Rational)>> = HashMap::new();
    let mut add = |key: (usize, usize, usize), col: usize, c: Rational| rows.entry(key).or_default().push((col, c));
    for a in 0..n {
        for b in a..n {
            let s = koszul(k * l.degree(a));
            for (j, c) in l.bracket_basis(a, b) {
                for i in 0..n {
                    if let Some(&col) = col_of.get(&(*j, i)) {
                        add((a, b, i), col, c.clone());
                    }
                }
            }
            for i in 0..n {
                if let Some(&col) = col_of.get(&(a, i)) {
                    for (o, c) in l.bracket_basis(i, b) {
                        add((a, b, *o), col, -c.clone());
                    }
                }
                if let Some(&col) = col_of.get(&(b, i)) {
                    for (o, c) in l.bracket_basis(a, i) {
                        add((a, b, *o), col, -(&s * c));
                    }
                }
            }
        }
    }
    let mut mrows: Vec<SparseVec> = Vec::with_capacity(rows.len());
    for (_, mut r) in rows {
        r.sort_by_key(|e| e.0);
        let mut merged: SparseVec = Vec::new();
        for (c, x) in r {
            match merged.last_mut() {
                Some((d, y)) if *d == c => *y += x,
                _ => merged.push((c, x)),
            }
        }
        merged.retain(|(_, x)| *x != Rational::from_integer(0.into()));
        mrows.push(merged);
    }
    let m = SparseMatrix::from_rows(unknowns.len(), mrows).expect("indices in range");
    let (_, ker) = rank_kernel(&m);
    let lifted: Vec<SparseVec> = ker
        .into_iter()
        .map(|v| {
            let mut w: SparseVec = v.into_iter().map(|(c, x)| (unknowns[c].0 * n + unknowns[c].1, x)).collect();
            w.sort_by_key(|e| e.0);
            w
        })
        .collect();
    rref(&SparseMatrix::from_rows(n * n, lifted).expect("indices in range"))
}

/// `sL ⊕ Der L` with `D̃(θ) = [d, θ]`, `D̃(sx) = ad_x − s dx` and `[θ, sx] = (−1)^{|θ|} sθ(x)`.
#[derive(Debug, Clone)]
pub struct MappingCone {
    pub lie: DgLie,
    /// `sL` occupies indices `0..suspended`.
    pub suspended: usize,
    /// Degree of the derivations → (offset in the cone basis, echelon basis).
    pub der: BTreeMap<i64, (usize, RowEchelon)>,
}

impl MappingCone {
    pub fn der_dim(&self, k: i64) -> usize {
        self.der.get(&k).map(|(_, e)| e.rank()).unwrap_or(0)
    }
}

pub fn cone_der_ad(l: &DgLie) -> Result<MappingCone, CEError> {
    let n = l.dim();
    let (lo, hi) = match (l.degrees().iter().min(), l.degrees().iter().max()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0, 0),
    };
    let mut names: Vec<String> = l.names().iter().map(|s| format!("s{s}")).collect();
    let mut degrees: Vec<i64> = l.degrees().iter().map(|k| k + 1).collect();
    let mut der = BTreeMap::new();
    let mut elems: Vec<(i64, Cols)> = Vec::new();
    for k in (lo - hi)..=(hi - lo) {
        let e = derivation_space(l, k);
        if e.rank() == 0 {
            continue;
        }
        der.insert(k, (names.len(), e.clone()));
        for (r, row) in e.rows.iter().enumerate() {
            names.push(format!("D{k}_{r}"));
            degrees.push(k);
            elems.push((k, to_cols(n, row)));
        }
    }
    let coords = |k: i64, cols: &Cols| -> Result<SparseVec, CEError> {
        let v = from_cols(n, cols);
        if v.is_empty() {
            return Ok(v);
        }
        let (off, e) = der.get(&k).ok_or(CEError::NotDerivation)?;
        let c = e.coordinates(&v).ok_or(CEError::NotDerivation)?;
        Ok(c.into_iter().map(|(i, x)| (off + i, x)).collect())
    };
    let mut brackets = Vec::new();
    for a in 0..elems.len() {
        let (ka, ca) = &elems[a];
        for b in a..elems.len() {
            let (kb, cb) = &elems[b];
            let v = coords(ka + kb, &commutator(ca, cb, ka * kb))?;
            if !v.is_empty() {
                brackets.push(((n + a, n + b), v));
            }
        }
        for j in 0..n {
            let img = apply(ca, &vec![(j, Rational::one())]);
            if !img.is_empty() {
                let s = koszul(*ka);
                brackets.push(((n + a, j), img.into_iter().map(|(i, x)| (i, &s * x)).collect()));
            }
        }
    }
    let dcols: Cols = (0..n).map(|j| l.d_basis(j).clone()).collect();
    let mut diff = Vec::with_capacity(n + elems.len());
    for j in 0..n {
        let ad: Cols = (0..n).map(|i| l.bracket(&[(j, Rational::one())], &[(i, Rational::one())])).collect();
        let mut v = coords(l.degree(j), &ad)?;
        v.extend(l.d_basis(j).iter().map(|(i, x)| (*i, -x.clone())));
        v.sort_by_key(|e| e.0);
        diff.push(v);
    }
    for (k, c) in &elems {
        diff.push(coords(k - 1, &commutator(&dcols, c, -*k))?);
    }
    let lie = DgLie::new(names, degrees, brackets, diff)?;
    Ok(MappingCone { lie, suspended: n, der })
}

/// Degrees `≥ 2`, the cycles in degree 1, nothing below.
pub fn truncate_positive(l: &DgLie) -> Result<DgLie, CEError> {
    let n = l.dim();
    let ones = l.basis_in_degree(1);
    let dm = SparseMatrix::from_cols(n, (0..n).map(|j| l.d_basis(j).clone()).collect()).expect("indices in range");
    let (_, ker) = rank_kernel(&dm.select_cols(&ones));
    let cyc: Vec<SparseVec> = ker.into_iter().map(|v| v.into_iter().map(|(c, x)| (ones[c], x)).collect()).collect();
    let z1 = rref(&SparseMatrix::from_rows(n, cyc).expect("indices in range"));
    let high: Vec<usize> = (0..n).filter(|&i| l.degree(i) >= 2).collect();
    let m1 = z1.rank();
    let pos_of: HashMap<usize, usize> = high.iter().enumerate().map(|(k, &i)| (i, m1 + k)).collect();
    let mut names: Vec<String> = (0..m1).map(|r| format!("z{r}")).collect();
    let mut degrees = vec![1i64; m1];
    names.extend(high.iter().map(|&i| l.names()[i].clone()));
    degrees.extend(high.iter().map(|&i| l.degree(i)));
    let elems: Vec<SparseVec> = z1.rows.iter().cloned().chain(high.iter().map(|&i| vec![(i, Rational::one())])).collect();
    let convert = |v: &SparseVec| -> Result<SparseVec, CEError> {
        let (lowdeg, rest): (SparseVec, SparseVec) = v.iter().cloned().partition(|(i, _)| l.degree(*i) == 1);
        if rest.iter().any(|(i, _)| l.degree(*i) < 1) {
            return Err(CEError::Degree);
        }
        let mut out: SparseVec = if lowdeg.is_empty() { Vec::new() } else { z1.coordinates(&lowdeg).ok_or(CEError::Degree)? };
        out.extend(rest.into_iter().map(|(i, x)| (pos_of[&i], x)));
        out.sort_by_key(|e| e.0);
        Ok(out)
    };
    let mut brackets = Vec::new();
    for a in 0..elems.len() {
        for b in a..elems.len() {
            let v = l.bracket(&elems[a], &elems[b]);
            if !v.is_empty() {
                brackets.push(((a, b), convert(&v)?));
            }
        }
    }
    let diff = elems.iter().map(|x| convert(&l.d(x))).collect::<Result<Vec<_>, _>>()?;
    DgLie::new(names, degrees, brackets, diff)
}
