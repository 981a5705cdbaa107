use std::collections::BTreeMap;

use exactla::{rank, rank_kernel, rref, Echelon, Rational, SparseMatrix, SparseVec};
use num_traits::One;

use crate::dglie::DgLie;
use crate::CEError;

fn d_matrix(l: &DgLie) -> SparseMatrix {
    let cols: Vec<SparseVec> = (0..l.dim()).map(|i| l.d_basis(i).clone()).collect();
    SparseMatrix::from_cols(l.dim(), cols).expect("indices in range")
}

/// Degreewise `dim H_k(L, d)`.
pub fn chain_homology(l: &DgLie) -> BTreeMap<i64, usize> {
    let d = d_matrix(l);
    let mut out = BTreeMap::new();
    for &k in l.degrees() {
        if out.contains_key(&k) {
            continue;
        }
        let src = l.basis_in_degree(k);
        let above = l.basis_in_degree(k + 1);
        let z = src.len() - rank(&d.select_cols(&src));
        let b = rank(&d.select_cols(&above));
        out.insert(k, z - b);
    }
    out
}

/// Cycles modulo boundaries in each degree, with chosen representatives.
pub struct HomologyBasis {
    /// Representatives (cycles of `L`), grouped by degree in increasing order.
    pub reps: Vec<SparseVec>,
    pub degrees: Vec<i64>,
    boundaries: BTreeMap<i64, Echelon>,
    classes: BTreeMap<i64, (usize, exactla::RowEchelon)>,
}

impl HomologyBasis {
    pub fn new(l: &DgLie) -> Self {
        let n = l.dim();
        let d = d_matrix(l);
        let mut ks: Vec<i64> = l.degrees().to_vec();
        ks.sort();
        ks.dedup();
        let mut reps = Vec::new();
        let mut degrees = Vec::new();
        let mut boundaries = BTreeMap::new();
        let mut classes = BTreeMap::new();
        for k in ks {
            let src = l.basis_in_degree(k);
            let mut eb = Echelon::new(n);
            for &j in &l.basis_in_degree(k + 1) {
                eb.insert(l.d_basis(j));
            }
            let (_, ker) = rank_kernel(&d.select_cols(&src));
            let rem: Vec<SparseVec> = ker
                .into_iter()
                .map(|v| eb.reduce(&v.into_iter().map(|(c, x)| (src[c], x)).collect()))
                .filter(|v| !v.is_empty())
                .collect();
            let re = rref(&SparseMatrix::from_rows(n, rem).expect("indices in range"));
            classes.insert(k, (reps.len(), re.clone()));
            for row in re.rows {
                reps.push(row);
                degrees.push(k);
            }
            boundaries.insert(k, eb);
        }
        HomologyBasis { reps, degrees, boundaries, classes }
    }

    /// Coordinates of the class of the cycle `z` (of degree `k`) in the global representative list.
    pub fn class_of(&self, k: i64, z: &SparseVec) -> Option<SparseVec> {
        let Some((off, re)) = self.classes.get(&k) else {
            return if z.is_empty() { Some(Vec::new()) } else { None };
        };
        let red = self.boundaries[&k].reduce(z);
        re.coordinates(&red).map(|c| c.into_iter().map(|(i, x)| (off + i, x)).collect())
    }
}

/// `H_*(L)` with the induced bracket.
pub fn homology_lie(l: &DgLie) -> Result<DgLie, CEError> {
    let hb = HomologyBasis::new(l);
    let m = hb.reps.len();
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a..m {
            let z = l.bracket(&hb.reps[a], &hb.reps[b]);
            if z.is_empty() {
                continue;
            }
            let k = hb.degrees[a] + hb.degrees[b];
            let c = hb.class_of(k, &z).ok_or(CEError::NotDerivation)?;
            if !c.is_empty() {
                brackets.push(((a, b), c));
            }
        }
    }
    let names = (0..m).map(|i| format!("h{i}")).collect();
    DgLie::new(names, hb.degrees.clone(), brackets, Vec::new())
}

pub(crate) fn unit(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}
