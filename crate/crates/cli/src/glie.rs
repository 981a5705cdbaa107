//! `𝔤_g` modulo word lengths above a cutoff, as a finite-dimensional graded Lie algebra.

use cechains::DgLie;
use dercomplex::{der_bracket, g_basis, Derivation};
use exactla::{solve, SparseMatrix, SparseVec};
use quadmod::QuadraticModule;

use crate::CliError;

/// Concatenated coordinates of the values on the generators.
fn coords(a: &Derivation, k: usize) -> SparseVec {
    let width = gradedlie::algebra(a.gens()).basis(k - 1).len();
    let mut out = SparseVec::new();
    for (i, v) in a.values().iter().enumerate() {
        for (j, c) in v.coords(k - 1) {
            out.push((i * width + j, c));
        }
    }
    out
}

/// Basis `g_basis(qm, 3) ∪ ⋯ ∪ g_basis(qm, maxlen)` with brackets landing above `maxlen`
/// dropped. The second component gives the word length of each basis element.
pub fn truncated_g(qm: &QuadraticModule, maxlen: usize) -> Result<(DgLie, Vec<usize>), CliError> {
    let mut basis: Vec<Derivation> = Vec::new();
    let mut lengths = Vec::new();
    let mut offsets = vec![0; maxlen + 2];
    for k in 3..=maxlen {
        offsets[k] = basis.len();
        let b = g_basis(qm, k).map_err(|e| CliError::Compute(e.to_string()))?;
        lengths.extend(std::iter::repeat(k).take(b.len()));
        basis.extend(b);
    }
    offsets[maxlen + 1] = basis.len();
    let width = |k: usize| qm.rank() * gradedlie::algebra(qm.generators()).basis(k - 1).len();
    let mats: Vec<Option<SparseMatrix>> = (0..=maxlen)
        .map(|k| {
            (k >= 3).then(|| {
                let cols = (offsets[k]..offsets[k + 1]).map(|i| coords(&basis[i], k)).collect();
                SparseMatrix::from_cols(width(k), cols).expect("indices in range")
            })
        })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let k = lengths[i] + lengths[j] - 2;
            if k > maxlen {
                continue;
            }
            let b = der_bracket(&basis[i], &basis[j]).map_err(|e| CliError::Compute(e.to_string()))?;
            if b.is_zero() {
                continue;
            }
            let m = mats[k].as_ref().expect("k ≥ 3");
            let rhs = SparseMatrix::from_cols(m.rows(), vec![coords(&b, k)]).expect("indices in range");
            let x = solve(m, &rhs).ok_or_else(|| CliError::Compute("bracket left 𝔤".into()))?;
            let v: SparseVec = x.columns().remove(0).into_iter().map(|(r, c)| (offsets[k] + r, c)).collect();
            brackets.push(((i, j), v));
        }
    }
    let names = (0..basis.len()).map(|i| format!("a{i}")).collect();
    let degrees = basis.iter().map(Derivation::degree).collect();
    let lie = DgLie::new(names, degrees, brackets, Vec::new()).map_err(|e| CliError::Compute(e.to_string()))?;
    Ok((lie, lengths))
}
