use std::collections::HashMap;

use exactla::{vec_lincomb, Rational, SparseVec};
use gradedlie::{algebra, format_bracket_word, IdealTower, Presentation};
use num_traits::{One, Zero};

use crate::CEError;

/// Finite-dimensional dg Lie algebra given by structure constants on a homogeneous basis.
#[derive(Debug, Clone)]
pub struct DgLie {
    names: Vec<String>,
    degrees: Vec<i64>,
    brackets: HashMap<(usize, usize), SparseVec>,
    diff: Vec<SparseVec>,
}

pub(crate) fn koszul(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn scaled(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

fn normalized(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

impl DgLie {
    /// `brackets` lists `[x_i, x_j]` for some pairs; the other order is filled in by graded
    /// antisymmetry. `diff[i]` is `d x_i` (empty for a graded Lie algebra).
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        brackets: Vec<((usize, usize), SparseVec)>,
        diff: Vec<SparseVec>,
    ) -> Result<Self, CEError> {
        let n = degrees.len();
        if names.len() != n || (!diff.is_empty() && diff.len() != n) {
            return Err(CEError::SizeMismatch);
        }
        let diff = if diff.is_empty() { vec![SparseVec::new(); n] } else { diff.into_iter().map(normalized).collect() };
        let mut table: HashMap<(usize, usize), SparseVec> = HashMap::new();
        for ((i, j), v) in brackets {
            let v = normalized(v);
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(CEError::SizeMismatch);
            }
            if v.iter().any(|(k, _)| degrees[*k] != degrees[i] + degrees[j]) {
                return Err(CEError::Degree);
            }
            let w = scaled(&v, &-koszul(degrees[i] * degrees[j]));
            if i == j && v != w {
                return Err(CEError::Antisymmetry);
            }
            for (key, val) in [((i, j), v), ((j, i), w)] {
                match table.get(&key) {
                    Some(old) if *old != val => return Err(CEError::Antisymmetry),
                    _ => {
                        if !val.is_empty() {
                            table.insert(key, val);
                        }
                    }
                }
            }
        }
        let l = DgLie { names, degrees, brackets: table, diff };
        for i in 0..n {
            if l.diff[i].iter().any(|(k, _)| *k >= n) {
                return Err(CEError::SizeMismatch);
            }
            if l.diff[i].iter().any(|(k, _)| l.degrees[*k] != l.degrees[i] - 1) {
                return Err(CEError::Degree);
            }
        }
        for i in 0..n {
            if !l.d(&l.diff[i]).is_empty() {
                return Err(CEError::NotDifferential);
            }
        }
        if !l.has_trivial_differential() {
            for i in 0..n {
                for j in i..n {
                    let lhs = l.d(l.bracket_basis(i, j));
                    let a = l.bracket(&l.diff[i], &[(j, Rational::one())]);
                    let b = l.bracket(&[(i, Rational::one())], &l.diff[j]);
                    let rhs = vec_lincomb(&Rational::one(), &a, &koszul(l.degrees[i]), &b);
                    if lhs != rhs {
                        return Err(CEError::NotDerivation);
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn abelian(degrees: Vec<i64>) -> Self {
        let names = (0..degrees.len()).map(|i| format!("x{i}")).collect();
        DgLie { names, degrees, brackets: HashMap::new(), diff: Vec::new() }.with_zero_diff()
    }

    fn with_zero_diff(mut self) -> Self {
        self.diff = vec![SparseVec::new(); self.degrees.len()];
        self
    }

    /// The quotient of a presented graded Lie algebra by all brackets of word length `> maxlen`.
    pub fn from_presentation(pres: &Presentation, maxlen: usize) -> Result<Self, CEError> {
        let gens = pres.generators.clone();
        let alg = algebra(&gens);
        let mut tower = IdealTower::new(pres);
        let mut offsets = vec![0usize; maxlen + 2];
        let mut words = vec![Vec::new(); maxlen + 1];
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for m in 1..=maxlen {
            let basis = alg.basis(m);
            words[m] = tower.normal_words(m);
            offsets[m + 1] = offsets[m] + words[m].len();
            for &w in &words[m] {
                let b = basis.elems[w];
                names.push(format_bracket_word(&gens, b));
                degrees.push(gens.word_degree(b.leading()));
            }
        }
        let mut brackets = Vec::new();
        for a in 1..=maxlen {
            for b in a..=maxlen - a {
                let (ba, bb, bc) = (alg.basis(a), alg.basis(b), alg.basis(a + b));
                for (ia, &wa) in words[a].iter().enumerate() {
                    for (ib, &wb) in words[b].iter().enumerate() {
                        if a == b && ib < ia {
                            continue;
                        }
                        let prod = alg.bracket_basis(ba.elems[wa], bb.elems[wb]);
                        let mut v: SparseVec = prod.into_iter().map(|(e, c)| (bc.index_of(e).unwrap(), c)).collect();
                        v.sort_by_key(|e| e.0);
                        let q = tower.quotient_coords(a + b, &v);
                        let q: SparseVec = q.into_iter().map(|(k, c)| (offsets[a + b] + k, c)).collect();
                        if !q.is_empty() {
                            brackets.push(((offsets[a] + ia, offsets[b] + ib), q));
                        }
                    }
                }
            }
        }
        DgLie::new(names, degrees, brackets, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn basis_in_degree(&self, k: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        static EMPTY: SparseVec = Vec::new();
        self.brackets.get(&(i, j)).unwrap_or(&EMPTY)
    }

    /// Nonzero structure constants `[x_i, x_j]` for all ordered pairs.
    pub fn bracket_table(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.brackets.iter()
    }

    pub fn bracket(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let v = self.bracket_basis(*i, *j);
                if !v.is_empty() {
                    acc.extend(v.iter().map(|(k, c)| (*k, c * a * b)));
                }
            }
        }
        normalized(acc)
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn d(&self, x: &[(usize, Rational)]) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            acc.extend(self.diff[*i].iter().map(|(k, c)| (*k, c * a)));
        }
        normalized(acc)
    }

    pub fn has_trivial_differential(&self) -> bool {
        self.diff.iter().all(|v| v.is_empty())
    }

    pub fn is_positively_graded(&self) -> bool {
        self.degrees.iter().all(|&k| k >= 1)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Graded Jacobi on all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        let e = |i: usize| -> SparseVec { vec![(i, Rational::one())] };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b) = (self.degrees[i], self.degrees[j]);
                    let t1 = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let t2 = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let t3 = self.bracket(&e(j), &self.bracket(&e(i), &e(k)));
                    let rhs = vec_lincomb(&Rational::one(), &t2, &koszul(a * b), &t3);
                    if t1 != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Replace the differential (validated as in [`DgLie::new`]).
    pub fn with_differential(&self, diff: Vec<SparseVec>) -> Result<Self, CEError> {
        let mut brackets = Vec::new();
        for (&(i, j), v) in &self.brackets {
            if i <= j {
                brackets.push(((i, j), v.clone()));
            }
        }
        DgLie::new(self.names.clone(), self.degrees.clone(), brackets, diff)
    }
}
