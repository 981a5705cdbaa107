use std::collections::{BTreeMap, HashMap};

use exactla::{rank, Rational, SparseMatrix, SparseVec};
use num_traits::Zero;

use crate::dglie::{koszul, DgLie};
use crate::table::DimTable;
use crate::CEError;

/// A wedge `sx_{i_1} ∧ ⋯ ∧ sx_{i_p}` of suspended basis elements, sorted by (degree, index).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CEWord(pub Vec<usize>);

impl CEWord {
    pub fn unit() -> Self {
        CEWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The Chevalley–Eilenberg chains `ΛsL` truncated to word length `≤ pmax` and total degree `≤ nmax`.
///
/// Bases one step beyond the window are kept so that incoming differentials are available.
#[derive(Debug, Clone)]
pub struct CEComplex {
    lie: DgLie,
    pmax: usize,
    nmax: i64,
    bases: BTreeMap<(usize, i64), Vec<CEWord>>,
    index: HashMap<CEWord, usize>,
}

impl CEComplex {
    pub fn new(lie: &DgLie, pmax: usize, nmax: i64) -> Self {
        let mut order: Vec<usize> = (0..lie.dim()).collect();
        order.sort_by_key(|&i| (lie.degree(i), i));
        let mut bases: BTreeMap<(usize, i64), Vec<CEWord>> = BTreeMap::new();
        let sdeg: Vec<i64> = order.iter().map(|&i| lie.degree(i) + 1).collect();
        let mut cur = Vec::new();
        enumerate(&order, &sdeg, 0, pmax + 1, nmax + 1, 0, &mut cur, &mut bases);
        let mut index = HashMap::new();
        for words in bases.values_mut() {
            words.sort();
            for (k, w) in words.iter().enumerate() {
                index.insert(w.clone(), k);
            }
        }
        CEComplex { lie: lie.clone(), pmax, nmax, bases, index }
    }

    pub fn lie(&self) -> &DgLie {
        &self.lie
    }

    pub fn window(&self) -> (usize, i64) {
        (self.pmax, self.nmax)
    }

    fn sdeg(&self, i: usize) -> i64 {
        self.lie.degree(i) + 1
    }

    pub fn word_degree(&self, w: &CEWord) -> i64 {
        w.0.iter().map(|&i| self.sdeg(i)).sum()
    }

    /// Basis of `(Λ^p sL)_n`.
    pub fn basis(&self, p: usize, n: i64) -> &[CEWord] {
        self.bases.get(&(p, n)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Sort factors into normal form; `None` if an odd factor repeats.
    pub fn normalize(&self, mut f: Vec<usize>) -> Option<(Rational, CEWord)> {
        let key = |i: usize| (self.lie.degree(i), i);
        let mut parity = 0i64;
        for a in 1..f.len() {
            let mut b = a;
            while b > 0 && key(f[b - 1]) > key(f[b]) {
                parity += self.sdeg(f[b - 1]) * self.sdeg(f[b]);
                f.swap(b - 1, b);
                b -= 1;
            }
        }
        for w in f.windows(2) {
            if w[0] == w[1] && self.sdeg(w[0]).rem_euclid(2) == 1 {
                return None;
            }
        }
        Some((koszul(parity), CEWord(f)))
    }

    fn push(&self, out: &mut BTreeMap<CEWord, Rational>, f: Vec<usize>, c: Rational) {
        if let Some((s, w)) = self.normalize(f) {
            let e = out.entry(w.clone()).or_insert_with(Rational::zero);
            *e += s * c;
            if e.is_zero() {
                out.remove(&w);
            }
        }
    }

    /// `δ_0` (internal differential) part.
    pub fn delta0(&self, w: &CEWord) -> BTreeMap<CEWord, Rational> {
        let mut out = BTreeMap::new();
        let mut eps = 0i64;
        for (i, &x) in w.0.iter().enumerate() {
            for (y, c) in self.lie.d_basis(x) {
                let mut f = w.0.clone();
                f[i] = *y;
                self.push(&mut out, f, koszul(1 + eps) * c);
            }
            eps += self.sdeg(x);
        }
        out
    }

    /// `δ_1` (bracket) part.
    pub fn delta1(&self, w: &CEWord) -> BTreeMap<CEWord, Rational> {
        let mut out = BTreeMap::new();
        let f = &w.0;
        let degs: Vec<i64> = f.iter().map(|&i| self.sdeg(i)).collect();
        for j in 0..f.len() {
            for i in 0..j {
                let before_i: i64 = degs[..i].iter().sum();
                let before_j: i64 = degs[..j].iter().sum::<i64>() - degs[i];
                let eta = degs[i] * before_i + degs[j] * before_j;
                let sign = koszul(degs[i] + eta);
                let br = self.lie.bracket_basis(f[i], f[j]);
                if br.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = f.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &x)| x).collect();
                for (z, c) in br {
                    let mut g = Vec::with_capacity(rest.len() + 1);
                    g.push(*z);
                    g.extend(&rest);
                    self.push(&mut out, g, &sign * c);
                }
            }
        }
        out
    }

    fn delta_unchecked(&self, w: &CEWord) -> BTreeMap<CEWord, Rational> {
        let mut out = self.delta1(w);
        for (k, c) in self.delta0(w) {
            let e = out.entry(k.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(&k);
            }
        }
        out
    }

    /// `δ = δ_0 + δ_1` on a word inside the window.
    pub fn differential(&self, w: &CEWord) -> Result<Vec<(CEWord, Rational)>, CEError> {
        if w.len() > self.pmax || self.word_degree(w) > self.nmax {
            return Err(CEError::OutOfTruncation);
        }
        if self.normalize(w.0.clone()).map(|(_, v)| v) != Some(w.clone()) {
            return Err(CEError::NotNormal);
        }
        Ok(self.delta_unchecked(w).into_iter().collect())
    }

    /// Apply `δ` to a linear combination of words.
    pub fn apply(&self, v: &[(CEWord, Rational)]) -> Result<Vec<(CEWord, Rational)>, CEError> {
        let mut out: BTreeMap<CEWord, Rational> = BTreeMap::new();
        for (w, c) in v {
            for (k, x) in self.differential(w)? {
                let e = out.entry(k.clone()).or_insert_with(Rational::zero);
                *e += x * c;
                if e.is_zero() {
                    out.remove(&k);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    fn matrix(&self, src: (usize, i64), tgt: (usize, i64), part: impl Fn(&CEWord) -> BTreeMap<CEWord, Rational>) -> SparseMatrix {
        let rows = self.basis(tgt.0, tgt.1).len();
        let cols: Vec<SparseVec> = self
            .basis(src.0, src.1)
            .iter()
            .map(|w| {
                let mut v: SparseVec = part(w)
                    .into_iter()
                    .filter(|(k, _)| k.len() == tgt.0)
                    .map(|(k, c)| (self.index[&k], c))
                    .collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        SparseMatrix::from_cols(rows, cols).expect("indices in range")
    }

    /// `δ_1: (Λ^p sL)_n → (Λ^{p−1} sL)_{n−1}`.
    pub fn d1_matrix(&self, p: usize, n: i64) -> SparseMatrix {
        if p == 0 {
            return SparseMatrix::zeros(0, self.basis(0, n).len());
        }
        self.matrix((p, n), (p - 1, n - 1), |w| self.delta1(w))
    }

    /// `δ_0: (Λ^p sL)_n → (Λ^p sL)_{n−1}`.
    pub fn d0_matrix(&self, p: usize, n: i64) -> SparseMatrix {
        self.matrix((p, n), (p, n - 1), |w| self.delta0(w))
    }

    /// All word lengths present in total degree `n`, with their offsets in the total basis.
    pub fn total_layout(&self, n: i64) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in 0..=self.pmax + 1 {
            let len = self.basis(p, n).len();
            if len > 0 {
                out.push((p, off, len));
                off += len;
            }
        }
        out
    }

    pub fn total_dim(&self, n: i64) -> usize {
        self.total_layout(n).iter().map(|e| e.2).sum()
    }

    /// `δ: C_n → C_{n−1}` on the total complex, bases ordered by word length.
    pub fn total_matrix(&self, n: i64) -> SparseMatrix {
        let src = self.total_layout(n);
        let tgt = self.total_layout(n - 1);
        let off: HashMap<usize, usize> = tgt.iter().map(|&(p, o, _)| (p, o)).collect();
        let rows = self.total_dim(n - 1);
        let mut cols = Vec::new();
        for &(p, _, _) in &src {
            for w in self.basis(p, n) {
                let mut v: SparseVec = self
                    .delta_unchecked(w)
                    .into_iter()
                    .map(|(k, c)| (off[&k.len()] + self.index[&k], c))
                    .collect();
                v.sort_by_key(|e| e.0);
                cols.push(v);
            }
        }
        SparseMatrix::from_cols(rows, cols).expect("indices in range")
    }

    /// `dim H_n` of the total complex for `n` in the window.
    pub fn total_homology(&self, n: i64) -> Result<usize, CEError> {
        if n > self.nmax {
            return Err(CEError::OutOfTruncation);
        }
        Ok(self.total_dim(n) - rank(&self.total_matrix(n)) - rank(&self.total_matrix(n + 1)))
    }

    /// Smallest total degree with nonzero chains.
    pub fn min_degree(&self) -> i64 {
        self.bases.keys().map(|k| k.1).min().unwrap_or(0)
    }

    /// `dim H_{p,q}` for a graded Lie algebra (trivial differential), `p ≤ pmax`, `p + q ≤ nmax`.
    pub fn bigraded_homology(&self) -> Result<DimTable, CEError> {
        if !self.lie.has_trivial_differential() {
            return Err(CEError::NonTrivialDifferential);
        }
        let mut cells = BTreeMap::new();
        for (&(p, n), words) in &self.bases {
            if p > self.pmax || n > self.nmax {
                continue;
            }
            let out = rank(&self.d1_matrix(p, n));
            let inc = rank(&self.d1_matrix(p + 1, n + 1));
            cells.insert((p as i64, n - p as i64), words.len() - out - inc);
        }
        Ok(DimTable::new(self.pmax, self.nmax, cells))
    }

    /// `dim (Λ^p sL)_n` for the cells in the window.
    pub fn chain_dims(&self) -> DimTable {
        let cells = self
            .bases
            .iter()
            .filter(|((p, n), _)| *p <= self.pmax && *n <= self.nmax)
            .map(|(&(p, n), w)| ((p as i64, n - p as i64), w.len()))
            .collect();
        DimTable::new(self.pmax, self.nmax, cells)
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    order: &[usize],
    sdeg: &[i64],
    start: usize,
    pmax: usize,
    nmax: i64,
    deg: i64,
    cur: &mut Vec<usize>,
    out: &mut BTreeMap<(usize, i64), Vec<CEWord>>,
) {
    out.entry((cur.len(), deg)).or_default().push(CEWord(cur.clone()));
    if cur.len() == pmax {
        return;
    }
    for pos in start..order.len() {
        let s = sdeg[pos];
        // factors come in increasing degree, so the rest are at least as large
        if s > 0 && deg + s > nmax {
            break;
        }
        let next = if s.rem_euclid(2) == 1 { pos + 1 } else { pos };
        cur.push(order[pos]);
        enumerate(order, sdeg, next, pmax, nmax, deg + s, cur, out);
        cur.pop();
    }
}
