use std::collections::BTreeMap;
use std::sync::Arc;

use exactla::{rank_kernel, Echelon, Rational, SparseMatrix, SparseVec};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{algebra, BracketWord, LieElement};
use crate::pbw::multiply_factor;
use crate::word::Word;
use crate::{GeneratorSet, LieError};

/// Generators and homogeneous relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Arc<GeneratorSet>,
    pub relations: Vec<LieElement>,
}

impl Presentation {
    pub fn new(generators: Arc<GeneratorSet>, relations: Vec<LieElement>) -> Result<Self, LieError> {
        for r in &relations {
            if r.gens() != &generators {
                return Err(LieError::MismatchedGenerators);
            }
            if !r.is_zero() && r.word_length().is_none() {
                return Err(LieError::Inhomogeneous);
            }
        }
        Ok(Presentation { generators, relations })
    }

    pub fn free(generators: Arc<GeneratorSet>) -> Self {
        Presentation { generators, relations: Vec::new() }
    }
}

/// Sparse coordinates of `ad_{x_i}: 𝕃^{m−1} → 𝕃^m` on basis elements, built lazily per column.
struct AdColumns {
    gens: Arc<GeneratorSet>,
    cache: BTreeMap<(usize, usize, usize), SparseVec>,
}

impl AdColumns {
    fn new(gens: Arc<GeneratorSet>) -> Self {
        AdColumns { gens, cache: BTreeMap::new() }
    }

    /// Coordinates of `[x_i, b_j]` where `b_j` is the `j`-th basis element of length `m − 1`.
    fn column(&mut self, i: usize, m: usize, j: usize) -> &SparseVec {
        let gens = self.gens.clone();
        self.cache.entry((i, m, j)).or_insert_with(|| {
            let alg = algebra(&gens);
            let b = alg.basis(m - 1).elems[j];
            let out = alg.bracket_basis(BracketWord::Lyndon(Word::letter(i as u8)), b);
            let basis = alg.basis(m);
            let mut v: SparseVec = out.into_iter().map(|(b, c)| (basis.index_of(b).unwrap(), c)).collect();
            v.sort_by_key(|e| e.0);
            v
        })
    }

    /// `[x_i, v]` for `v` in length `m − 1` coordinates.
    fn apply(&mut self, i: usize, m: usize, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, c) in v {
            for (r, x) in self.column(i, m, *j).clone() {
                let e = acc.entry(r).or_insert_with(Rational::zero);
                *e += c * x;
                if e.is_zero() {
                    acc.remove(&r);
                }
            }
        }
        acc.into_iter().collect()
    }
}

/// Word-length-graded pieces of the ideal generated by the relations, built by ad-closure.
pub struct IdealTower {
    pres: Presentation,
    ad: AdColumns,
    levels: Vec<Echelon>,
}

impl IdealTower {
    pub fn new(pres: &Presentation) -> Self {
        IdealTower { pres: pres.clone(), ad: AdColumns::new(pres.generators.clone()), levels: Vec::new() }
    }

    /// Echelon basis (Lyndon coordinates) of the ideal in word length `m`.
    pub fn level(&mut self, m: usize) -> &Echelon {
        while self.levels.len() < m {
            let k = self.levels.len() + 1;
            let dim = algebra(&self.pres.generators).basis(k).len();
            let mut e = Echelon::new(dim);
            for r in &self.pres.relations {
                if r.word_length() == Some(k) {
                    e.insert(&r.coords(k));
                }
            }
            if k >= 2 {
                let prev = self.levels[k - 2].basis();
                for v in &prev {
                    for i in 0..self.pres.generators.len() {
                        let w = self.ad.apply(i, k, v);
                        if !w.is_empty() {
                            e.insert(&w);
                        }
                    }
                }
            }
            self.levels.push(e);
        }
        &self.levels[m - 1]
    }

    pub fn ideal_dim(&mut self, m: usize) -> usize {
        self.level(m).rank()
    }

    pub fn quotient_dim(&mut self, m: usize) -> usize {
        let full = algebra(&self.pres.generators).basis(m).len();
        full - self.ideal_dim(m)
    }

    /// Basis words of `𝕃^m` not hit by a pivot; their images form a basis of the quotient.
    pub fn normal_words(&mut self, m: usize) -> Vec<usize> {
        let piv = self.level(m).pivots();
        let full = algebra(&self.pres.generators).basis(m).len();
        (0..full).filter(|j| !piv.contains(j)).collect()
    }

    /// Coordinates in `L^m` (indexed by position among the normal words) of the class of `v`.
    pub fn quotient_coords(&mut self, m: usize, v: &SparseVec) -> SparseVec {
        let normal = self.normal_words(m);
        let red = self.level(m).reduce(v);
        red.into_iter().map(|(c, x)| (normal.binary_search(&c).expect("remainder lies on normal words"), x)).collect()
    }

    /// Dimension of `{z ∈ L^m : [x, z] = 0 in L^{m+1}}` for the single generator `x`.
    pub fn centralizer_dim(&mut self, x: usize, m: usize) -> usize {
        let normal = self.normal_words(m);
        let mut e = self.level(m + 1).clone();
        let base = e.rank();
        for &j in &normal {
            let col = self.ad.apply(x, m + 1, &vec![(j, Rational::one())]);
            if !col.is_empty() {
                e.insert(&col);
            }
        }
        normal.len() - (e.rank() - base)
    }

    /// Central elements of `L^m`, as representatives supported on normal words.
    pub fn center_at(&mut self, m: usize) -> Vec<LieElement> {
        let gens = self.pres.generators.clone();
        let n = gens.len();
        let normal = self.normal_words(m);
        if normal.is_empty() {
            return Vec::new();
        }
        // cheap screen: a central element is killed by every ad_x; one generator usually suffices
        if (0..n).any(|x| self.centralizer_dim(x, m) == 0) {
            return Vec::new();
        }
        let rows_per = algebra(&gens).basis(m + 1).len();
        let mut cols: Vec<SparseVec> = Vec::with_capacity(normal.len());
        for &j in &normal {
            let mut col = SparseVec::new();
            for x in 0..n {
                let img = self.ad.apply(x, m + 1, &vec![(j, Rational::one())]);
                let red = self.level(m + 1).reduce(&img);
                col.extend(red.into_iter().map(|(r, c)| (x * rows_per + r, c)));
            }
            cols.push(col);
        }
        let mat = SparseMatrix::from_cols(n * rows_per, cols).expect("indices in range");
        let (_, ker) = rank_kernel(&mat);
        ker.into_iter()
            .map(|v| {
                let lifted: SparseVec = v.into_iter().map(|(k, c)| (normal[k], c)).collect();
                LieElement::from_coords(&gens, m, &lifted)
            })
            .collect()
    }
}

/// Spanning set (echelon basis) of the word-length-`m` part of the ideal generated by the relations.
pub fn ideal_basis(p: &Presentation, m: usize) -> Result<Vec<LieElement>, LieError> {
    if m == 0 {
        return Err(LieError::ZeroLength);
    }
    let mut t = IdealTower::new(p);
    let gens = p.generators.clone();
    Ok(t.level(m).basis().iter().map(|v| LieElement::from_coords(&gens, m, v)).collect())
}

/// Dimensions of the quotient per word length `1..=maxlen`.
pub fn quotient_dims(p: &Presentation, maxlen: usize) -> Vec<usize> {
    let mut t = IdealTower::new(p);
    (1..=maxlen).map(|m| t.quotient_dim(m)).collect()
}

/// Bases of the center of the quotient in each word length `1..=maxlen` (concatenated).
pub fn center_up_to(p: &Presentation, maxlen: usize) -> Vec<LieElement> {
    let mut t = IdealTower::new(p);
    (1..=maxlen).flat_map(|m| t.center_at(m)).collect()
}

/// Coefficients of `∏ (1−t^k)^{−a_k} ∏ (1+t^k)^{a_k}` (parity of `k·gen_degree`) up to `t^N`,
/// `N = dims.len()`, with `dims[k−1] = a_k`.
pub fn enveloping_series(dims: &[usize], gen_degree: i64) -> Vec<BigInt> {
    let n = dims.len();
    let mut s = vec![BigInt::zero(); n + 1];
    s[0] = BigInt::one();
    for (k, &a) in dims.iter().enumerate() {
        let k = k + 1;
        let odd = (k as i64 * gen_degree).rem_euclid(2) == 1;
        multiply_factor(&mut s, k, &BigInt::from(a), odd);
    }
    s
}

/// Coefficients of `1/(1 − n t + t²)` up to `t^N`.
pub fn one_relator_series(n: usize, len: usize) -> Vec<BigInt> {
    let mut u = vec![BigInt::zero(); len + 1];
    u[0] = BigInt::one();
    for m in 1..=len {
        let prev2 = if m >= 2 { u[m - 2].clone() } else { BigInt::zero() };
        u[m] = &u[m - 1] * BigInt::from(n) - prev2;
    }
    u
}
