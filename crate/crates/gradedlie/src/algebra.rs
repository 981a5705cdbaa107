use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use exactla::{Rational, SparseVec};
use num_traits::{One, Zero};

use crate::tensor::Tensor;
use crate::word::{lyndon_words, Word, MAX_LEN};
use crate::{GeneratorSet, LieError};

/// A basis element of the free graded Lie algebra: the standard bracketing of a Lyndon word, or
/// the self-bracket `[P_w, P_w]` of an odd Lyndon word `w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BracketWord {
    Lyndon(Word),
    Square(Word),
}

impl BracketWord {
    /// Minimal word of the expansion; distinct basis elements have distinct leading words.
    pub fn leading(self) -> Word {
        match self {
            BracketWord::Lyndon(w) => w,
            BracketWord::Square(w) => w.concat(w),
        }
    }

    pub fn word_length(self) -> usize {
        self.leading().len()
    }
}

impl PartialOrd for BracketWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BracketWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leading().cmp(&other.leading())
    }
}

/// Basis of one word length, with lookup by leading word.
#[derive(Debug)]
pub struct LengthBasis {
    pub k: usize,
    pub elems: Vec<BracketWord>,
    index: HashMap<BracketWord, usize>,
    by_lead: HashMap<Word, (usize, Rational)>,
}

impl LengthBasis {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, b: BracketWord) -> Option<usize> {
        self.index.get(&b).copied()
    }
}

/// Expansion and basis caches for the free Lie algebra on letters of the given parities.
pub struct FreeLie {
    odd: Vec<bool>,
    expansions: RwLock<HashMap<BracketWord, Arc<Tensor>>>,
    bases: RwLock<HashMap<usize, Arc<LengthBasis>>>,
}

static REGISTRY: OnceLock<Mutex<HashMap<Vec<bool>, Arc<FreeLie>>>> = OnceLock::new();

/// Shared cache for the algebra generated by `gens` (keyed by generator parities).
pub fn algebra(gens: &GeneratorSet) -> Arc<FreeLie> {
    let key = gens.parity_key();
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = reg.lock().unwrap();
    map.entry(key.clone()).or_insert_with(|| Arc::new(FreeLie::new(key))).clone()
}

impl FreeLie {
    fn new(odd: Vec<bool>) -> Self {
        FreeLie { odd, expansions: RwLock::new(HashMap::new()), bases: RwLock::new(HashMap::new()) }
    }

    pub fn letters(&self) -> usize {
        self.odd.len()
    }

    pub fn odd_letters(&self) -> &[bool] {
        &self.odd
    }

    pub fn is_odd_word(&self, w: Word) -> bool {
        w.odd_count(&self.odd) % 2 == 1
    }

    /// Tensor expansion of a basis element.
    pub fn expansion(&self, b: BracketWord) -> Arc<Tensor> {
        if let Some(t) = self.expansions.read().unwrap().get(&b) {
            return t.clone();
        }
        let t = match b {
            BracketWord::Lyndon(w) if w.len() == 1 => Tensor::word(w),
            BracketWord::Lyndon(w) => {
                let (u, v) = w.standard_factorization().expect("Lyndon word of length ≥ 2");
                let eu = self.expansion(BracketWord::Lyndon(u));
                let ev = self.expansion(BracketWord::Lyndon(v));
                eu.commutator(&ev, &self.odd)
            }
            BracketWord::Square(w) => {
                let e = self.expansion(BracketWord::Lyndon(w));
                e.commutator(&e, &self.odd)
            }
        };
        let t = Arc::new(t);
        self.expansions.write().unwrap().insert(b, t.clone());
        t
    }

    /// Basis of word length `k`, ordered by leading word.
    pub fn basis(&self, k: usize) -> Arc<LengthBasis> {
        if let Some(b) = self.bases.read().unwrap().get(&k) {
            return b.clone();
        }
        assert!(k <= MAX_LEN, "word length {k} exceeds {MAX_LEN}");
        let n = self.letters();
        let mut elems: Vec<BracketWord> = lyndon_words(n, k).into_iter().map(BracketWord::Lyndon).collect();
        if k % 2 == 0 && k > 0 {
            for w in lyndon_words(n, k / 2) {
                if self.is_odd_word(w) {
                    elems.push(BracketWord::Square(w));
                }
            }
        }
        elems.sort();
        let mut index = HashMap::new();
        let mut by_lead = HashMap::new();
        for (i, b) in elems.iter().enumerate() {
            let e = self.expansion(*b);
            let (w, c) = e.leading().expect("basis element expands to zero");
            assert_eq!(w, b.leading(), "leading word of {b:?} is not triangular");
            index.insert(*b, i);
            by_lead.insert(w, (i, c.clone()));
        }
        let lb = Arc::new(LengthBasis { k, elems, index, by_lead });
        self.bases.write().unwrap().insert(k, lb.clone());
        lb
    }

    /// Rewrite a Lie polynomial in the basis; fails if `t` is not a Lie polynomial.
    pub fn reduce(&self, t: Tensor) -> Result<BTreeMap<BracketWord, Rational>, LieError> {
        let mut terms = t.take_terms();
        let mut out = BTreeMap::new();
        while let Some((&w, c)) = terms.iter().next() {
            if w.is_empty() {
                return Err(LieError::NotLie);
            }
            let basis = self.basis(w.len());
            let Some((i, lead)) = basis.by_lead.get(&w) else {
                return Err(LieError::NotLie);
            };
            let b = basis.elems[*i];
            let f = c / lead;
            for (u, x) in self.expansion(b).iter() {
                let e = terms.entry(*u).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    terms.remove(u);
                }
            }
            out.insert(b, f);
        }
        Ok(out)
    }

    /// Coordinates of `[letter, basis element]`-type products are needed often; this computes
    /// the basis coordinates of the graded commutator of two basis elements.
    pub fn bracket_basis(&self, a: BracketWord, b: BracketWord) -> BTreeMap<BracketWord, Rational> {
        let t = self.expansion(a).commutator(&self.expansion(b), &self.odd);
        self.reduce(t).expect("commutator of Lie polynomials is Lie")
    }
}

/// Exact-rational linear combination of basis bracket words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<BracketWord, Rational>,
}

impl LieElement {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        LieElement { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn generator(gens: &Arc<GeneratorSet>, i: usize) -> Self {
        Self::basis(gens, BracketWord::Lyndon(Word::letter(i as u8)))
    }

    pub fn basis(gens: &Arc<GeneratorSet>, b: BracketWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, Rational::one());
        LieElement { gens: gens.clone(), terms }
    }

    pub fn from_terms(gens: &Arc<GeneratorSet>, terms: BTreeMap<BracketWord, Rational>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LieElement { gens: gens.clone(), terms }
    }

    /// Interpret a Lie polynomial; fails if `t` is not one.
    pub fn from_tensor(gens: &Arc<GeneratorSet>, t: Tensor) -> Result<Self, LieError> {
        let terms = algebra(gens).reduce(t)?;
        Ok(LieElement { gens: gens.clone(), terms })
    }

    /// Element with the given coordinates in the length-`k` basis.
    pub fn from_coords(gens: &Arc<GeneratorSet>, k: usize, v: &SparseVec) -> Self {
        let basis = algebra(gens).basis(k);
        let terms = v.iter().map(|(i, c)| (basis.elems[*i], c.clone())).collect();
        Self::from_terms(gens, terms)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> &BTreeMap<BracketWord, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: BracketWord) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    /// Word length, if homogeneous and nonzero.
    pub fn word_length(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.word_length());
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// Total degree, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|b| self.gens.word_degree(b.leading()));
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn to_tensor(&self) -> Tensor {
        let alg = algebra(&self.gens);
        let mut t = Tensor::zero();
        for (b, c) in &self.terms {
            t.add_scaled(&alg.expansion(*b), c);
        }
        t
    }

    /// Coordinates in the length-`k` basis (terms of other lengths are ignored).
    pub fn coords(&self, k: usize) -> SparseVec {
        let basis = algebra(&self.gens).basis(k);
        let mut v: SparseVec = self
            .terms
            .iter()
            .filter(|(b, _)| b.word_length() == k)
            .map(|(b, c)| (basis.index_of(*b).unwrap(), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn check(&self, other: &LieElement) -> Result<(), LieError> {
        if Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens {
            Ok(())
        } else {
            Err(LieError::MismatchedGenerators)
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement, LieError> {
        self.add_scaled(other, &-Rational::one())
    }

    /// `self + c*other`.
    pub fn add_scaled(&self, other: &LieElement, c: &Rational) -> Result<LieElement, LieError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (b, x) in &other.terms {
            let e = terms.entry(*b).or_insert_with(Rational::zero);
            *e += x * c;
            if e.is_zero() {
                terms.remove(b);
            }
        }
        Ok(LieElement { gens: self.gens.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(b, x)| (*b, x * c)).collect()
        };
        LieElement { gens: self.gens.clone(), terms }
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-Rational::one())
    }
}

/// Graded bracket, returned in normal form.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    x.check(y)?;
    let alg = algebra(&x.gens);
    let t = x.to_tensor().commutator(&y.to_tensor(), alg.odd_letters());
    let terms = alg.reduce(t).expect("bracket of Lie polynomials is Lie");
    Ok(LieElement { gens: x.gens.clone(), terms })
}

/// Basis of the word-length-`k` component.
pub fn lyndon_basis(g: &GeneratorSet, k: usize) -> Result<Vec<BracketWord>, LieError> {
    if k == 0 {
        return Err(LieError::ZeroLength);
    }
    Ok(algebra(g).basis(k).elems.clone())
}

/// Image of `x` under the Lie algebra map sending generator `i` to `images[i]`.
///
/// The images must be homogeneous of the generator degree so that signs are unchanged; they may
/// live over a different generator set.
pub fn substitute(x: &LieElement, images: &[LieElement]) -> Result<LieElement, LieError> {
    let Some(target) = images.first().map(|y| y.gens().clone()) else {
        return Ok(x.clone());
    };
    if images.len() != x.gens().len() {
        return Err(LieError::MismatchedGenerators);
    }
    let tens: Vec<Tensor> = images.iter().map(|y| y.to_tensor()).collect();
    let mut out = Tensor::zero();
    for (w, c) in x.to_tensor().iter() {
        let mut t = Tensor::word(Word::EMPTY);
        for l in w.letters() {
            t = t.mul(&tens[l as usize]);
            if t.is_zero() {
                break;
            }
        }
        out.add_scaled(&t, c);
    }
    LieElement::from_tensor(&target, out)
}
