use std::collections::BTreeMap;

use exactla::Rational;
use num_traits::Zero;

use crate::word::Word;

/// Noncommutative polynomial in the generators (an element of the tensor algebra).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Word, Rational>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Rational::from_integer(1.into()))
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut t = Tensor::zero();
        if !c.is_zero() {
            t.terms.insert(w, c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: Word) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest word in the support (shortest first, then lexicographic).
    pub fn leading(&self) -> Option<(Word, &Rational)> {
        self.terms.iter().next().map(|(w, c)| (*w, c))
    }

    pub fn add_term(&mut self, w: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Tensor, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(*w, &(v * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::zero();
        t.add_scaled(self, c);
        t
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut t = Tensor::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                t.add_term(u.concat(*v), &(a * b));
            }
        }
        t
    }

    /// Graded commutator `xy − (−1)^{|x||y|} yx`, word by word; `odd` flags odd letters.
    pub fn commutator(&self, other: &Tensor, odd: &[bool]) -> Tensor {
        let mut t = Tensor::zero();
        for (u, a) in &self.terms {
            let pu = u.odd_count(odd) % 2;
            for (v, b) in &other.terms {
                let pv = v.odd_count(odd) % 2;
                let c = a * b;
                t.add_term(u.concat(*v), &c);
                if pu * pv == 1 {
                    t.add_term(v.concat(*u), &c);
                } else {
                    t.add_term(v.concat(*u), &-c);
                }
            }
        }
        t
    }

    /// Part of word length `k`.
    pub fn homogeneous_part(&self, k: usize) -> Tensor {
        Tensor { terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (*w, c.clone())).collect() }
    }

    pub(crate) fn take_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }
}
