use exactla::Rational;
use num_traits::{One, Zero};

/// Permutation of tensor slots: the factor in slot `j` moves to slot `p[j]`.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `a ∘ b` (apply `b` first).
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&j| a[j]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (j, &t) in p.iter().enumerate() {
        inv[t] = j;
    }
    inv
}

pub fn sign(p: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Extend `p` acting on `[offset, offset + p.len())` to `n` slots.
pub fn embed(p: &[usize], offset: usize, n: usize) -> Perm {
    let mut out = identity(n);
    for (j, &t) in p.iter().enumerate() {
        out[offset + j] = offset + t;
    }
    out
}

/// Moves slot 0 to the end: `v₁⊗P ↦ ±P⊗v₁`.
pub fn rotate_first_to_end(n: usize) -> Perm {
    (0..n).map(|j| if j == 0 { n - 1 } else { j - 1 }).collect()
}

/// Sends slots `a, b` to `0, 1` and keeps the others in order.
pub fn front(a: usize, b: usize, n: usize) -> Perm {
    let mut out = vec![0; n];
    out[a] = 0;
    out[b] = 1;
    let mut next = 2;
    for (j, o) in out.iter_mut().enumerate() {
        if j != a && j != b {
            *o = next;
            next += 1;
        }
    }
    out
}

/// Element of `ℚ[Σ_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebra {
    pub n: usize,
    pub terms: Vec<(Perm, Rational)>,
}

impl GroupAlgebra {
    pub fn identity(n: usize) -> Self {
        GroupAlgebra { n, terms: vec![(identity(n), Rational::one())] }
    }

    pub fn from_perm(p: Perm) -> Self {
        GroupAlgebra { n: p.len(), terms: vec![(p, Rational::one())] }
    }

    pub fn add(&self, other: &GroupAlgebra) -> GroupAlgebra {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        GroupAlgebra { n: self.n, terms }.simplify()
    }

    pub fn scale(&self, c: &Rational) -> GroupAlgebra {
        GroupAlgebra { n: self.n, terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }.simplify()
    }

    pub fn mul(&self, other: &GroupAlgebra) -> GroupAlgebra {
        let mut terms = Vec::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((compose(a, b), x * y));
            }
        }
        GroupAlgebra { n: self.n, terms }.simplify()
    }

    pub fn embed(&self, offset: usize, n: usize) -> GroupAlgebra {
        GroupAlgebra { n, terms: self.terms.iter().map(|(p, c)| (embed(p, offset, n), c.clone())).collect() }
    }

    fn simplify(self) -> GroupAlgebra {
        let mut map: std::collections::BTreeMap<Perm, Rational> = std::collections::BTreeMap::new();
        for (p, c) in self.terms {
            *map.entry(p).or_insert_with(Rational::zero) += c;
        }
        GroupAlgebra { n: self.n, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

/// Right-normed bracketing `v₁⊗…⊗v_n ↦ [v₁,[v₂,…,v_n]]`; it multiplies Lie elements of
/// length `n` by `n`.
pub fn right_normed(n: usize) -> GroupAlgebra {
    let mut r = GroupAlgebra::identity(1);
    for m in 2..=n {
        let one_minus_z = GroupAlgebra::identity(m).add(&GroupAlgebra::from_perm(rotate_first_to_end(m)).scale(&-Rational::one()));
        r = one_minus_z.mul(&r.embed(1, m));
    }
    r
}
