use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::partition::{cycle_type, factorial, mobius, partitions, sign, splits, union, z, Partition};
use crate::SchurError;

/// A virtual Σ_k-representation given by its character on cycle types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymRep {
    k: usize,
    character: BTreeMap<Partition, i64>,
}

impl SymRep {
    /// Character values must be given on every partition of `k`.
    pub fn new(k: usize, character: BTreeMap<Partition, i64>) -> Result<Self, SchurError> {
        for lambda in partitions(k) {
            if !character.contains_key(&lambda) {
                return Err(SchurError::MissingClass(lambda));
            }
        }
        if character.len() != partitions(k).len() {
            return Err(SchurError::NotAPartition(k));
        }
        Ok(SymRep { k, character })
    }

    pub fn zero(k: usize) -> Self {
        SymRep { k, character: partitions(k).into_iter().map(|l| (l, 0)).collect() }
    }

    pub fn trivial(k: usize) -> Self {
        SymRep { k, character: partitions(k).into_iter().map(|l| (l, 1)).collect() }
    }

    pub fn sign(k: usize) -> Self {
        SymRep { k, character: partitions(k).into_iter().map(|l| { let s = sign(&l); (l, s) }).collect() }
    }

    /// Character of the regular representation `ℚ[Σ_k]`.
    pub fn regular(k: usize) -> Self {
        let n = factorial(k).to_i64().expect("k! fits");
        let mut out = SymRep::zero(k);
        out.character.insert(vec![1; k], n);
        out
    }

    /// Character of the permutation action of Σ_k on a vector space, given the matrices of
    /// each permutation (one-line notation → trace).
    pub fn from_traces<F: FnMut(&[usize]) -> i64>(k: usize, mut trace: F) -> Self {
        let mut out = SymRep::zero(k);
        for lambda in partitions(k) {
            let perm = representative(&lambda);
            out.character.insert(lambda, trace(&perm));
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn character(&self) -> &BTreeMap<Partition, i64> {
        &self.character
    }

    pub fn value(&self, lambda: &[usize]) -> i64 {
        self.character.get(lambda).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.value(&vec![1; self.k])
    }

    pub fn is_zero(&self) -> bool {
        self.character.values().all(|&v| v == 0)
    }

    pub fn add(&self, other: &SymRep) -> SymRep {
        assert_eq!(self.k, other.k, "arity mismatch");
        let character = self.character.iter().map(|(l, &v)| (l.clone(), v + other.value(l))).collect();
        SymRep { k: self.k, character }
    }

    pub fn sub(&self, other: &SymRep) -> SymRep {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> SymRep {
        SymRep { k: self.k, character: self.character.iter().map(|(l, &v)| (l.clone(), c * v)).collect() }
    }

    /// Pointwise product (inner tensor product).
    pub fn tensor(&self, other: &SymRep) -> SymRep {
        assert_eq!(self.k, other.k, "arity mismatch");
        let character = self.character.iter().map(|(l, &v)| (l.clone(), v * other.value(l))).collect();
        SymRep { k: self.k, character }
    }

    pub fn twist_sign(&self) -> SymRep {
        self.tensor(&SymRep::sign(self.k))
    }

    /// Scalar product `⟨χ, ψ⟩ = Σ_λ χ(λ)ψ(λ)/z_λ`.
    pub fn inner(&self, other: &SymRep) -> BigInt {
        assert_eq!(self.k, other.k, "arity mismatch");
        let kf = factorial(self.k);
        let mut acc = BigInt::zero();
        for (l, &v) in &self.character {
            acc += BigInt::from(v) * BigInt::from(other.value(l)) * (&kf / z(l));
        }
        let (q, r) = acc.div_rem(&kf);
        debug_assert!(r.is_zero(), "scalar product of characters is integral");
        q
    }

    /// Multiplicity of the trivial representation.
    pub fn multiplicity_of_trivial(&self) -> BigInt {
        self.inner(&SymRep::trivial(self.k))
    }

    /// Induction from `Σ_a × Σ_b` to `Σ_{a+b}` of an outer tensor product.
    pub fn induce_product(&self, other: &SymRep) -> SymRep {
        let (a, b) = (self.k, other.k);
        let mut out = SymRep::zero(a + b);
        for lambda in partitions(a + b) {
            let zl = z(&lambda);
            let mut acc = BigInt::zero();
            for (mu, nu) in splits(&lambda, a) {
                let w = &zl / (z(&mu) * z(&nu));
                acc += w * BigInt::from(self.value(&mu)) * BigInt::from(other.value(&nu));
            }
            out.character.insert(lambda, acc.to_i64().expect("character fits in i64"));
        }
        out
    }

    /// Restriction to `Σ_{k-1}`.
    pub fn restrict(&self) -> SymRep {
        assert!(self.k >= 1);
        let mut out = SymRep::zero(self.k - 1);
        for lambda in partitions(self.k - 1) {
            let v = self.value(&union(&lambda, &[1]));
            out.character.insert(lambda, v);
        }
        out
    }

    /// Comma-separated table `partition,value` with parts joined by `.`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("partition,value\n");
        for lambda in partitions(self.k) {
            let parts: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "{},{}", parts.join("."), self.value(&lambda));
        }
        s
    }
}

/// A permutation in one-line notation with cycle type `λ`.
pub fn representative(lambda: &[usize]) -> Vec<usize> {
    let k: usize = lambda.iter().sum();
    let mut perm = vec![0; k];
    let mut start = 0;
    for &p in lambda {
        for j in 0..p {
            perm[start + j] = start + (j + 1) % p;
        }
        start += p;
    }
    debug_assert_eq!(cycle_type(&perm), lambda);
    perm
}

/// Character of the Lie representation `𝓛ie(k)`.
pub fn lie_rep(k: usize) -> SymRep {
    assert!(k >= 1, "Lie(k) needs k ≥ 1");
    let mut out = SymRep::zero(k);
    for dd in 1..=k {
        if k % dd != 0 {
            continue;
        }
        let mu = mobius(dd);
        if mu == 0 {
            continue;
        }
        let m = k / dd;
        let v = BigInt::from(mu) * factorial(m - 1) * BigInt::from(dd).pow((m - 1) as u32);
        out.character.insert(vec![dd; m], v.to_i64().expect("character fits in i64"));
    }
    out
}

/// `Ind_{Σ_{k−1}}^{Σ_k} 𝓛ie(k−1)`.
pub fn induced_lie(k: usize) -> SymRep {
    assert!(k >= 2);
    lie_rep(k - 1).induce_product(&SymRep::trivial(1))
}

/// Character of `𝒰(k) = ker(Ind 𝓛ie(k−1) → 𝓛ie(k))`.
pub fn u_rep(k: usize) -> SymRep {
    assert!(k >= 2, "U(k) needs k ≥ 2");
    induced_lie(k).sub(&lie_rep(k))
}

/// `𝒰̃(k)`: `𝒰(k)` twisted by the sign when `d` is even, and zero for `k < 3`.
pub fn u_tilde(k: usize, d: i64) -> SymRep {
    if k < 3 {
        return SymRep::zero(k);
    }
    let u = u_rep(k);
    if d % 2 == 0 {
        u.twist_sign()
    } else {
        u
    }
}

/// Internal degree of `𝒰̃(k)`.
pub fn u_tilde_degree(k: usize, d: i64) -> i64 {
    (k as i64 - 2) * (d - 1)
}

/// `dim W ⊗_{Σ_k} V^{⊗k}` for `dim V = n`; with `odd` the permutation action on
/// `V^{⊗k}` carries the Koszul sign.
pub fn schur_dim(w: &SymRep, n: usize, odd: bool) -> BigInt {
    let kf = factorial(w.k);
    let mut acc = BigInt::zero();
    for (lambda, &v) in &w.character {
        if v == 0 {
            continue;
        }
        let s = if odd { sign(lambda) } else { 1 };
        acc += BigInt::from(v * s) * BigInt::from(n).pow(lambda.len() as u32) * (&kf / z(lambda));
    }
    let (q, r) = acc.div_rem(&kf);
    debug_assert!(r.is_zero());
    q
}

/// Dimension of the word-length-`k` part of `Der⁺_ω 𝕃(V)` for `V` of rank `n` in degree `d − 1`.
pub fn der_omega_dim(k: usize, d: i64, n: usize) -> BigInt {
    schur_dim(&u_tilde(k, d), n, false)
}

/// Graded family of Σ_k-representations indexed by (arity, degree).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedSchurFunctor {
    parts: BTreeMap<(usize, i64), SymRep>,
}

impl GradedSchurFunctor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: i64, rep: SymRep) {
        if rep.is_zero() {
            return;
        }
        let key = (rep.arity(), degree);
        let cur = match self.parts.remove(&key) {
            Some(r) => r.add(&rep),
            None => rep,
        };
        if !cur.is_zero() {
            self.parts.insert(key, cur);
        }
    }

    pub fn get(&self, k: usize, degree: i64) -> Option<&SymRep> {
        self.parts.get(&(k, degree))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, i64), &SymRep)> {
        self.parts.iter()
    }

    /// Components of arity `k`, keyed by degree.
    pub fn arity(&self, k: usize) -> BTreeMap<i64, &SymRep> {
        self.parts.range((k, i64::MIN)..=(k, i64::MAX)).map(|(&(_, deg), r)| (deg, r)).collect()
    }

    pub fn lowest_degree(&self, k: usize) -> Option<i64> {
        self.arity(k).keys().next().copied()
    }

    /// Graded dimension of `F(V) = ⊕ F(k) ⊗_{Σ_k} V^{⊗k}` for `V` ungraded of dimension `n`.
    pub fn evaluate(&self, n: usize) -> BTreeMap<i64, BigInt> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(_, deg), r) in &self.parts {
            let v = schur_dim(r, n, false);
            if !v.is_zero() {
                *out.entry(deg).or_default() += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("arity,degree,partition,value\n");
        for (&(k, deg), r) in &self.parts {
            for lambda in partitions(k) {
                let parts: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(s, "{},{},{},{}", k, deg, parts.join("."), r.value(&lambda));
            }
        }
        s
    }
}

/// `𝒰̃` as a graded Schur functor in arities `3..=kmax`.
pub fn u_tilde_functor(d: i64, kmax: usize) -> GradedSchurFunctor {
    let mut f = GradedSchurFunctor::new();
    for k in 3..=kmax {
        f.insert(u_tilde_degree(k, d), u_tilde(k, d));
    }
    f
}

type PSum = BTreeMap<(i64, Partition), exactla::Rational>;

fn ch(w: &SymRep) -> BTreeMap<Partition, exactla::Rational> {
    w.character
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|(l, &v)| (l.clone(), exactla::Rational::new(BigInt::from(v), z(l))))
        .collect()
}

fn psum_mul(a: &PSum, b: &PSum, kmax: usize) -> PSum {
    let mut out = PSum::new();
    for ((da, la), ca) in a {
        let ka: usize = la.iter().sum();
        for ((db, lb), cb) in b {
            let kb: usize = lb.iter().sum();
            if ka + kb > kmax {
                continue;
            }
            let key = (da + db, union(la, lb));
            let e = out.entry(key).or_insert_with(exactla::Rational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `𝒞 = Λ∘𝒰̃`: the graded-symmetric algebra on `s𝒰̃`, computed in the power-sum basis
/// up to arity `kmax`.
pub fn ce_functor(d: i64, kmax: usize) -> GradedSchurFunctor {
    // log of the graded-symmetric algebra: Σ_m (1/m) Σ_i ±t^{m e_i} p_m∘ch(𝒰̃(i))
    let mut log = PSum::new();
    for i in 3..=kmax {
        let e = u_tilde_degree(i, d) + 1;
        let c = ch(&u_tilde(i, d));
        for m in 1..=kmax / i {
            let sgn = if (m as i64 - 1) * e % 2 == 0 { 1 } else { -1 };
            let w = exactla::Rational::new(BigInt::from(sgn), BigInt::from(m));
            for (lambda, v) in &c {
                let stretched: Partition = lambda.iter().map(|p| p * m).collect();
                let entry = log.entry((m as i64 * e, stretched)).or_insert_with(exactla::Rational::zero);
                *entry += &w * v;
            }
        }
    }
    log.retain(|_, c| !c.is_zero());
    let mut total = PSum::new();
    total.insert((0, Vec::new()), exactla::Rational::one());
    let mut power = total.clone();
    // every term of the log has arity ≥ 3
    for r in 1..=kmax / 3 {
        power = psum_mul(&power, &log, kmax);
        let inv = exactla::Rational::new(BigInt::one(), BigInt::from(r));
        for c in power.values_mut() {
            *c *= &inv;
        }
        for (key, c) in &power {
            let e = total.entry(key.clone()).or_insert_with(exactla::Rational::zero);
            *e += c;
        }
    }
    let mut chars: BTreeMap<(usize, i64), BTreeMap<Partition, i64>> = BTreeMap::new();
    for ((deg, lambda), c) in total {
        if c.is_zero() {
            continue;
        }
        let v = c * exactla::Rational::from_integer(z(&lambda));
        assert!(v.is_integer(), "non-integral character value");
        let k: usize = lambda.iter().sum();
        let v = v.to_integer().to_i64().expect("character fits in i64");
        chars.entry((k, deg)).or_default().insert(lambda, v);
    }
    let mut f = GradedSchurFunctor::new();
    for ((k, deg), mut ch) in chars {
        for lambda in partitions(k) {
            ch.entry(lambda).or_insert(0);
        }
        f.insert(deg, SymRep { k, character: ch });
    }
    f
}

/// Degree table of `𝒞(k)`.
pub fn ce_schur_dims(k: usize, d: i64) -> BTreeMap<i64, SymRep> {
    ce_functor(d, k).arity(k).into_iter().map(|(deg, r)| (deg, r.clone())).collect()
}

/// `dim 𝒞(k)` summed over degrees: `Σ_r (1/r!) Σ k!/∏ i_j! ∏ (i_j − 2)!` over compositions of
/// `k` into `r` parts `≥ 3`.
pub fn ce_total_dim(k: usize) -> BigInt {
    let mut out = exactla::Rational::zero();
    compositions(k, &mut Vec::new(), &mut |parts| {
        let mut num = factorial(k);
        let mut den = factorial(parts.len());
        for &i in parts {
            num *= factorial(i - 2);
            den *= factorial(i);
        }
        out += exactla::Rational::new(num, den);
    });
    assert!(out.is_integer());
    out.to_integer()
}

fn compositions(rest: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if rest == 0 {
        f(cur);
        return;
    }
    for i in 3..=rest {
        cur.push(i);
        compositions(rest - i, cur, f);
        cur.pop();
    }
}
