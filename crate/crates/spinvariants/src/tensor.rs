use std::collections::BTreeMap;

use exactla::{rank_kernel, Rational, SparseMatrix, SparseVec};
use num_traits::{One, Zero};

use crate::perm::{front, GroupAlgebra};

/// Linear combination of basis tensors; a key encodes one basis element on `key.len()` slots.
pub type Tensor = BTreeMap<Vec<u8>, Rational>;

/// Basis on which slot permutations and the contraction of slots `0, 1` act by single terms.
pub trait Slots {
    /// Image of a basis element under a slot permutation, with its sign.
    fn permute(&self, key: &[u8], p: &[usize]) -> (Vec<u8>, i64);
    /// Contraction of slots `0, 1` with the form.
    fn contract_front(&self, key: &[u8]) -> Option<(Vec<u8>, Rational)>;
}

pub fn add_term(t: &mut Tensor, key: Vec<u8>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        let k = t.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
        if let Some(k) = k {
            t.remove(&k);
        }
    }
}

pub fn add(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for (k, c) in b {
        add_term(&mut out, k.clone(), c.clone());
    }
    out
}

pub fn scale(a: &Tensor, c: &Rational) -> Tensor {
    if c.is_zero() {
        return Tensor::new();
    }
    a.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

pub fn permute<S: Slots + ?Sized>(s: &S, t: &Tensor, p: &[usize]) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in t {
        let (k2, sg) = s.permute(k, p);
        add_term(&mut out, k2, c * Rational::from_integer(sg.into()));
    }
    out
}

pub fn apply<S: Slots + ?Sized>(s: &S, t: &Tensor, x: &GroupAlgebra) -> Tensor {
    let mut out = Tensor::new();
    for (p, c) in &x.terms {
        for (k, v) in t {
            let (k2, sg) = s.permute(k, p);
            add_term(&mut out, k2, v * c * Rational::from_integer(sg.into()));
        }
    }
    out
}

/// Contract slots `a` and `b` (in that order); the remaining slots keep their order.
pub fn contract<S: Slots + ?Sized>(s: &S, t: &Tensor, a: usize, b: usize) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in t {
        let p = front(a, b, k.len());
        let (k2, sg) = s.permute(k, &p);
        if let Some((k3, x)) = s.contract_front(&k2) {
            add_term(&mut out, k3, c * x * Rational::from_integer(sg.into()));
        }
    }
    out
}

pub fn is_zero(t: &Tensor) -> bool {
    t.values().all(|c| c.is_zero())
}

pub fn unit(key: Vec<u8>) -> Tensor {
    Tensor::from([(key, Rational::one())])
}

/// Joint kernel of linear operators restricted to the span of `domain` (assumed independent).
pub fn joint_kernel<F>(domain: &[Tensor], ops: &[F]) -> Vec<Tensor>
where
    F: Fn(&Tensor) -> Tensor,
{
    // one operator at a time: later kernels are computed on the shrunken space
    let mut basis = domain.to_vec();
    for op in ops {
        if basis.is_empty() {
            break;
        }
        basis = kernel_of(&basis, op);
    }
    basis
}

fn kernel_of<F>(domain: &[Tensor], op: &F) -> Vec<Tensor>
where
    F: Fn(&Tensor) -> Tensor,
{
    let images: Vec<Tensor> = domain.iter().map(op).collect();
    let mut keys: Vec<&Vec<u8>> = images.iter().flat_map(|t| t.keys()).collect();
    keys.sort();
    keys.dedup();
    let index: std::collections::HashMap<&Vec<u8>, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let cols: Vec<SparseVec> = images
        .iter()
        .map(|t| {
            let mut c: SparseVec = t.iter().map(|(k, x)| (index[k], x.clone())).collect();
            c.sort_by_key(|e| e.0);
            c
        })
        .collect();
    let m = SparseMatrix::from_cols(keys.len().max(1), cols).expect("indices in range");
    let (_, ker) = rank_kernel(&m);
    ker.into_iter()
        .map(|v| {
            let mut t = Tensor::new();
            for (j, c) in v {
                for (k, x) in &domain[j] {
                    add_term(&mut t, k.clone(), x * &c);
                }
            }
            t
        })
        .collect()
}

