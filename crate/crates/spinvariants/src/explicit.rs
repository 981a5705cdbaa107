use exactla::{Rational, SparseMatrix, SparseVec};
use num_traits::One;

use crate::perm::sign;
use crate::tensor::{add_term, joint_kernel, Slots, Tensor};
use crate::InvError;

/// `V = H_g` with its form, as an explicit basis; tensors are words in the basis indices.
#[derive(Debug, Clone)]
pub struct Explicit {
    gram: Vec<Vec<i64>>,
    odd: bool,
    epsilon: i64,
}

impl Explicit {
    /// Hyperbolic `H_g` in degree `d − 1`.
    pub fn hyperbolic(g: usize, d: i64) -> Result<Self, InvError> {
        let qm = quadmod::hyperbolic(g, d).map_err(|e| InvError::Module(e.to_string()))?;
        Ok(Explicit { gram: qm.gram().clone(), odd: (d - 1) % 2 != 0, epsilon: qm.epsilon() })
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    /// `Ω = Σ (G⁻¹)_{ab} x_a ⊗ x_b`, characterized by contracting `v ⊗ Ω` in slots `0, 1` to `v`.
    pub fn omega(&self) -> Tensor {
        let inv = quadmod::inverse(&self.gram).expect("unimodular form");
        let mut out = Tensor::new();
        for (a, row) in inv.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                add_term(&mut out, vec![a as u8, b as u8], c.clone());
            }
        }
        out
    }

    /// Generators `X_{ab} = x_a⟨x_b,·⟩ − ε x_b⟨x_a,·⟩` of the Lie algebra of the form.
    pub fn lie_generators(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut x = vec![vec![0i64; n]; n];
                for w in 0..n {
                    x[a][w] += self.gram[b][w];
                    x[b][w] -= self.epsilon * self.gram[a][w];
                }
                if x.iter().any(|r| r.iter().any(|&c| c != 0)) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Action of an endomorphism of `V` on `V^{⊗K}` as a derivation.
    pub fn act(&self, x: &[Vec<i64>], t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (key, c) in t {
            for slot in 0..key.len() {
                let src = key[slot] as usize;
                for (tgt, row) in x.iter().enumerate() {
                    if row[src] != 0 {
                        let mut k2 = key.clone();
                        k2[slot] = tgt as u8;
                        add_term(&mut out, k2, c * Rational::from_integer(row[src].into()));
                    }
                }
            }
        }
        out
    }

    /// Torus weight of each basis vector: `+1`/`−1` on the two members of a hyperbolic pair.
    fn pair_of(&self) -> Vec<(usize, i64)> {
        let n = self.dim();
        (0..n)
            .map(|a| {
                let b = (0..n).find(|&b| self.gram[a][b] != 0).expect("nondegenerate");
                (a.min(b), if a < b { 1 } else { -1 })
            })
            .collect()
    }

    /// Basis words of length `k` of torus weight zero; invariant tensors lie in their span.
    pub fn weight_zero_words(&self, k: usize) -> Vec<Vec<u8>> {
        let pairs = self.pair_of();
        self.words(k)
            .into_iter()
            .filter(|w| {
                let mut wt = vec![0i64; self.dim()];
                for &x in w {
                    let (p, s) = pairs[x as usize];
                    wt[p] += s;
                }
                wt.iter().all(|&c| c == 0)
            })
            .collect()
    }

    /// All basis words of length `k`.
    pub fn words(&self, k: usize) -> Vec<Vec<u8>> {
        let n = self.dim();
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..n).map(move |i| {
                        let mut w2 = w.clone();
                        w2.push(i as u8);
                        w2
                    })
                })
                .collect();
        }
        out
    }
}

impl Slots for Explicit {
    fn permute(&self, key: &[u8], p: &[usize]) -> (Vec<u8>, i64) {
        let mut out = vec![0u8; key.len()];
        for (j, &t) in p.iter().enumerate() {
            out[t] = key[j];
        }
        (out, if self.odd { sign(p) } else { 1 })
    }

    fn contract_front(&self, key: &[u8]) -> Option<(Vec<u8>, Rational)> {
        let c = self.gram[key[0] as usize][key[1] as usize];
        if c == 0 {
            None
        } else {
            Some((key[2..].to_vec(), Rational::from_integer(c.into())))
        }
    }
}

/// Coordinates of tensors in a fixed list of keys.
pub fn to_columns(keys: &[Vec<u8>], ts: &[Tensor]) -> SparseMatrix {
    let index: std::collections::HashMap<&Vec<u8>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let cols: Vec<SparseVec> = ts
        .iter()
        .map(|t| {
            let mut v: SparseVec = t.iter().map(|(k, c)| (index[k], c.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    SparseMatrix::from_cols(keys.len(), cols).expect("indices in range")
}

/// `(V^{⊗K})^𝔤`: joint kernel of the Lie algebra of the form, searched in weight zero.
pub fn invariants_kernel(v: &Explicit, k: usize) -> Vec<Tensor> {
    let domain: Vec<Tensor> =
        v.weight_zero_words(k).into_iter().map(|w| Tensor::from([(w, Rational::one())])).collect();
    invariants_of(v, &domain)
}

/// Invariant vectors in the span of `domain` (assumed 𝔤-stable).
pub fn invariants_of(v: &Explicit, domain: &[Tensor]) -> Vec<Tensor> {
    let gens = v.lie_generators();
    let ops: Vec<Box<dyn Fn(&Tensor) -> Tensor + '_>> =
        gens.iter().map(|x| Box::new(move |t: &Tensor| v.act(x, t)) as Box<dyn Fn(&Tensor) -> Tensor>).collect();
    joint_kernel(domain, &ops)
}

/// Rank of a family of tensors.
pub fn span_rank(ts: &[Tensor]) -> usize {
    let mut keys: Vec<Vec<u8>> = ts.iter().flat_map(|t| t.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    exactla::rank(&to_columns(&keys, ts))
}
