use exactla::Rational;
use num_traits::One;

use crate::explicit::Explicit;
use crate::perm::identity;
use crate::tensor::{add_term, permute, Slots, Tensor};
use crate::InvError;

/// A perfect matching on `K` tensor slots, decorated by the CE block of each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchingDiagram {
    /// `partner[a]` is the slot matched with `a`.
    pub partner: Vec<u8>,
    pub decoration: Vec<usize>,
    pub sign: i8,
}

impl MatchingDiagram {
    pub fn slots(&self) -> usize {
        self.partner.len()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len()).filter(|&a| (self.partner[a] as usize) > a).map(|a| (a, self.partner[a] as usize)).collect()
    }
}

/// All perfect matchings of `0..k` as partner arrays, in a fixed order.
pub fn all_matchings(k: usize) -> Result<Vec<Vec<u8>>, InvError> {
    if k % 2 != 0 {
        return Err(InvError::OddSlots(k));
    }
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            cur[a] = b as u8;
            cur[b] = a as u8;
            rec(free, cur, out);
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut vec![0; k], &mut out);
    Ok(out)
}

/// `(K−1)!!` matching diagrams with the given slot decoration.
pub fn matchings_span(k: usize, decoration: &[usize]) -> Result<Vec<MatchingDiagram>, InvError> {
    if decoration.len() != k {
        return Err(InvError::Decoration { slots: k, got: decoration.len() });
    }
    Ok(all_matchings(k)?
        .into_iter()
        .map(|partner| MatchingDiagram { partner, decoration: decoration.to_vec(), sign: 1 })
        .collect())
}

/// The invariant tensors `ω_M` (one copy of the copairing per pair of `M`), with the action of
/// slot permutations and contractions computed combinatorially. A closed loop contributes
/// `ε · 2g`.
#[derive(Debug, Clone)]
pub struct Matchings {
    loop_value: Rational,
}

impl Matchings {
    pub fn new(g: usize, d: i64) -> Self {
        let eps: i64 = if d % 2 == 0 { 1 } else { -1 };
        Matchings { loop_value: Rational::from_integer((eps * 2 * g as i64).into()) }
    }

    pub fn loop_value(&self) -> &Rational {
        &self.loop_value
    }
}

impl Slots for Matchings {
    fn permute(&self, key: &[u8], p: &[usize]) -> (Vec<u8>, i64) {
        let mut out = vec![0u8; key.len()];
        let mut sg = 1;
        for a in 0..key.len() {
            let b = key[a] as usize;
            out[p[a]] = p[b] as u8;
            if a < b && p[a] > p[b] {
                sg = -sg;
            }
        }
        (out, sg)
    }

    fn contract_front(&self, key: &[u8]) -> Option<(Vec<u8>, Rational)> {
        let k = key.len();
        let relabel = |j: u8| j - 2;
        if key[0] == 1 {
            let rest: Vec<u8> = key[2..].iter().map(|&j| relabel(j)).collect();
            return Some((rest, self.loop_value.clone()));
        }
        let (x, y) = (key[0], key[1]);
        let mut rest = vec![0u8; k - 2];
        for a in 2..k {
            let b = if a as u8 == x {
                y
            } else if a as u8 == y {
                x
            } else {
                key[a]
            };
            rest[a - 2] = relabel(b);
        }
        let c = if x < y { -Rational::one() } else { Rational::one() };
        Some((rest, c))
    }
}

/// Evaluation `ω_M ∈ V^{⊗K}` in the explicit model.
pub fn evaluate(v: &Explicit, partner: &[u8]) -> Tensor {
    let k = partner.len();
    let omega = v.omega();
    let mut t = Tensor::from([(Vec::new(), Rational::one())]);
    let mut perm = identity(k);
    let mut next = 0;
    for a in 0..k {
        let b = partner[a] as usize;
        if b > a {
            let mut t2 = Tensor::new();
            for (w, c) in &t {
                for (u, x) in &omega {
                    let mut w2 = w.clone();
                    w2.extend(u);
                    add_term(&mut t2, w2, c * x);
                }
            }
            t = t2;
            perm[next] = a;
            perm[next + 1] = b;
            next += 2;
        }
    }
    permute(v, &t, &perm)
}

/// Gram matrix of the invariant pairing between matchings, obtained by contracting
/// `ω_M ⊗ ω_N` slot by slot.
pub fn gram_matrix(diagrams: &[MatchingDiagram], g: usize, d: i64) -> Vec<Vec<Rational>> {
    let m = Matchings::new(g, d);
    diagrams
        .iter()
        .map(|a| diagrams.iter().map(|b| pairing(&m, &a.partner, &b.partner) * sign_of(a) * sign_of(b)).collect())
        .collect()
}

fn sign_of(m: &MatchingDiagram) -> Rational {
    Rational::from_integer(i64::from(m.sign).into())
}

/// `⟨ω_M, ω_N⟩`: contract slot `j` of `ω_M` with slot `j` of `ω_N` for all `j`.
pub fn pairing<S: Slots>(s: &S, a: &[u8], b: &[u8]) -> Rational {
    let k = a.len();
    let mut key: Vec<u8> = a.to_vec();
    key.extend(b.iter().map(|&j| j + k as u8));
    let mut t = Tensor::from([(key, Rational::one())]);
    for j in 0..k {
        let n = 2 * (k - j);
        t = crate::tensor::contract(s, &t, 0, n / 2);
    }
    t.remove(&Vec::new()).unwrap_or_default()
}

/// Same pairing on explicit tensors.
pub fn explicit_pairing(v: &Explicit, a: &Tensor, b: &Tensor) -> Rational {
    let k = a.keys().next().map(|w| w.len()).unwrap_or(0);
    let mut t = Tensor::new();
    for (u, x) in a {
        for (w, y) in b {
            let mut uw = u.clone();
            uw.extend(w);
            add_term(&mut t, uw, x * y);
        }
    }
    for j in 0..k {
        let n = 2 * (k - j);
        t = crate::tensor::contract(v, &t, 0, n / 2);
    }
    t.remove(&Vec::new()).unwrap_or_default()
}

/// Rank of the Gram matrix, i.e. the dimension of the span of the diagrams in `V^{⊗K}`.
pub fn gram_rank(diagrams: &[MatchingDiagram], g: usize, d: i64) -> usize {
    let gm = gram_matrix(diagrams, g, d);
    exactla::rank(&exactla::SparseMatrix::from_dense(&gm))
}
