use std::collections::{BTreeMap, HashMap};

use exactla::{Rational, SparseMatrix, SparseVec};
use num_traits::{One, Zero};

use crate::matching::{all_matchings, Matchings};
use crate::perm::{embed, rotate_first_to_end, right_normed, GroupAlgebra, Perm};
use crate::tensor::{add, add_term, apply, contract, joint_kernel, permute, scale, Slots, Tensor};
use crate::InvError;

/// Degree of `s𝔤(i)`: `(i − 2)(d − 1) + 1`.
pub fn suspended_degree(i: usize, d: i64) -> i64 {
    (i as i64 - 2) * (d - 1) + 1
}

/// Conditions cutting `𝔤(i) ⊂ V^{⊗i}`: the tail is a Lie element (Dynkin eigenvalue `i − 1`)
/// and the tensor is invariant under moving the first slot to the end.
pub fn g_conditions(i: usize) -> Vec<GroupAlgebra> {
    let minus_one = -Rational::one();
    let lie = right_normed(i - 1).embed(1, i).add(&GroupAlgebra::identity(i).scale(&Rational::from_integer((1 - i as i64).into())));
    let cyc = GroupAlgebra::from_perm(rotate_first_to_end(i)).add(&GroupAlgebra::identity(i).scale(&minus_one));
    vec![lie, cyc]
}

/// `(1 ⊗ θ_x) y` for `x ⊗ y` occupying the first `i + j` slots: the derivation `θ_x`,
/// `θ_x(v) = ⟨v, x₁⟩ x₂…x_i`, applied to the Lie tail of `y`.
pub fn derive_tail<S: Slots + ?Sized>(s: &S, t: &Tensor, i: usize, j: usize, odd: bool) -> Tensor {
    let mut out = Tensor::new();
    let Some(k) = t.keys().next().map(|w| w.len()) else { return out };
    for pos in 2..=j {
        let mut p: Perm = (0..k).collect();
        for (x, slot) in p.iter_mut().enumerate().take(i) {
            *slot = pos + x;
        }
        for tt in 0..j {
            p[i + tt] = if tt < pos { tt } else { tt + i };
        }
        let moved = permute(s, t, &p);
        out = add(&out, &contract(s, &moved, pos - 1, pos));
    }
    if odd && i % 2 == 1 {
        scale(&out, &-Rational::one())
    } else {
        out
    }
}

/// `[x, y]` for `x ⊗ y` occupying the first `i + j` slots, as the tensor of the commutator of
/// the derivations `θ_x` and `θ_y`.
pub fn bracket_front<S: Slots + ?Sized>(s: &S, t: &Tensor, i: usize, j: usize, odd: bool) -> Tensor {
    let Some(k) = t.keys().next().map(|w| w.len()) else { return Tensor::new() };
    let sx = if odd && i % 2 == 1 { -Rational::one() } else { Rational::one() };
    let sy = if odd && j % 2 == 1 { -Rational::one() } else { Rational::one() };
    // plain Koszul swap of the two blocks
    let swap: Perm = (0..k).map(|a| if a < i { a + j } else if a < i + j { a - i } else { a }).collect();
    let swapped = permute(s, t, &swap);
    add(&scale(&derive_tail(s, t, i, j, odd), &sx), &scale(&derive_tail(s, &swapped, j, i, odd), &-sy))
}

/// Slot permutation and Koszul correction (from `V`-degrees to suspended degrees) for reordering
/// blocks of the given lengths; `order[n]` is the old index of the block placed `n`-th.
pub fn block_permutation(lengths: &[usize], order: &[usize], odd: bool) -> (Perm, i64) {
    let k: usize = lengths.iter().sum();
    let mut old_off = vec![0; lengths.len()];
    for b in 1..lengths.len() {
        old_off[b] = old_off[b - 1] + lengths[b - 1];
    }
    let mut p = vec![0; k];
    let mut off = 0;
    for &b in order {
        for t in 0..lengths[b] {
            p[old_off[b] + t] = off + t;
        }
        off += lengths[b];
    }
    let mut sg = 1;
    let pos: Vec<usize> = {
        let mut pos = vec![0; order.len()];
        for (n, &b) in order.iter().enumerate() {
            pos[b] = n;
        }
        pos
    };
    for u in 0..lengths.len() {
        for v in u + 1..lengths.len() {
            if pos[u] > pos[v] {
                let parity = if odd { (lengths[u] + lengths[v]) % 2 } else { 0 };
                if (parity + 1) % 2 == 1 {
                    sg = -sg;
                }
            }
        }
    }
    (p, sg)
}

/// A summand `Λ^I(s𝔤)` of the CE chains, `I` a sorted list of word lengths.
#[derive(Debug, Clone)]
pub struct Component {
    pub lengths: Vec<usize>,
    pub degree: i64,
    orbits: Vec<Vec<(Vec<u8>, i64)>>,
    orbit_of: HashMap<Vec<u8>, (usize, i64)>,
    pub basis: Vec<Tensor>,
}

impl Component {
    pub fn slots(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Average over the symmetry group (rotations inside blocks, signed swaps of equal blocks),
    /// as coordinates on the orbits.
    pub fn orbit_coordinates(&self, t: &Tensor) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.orbits.len()];
        for (k, v) in t {
            if let Some(&(o, s)) = self.orbit_of.get(k) {
                c[o] += v * Rational::from_integer(s.into());
            }
        }
        for (o, x) in c.iter_mut().enumerate() {
            *x /= Rational::from_integer((self.orbits[o].len() as i64).into());
        }
        c
    }

    pub fn symmetrize(&self, t: &Tensor) -> Tensor {
        let c = self.orbit_coordinates(t);
        let mut out = Tensor::new();
        for (o, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, s) in &self.orbits[o] {
                add_term(&mut out, k.clone(), x * Rational::from_integer((*s).into()));
            }
        }
        out
    }
}

fn symmetry_generators(lengths: &[usize], odd: bool) -> Vec<(Perm, i64)> {
    let k: usize = lengths.iter().sum();
    let mut gens = Vec::new();
    let mut off = 0;
    for &i in lengths {
        gens.push((embed(&rotate_first_to_end(i), off, k), 1));
        off += i;
    }
    for b in 1..lengths.len() {
        if lengths[b] == lengths[b - 1] {
            let mut order: Vec<usize> = (0..lengths.len()).collect();
            order.swap(b - 1, b);
            gens.push(block_permutation(lengths, &order, odd));
        }
    }
    gens
}

/// Orbits of signed permutations on matchings; orbits on which some element would have to equal
/// its own negative are dropped.
fn signed_orbits<S: Slots>(s: &S, keys: &[Vec<u8>], gens: &[(Perm, i64)]) -> Vec<Vec<(Vec<u8>, i64)>> {
    let mut seen: HashMap<Vec<u8>, i64> = HashMap::new();
    let mut out = Vec::new();
    for start in keys {
        if seen.contains_key(start) {
            continue;
        }
        let mut orbit = vec![(start.clone(), 1i64)];
        let mut local: HashMap<Vec<u8>, i64> = HashMap::from([(start.clone(), 1)]);
        let mut consistent = true;
        let mut n = 0;
        while n < orbit.len() {
            let (k, sg) = orbit[n].clone();
            for (p, extra) in gens {
                let (k2, s2) = s.permute(&k, p);
                let s2 = sg * s2 * extra;
                match local.get(&k2) {
                    Some(&old) => {
                        if old != s2 {
                            consistent = false;
                        }
                    }
                    None => {
                        local.insert(k2.clone(), s2);
                        orbit.push((k2, s2));
                    }
                }
            }
            n += 1;
        }
        for (k, sg) in &orbit {
            seen.insert(k.clone(), *sg);
        }
        if consistent {
            out.push(orbit);
        }
    }
    out
}

/// Invariant part of `Λ^I(s𝔤_g)` in the matching model.
pub fn component(lengths: &[usize], d: i64, m: &Matchings) -> Result<Component, InvError> {
    let odd = (d - 1) % 2 != 0;
    let degree: i64 = lengths.iter().map(|&i| suspended_degree(i, d)).sum();
    let k: usize = lengths.iter().sum();
    let empty = Component {
        lengths: lengths.to_vec(),
        degree,
        orbits: Vec::new(),
        orbit_of: HashMap::new(),
        basis: Vec::new(),
    };
    if k % 2 == 1 {
        return Ok(empty);
    }
    let keys = all_matchings(k)?;
    let orbits = signed_orbits(m, &keys, &symmetry_generators(lengths, odd));
    let orbit_of: HashMap<Vec<u8>, (usize, i64)> =
        orbits.iter().enumerate().flat_map(|(o, orb)| orb.iter().map(move |(key, s)| (key.clone(), (o, *s)))).collect();
    let domain: Vec<Tensor> = orbits
        .iter()
        .map(|orb| orb.iter().map(|(key, s)| (key.clone(), Rational::from_integer((*s).into()))).collect())
        .collect();
    let mut ops: Vec<GroupAlgebra> = Vec::new();
    let mut off = 0;
    for &i in lengths {
        let lie = &g_conditions(i)[0];
        ops.push(lie.embed(off, k));
        off += i;
    }
    let fns: Vec<Box<dyn Fn(&Tensor) -> Tensor + '_>> =
        ops.iter().map(|x| Box::new(move |t: &Tensor| apply(m, t, x)) as Box<dyn Fn(&Tensor) -> Tensor>).collect();
    let basis = if ops.is_empty() { domain } else { joint_kernel(&domain, &fns) };
    Ok(Component { lengths: lengths.to_vec(), degree, orbits, orbit_of, basis })
}

/// Sorted word-length lists `I` (parts ≥ 3) with `Σ (i−2)(d−1)+1 ≤ maxdeg`.
pub fn multisets(d: i64, maxdeg: i64) -> Vec<Vec<usize>> {
    fn rec(min: usize, left: i64, d: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        let mut i = min;
        while suspended_degree(i, d) <= left {
            cur.push(i);
            rec(i, left - suspended_degree(i, d), d, cur, out);
            cur.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    rec(3, maxdeg, d, &mut Vec::new(), &mut out);
    out
}

/// CE differential of an invariant chain in `Λ^I`, as tensors in the target summands.
pub fn ce_differential<S: Slots>(s: &S, lengths: &[usize], t: &Tensor, d: i64) -> BTreeMap<Vec<usize>, Tensor> {
    let odd = (d - 1) % 2 != 0;
    let p = lengths.len();
    let mut out: BTreeMap<Vec<usize>, Tensor> = BTreeMap::new();
    for a in 0..p {
        for b in a + 1..p {
            let mut order = vec![a, b];
            order.extend((0..p).filter(|&c| c != a && c != b));
            let (perm, sg) = block_permutation(lengths, &order, odd);
            let moved = scale(&permute(s, t, &perm), &Rational::from_integer(sg.into()));
            let (ia, ib) = (lengths[a], lengths[b]);
            let mut br = bracket_front(s, &moved, ia, ib, odd);
            if odd && ia % 2 == 1 {
                br = scale(&br, &-Rational::one());
            }
            let merged = ia + ib - 2;
            let rest: Vec<usize> = order[2..].iter().map(|&c| lengths[c]).collect();
            let mut new_lengths = vec![merged];
            new_lengths.extend(&rest);
            let pos = rest.iter().position(|&r| r >= merged).unwrap_or(rest.len());
            let mut order2: Vec<usize> = (1..=pos).collect();
            order2.push(0);
            order2.extend(pos + 1..new_lengths.len());
            let (perm2, sg2) = block_permutation(&new_lengths, &order2, odd);
            let placed = scale(&permute(s, &br, &perm2), &Rational::from_integer(sg2.into()));
            let mut target: Vec<usize> = rest.clone();
            target.insert(pos, merged);
            let e = out.entry(target).or_default();
            *e = add(e, &placed);
        }
    }
    out.retain(|_, t| !t.is_empty());
    out
}

/// Invariant CE chains of `𝔤_g` up to a total degree, with homology.
#[derive(Debug, Clone)]
pub struct InvariantComplex {
    pub d: i64,
    pub g: usize,
    pub maxdeg: i64,
    pub components: Vec<Component>,
    pub chain_dims: BTreeMap<i64, usize>,
    pub ranks: BTreeMap<i64, usize>,
    pub homology_dims: BTreeMap<i64, usize>,
}

/// Largest even slot count among summands of degree `≤ maxdeg`.
pub fn max_slots(d: i64, maxdeg: i64) -> usize {
    multisets(d, maxdeg).iter().map(|l| l.iter().sum::<usize>()).filter(|k| k % 2 == 0).max().unwrap_or(0)
}

/// Smallest genus for which the matching model is faithful up to degree `maxdeg` (including the
/// differential leaving degree `maxdeg + 1`).
pub fn min_stable_genus(d: i64, maxdeg: i64) -> usize {
    let k = max_slots(d, maxdeg + 1);
    if d % 2 == 0 {
        k / 2 + 1
    } else {
        (k / 2).max(1)
    }
}

pub fn invariant_ce_complex(d: i64, g: usize, maxdeg: i64) -> Result<InvariantComplex, InvError> {
    if d < 3 {
        return Err(InvError::Dimension(d));
    }
    let need = min_stable_genus(d, maxdeg);
    if g < need {
        return Err(InvError::UnstableRange { g, needed: need });
    }
    let m = Matchings::new(g, d);
    let mut components = Vec::new();
    for lengths in multisets(d, maxdeg + 1) {
        components.push(component(&lengths, d, &m)?);
    }
    let index: HashMap<Vec<usize>, usize> = components.iter().enumerate().map(|(n, c)| (c.lengths.clone(), n)).collect();
    let mut chain_dims: BTreeMap<i64, usize> = BTreeMap::new();
    for c in &components {
        *chain_dims.entry(c.degree).or_insert(0) += c.dim();
    }
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for deg in 1..=maxdeg + 1 {
        let sources: Vec<&Component> = components.iter().filter(|c| c.degree == deg && c.dim() > 0).collect();
        let targets: Vec<&Component> = components.iter().filter(|c| c.degree == deg - 1).collect();
        let mut offsets = HashMap::new();
        let mut rows = 0;
        for t in &targets {
            offsets.insert(t.lengths.clone(), rows);
            rows += t.orbits.len();
        }
        let mut cols: Vec<SparseVec> = Vec::new();
        for src in &sources {
            for v in &src.basis {
                let mut col: SparseVec = Vec::new();
                for (tl, tens) in ce_differential(&m, &src.lengths, v, d) {
                    let tc = &components[index[&tl]];
                    let off = offsets[&tl];
                    for (o, x) in tc.orbit_coordinates(&tens).into_iter().enumerate() {
                        if !x.is_zero() {
                            col.push((off + o, x));
                        }
                    }
                }
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
        }
        let r = if cols.is_empty() || rows == 0 {
            0
        } else {
            exactla::rank(&SparseMatrix::from_cols(rows, cols).expect("indices in range"))
        };
        ranks.insert(deg, r);
    }
    let mut homology_dims = BTreeMap::new();
    for deg in 0..=maxdeg {
        let c = chain_dims.get(&deg).copied().unwrap_or(0);
        let out = ranks.get(&deg).copied().unwrap_or(0);
        let inc = ranks.get(&(deg + 1)).copied().unwrap_or(0);
        homology_dims.insert(deg, c - out - inc);
    }
    chain_dims.retain(|&deg, _| deg <= maxdeg);
    components.retain(|c| c.degree <= maxdeg);
    Ok(InvariantComplex { d, g, maxdeg, components, chain_dims, ranks, homology_dims })
}

impl InvariantComplex {
    pub fn component(&self, lengths: &[usize]) -> Option<&Component> {
        self.components.iter().find(|c| c.lengths == lengths)
    }

    /// CE differential of an invariant chain of `Λ^I`, symmetrized in each target summand.
    pub fn differential(&self, lengths: &[usize], t: &Tensor) -> BTreeMap<Vec<usize>, Tensor> {
        let m = Matchings::new(self.g, self.d);
        ce_differential(&m, lengths, t, self.d)
            .into_iter()
            .filter_map(|(tl, tens)| {
                let c = self.component(&tl)?;
                let sym = c.symmetrize(&tens);
                (!sym.is_empty()).then_some((tl, sym))
            })
            .collect()
    }

    /// Rows `(lengths, degree, dim)` of the nonzero summands.
    pub fn summary(&self) -> Vec<(Vec<usize>, i64, usize)> {
        self.components.iter().filter(|c| c.dim() > 0).map(|c| (c.lengths.clone(), c.degree, c.dim())).collect()
    }
}
