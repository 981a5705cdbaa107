use std::collections::HashMap;
use std::sync::Arc;

use cechains::DgLie;
use dercomplex::Derivation;
use exactla::{Rational, SparseMatrix, SparseVec};
use gradedlie::{algebra, bracket, format_bracket_word, BracketWord, GeneratorSet, IdealTower, LieElement, Presentation};
use num_traits::{One, Zero};

use crate::complex::ChainComplex;
use crate::contraction::Contraction;
use crate::split::contraction_along;
use crate::HplError;

/// `Σ c [v_j, v_k]` in the generators.
pub type Quadratic = Vec<((usize, usize), Rational)>;

fn quadratic_element(gens: &Arc<GeneratorSet>, q: &Quadratic) -> Result<LieElement, HplError> {
    let mut acc = LieElement::zero(gens);
    for ((j, k), c) in q {
        let b = bracket(&LieElement::generator(gens, *j), &LieElement::generator(gens, *k))?;
        acc = acc.add_scaled(&b, c)?;
    }
    Ok(acc)
}

/// Free graded Lie algebra with a quadratic differential, truncated by weight. Each generator
/// carries a weight; `d` must preserve it, so the truncation is a dg Lie algebra whose homology is
/// the weight-truncated homology of the untruncated model.
#[derive(Clone, Debug)]
pub struct FreeModel {
    gens: Arc<GeneratorSet>,
    weights: Vec<usize>,
    diff: Vec<Quadratic>,
    max_weight: usize,
    basis: Vec<BracketWord>,
    index: HashMap<BracketWord, usize>,
    lie: DgLie,
}

impl FreeModel {
    pub fn new(gens: Arc<GeneratorSet>, weights: Vec<usize>, diff: Vec<Quadratic>, max_weight: usize) -> Result<Self, HplError> {
        let n = gens.len();
        if weights.len() != n || diff.len() != n || weights.contains(&0) {
            return Err(HplError::Unsupported("one positive weight and one differential per generator"));
        }
        for (i, q) in diff.iter().enumerate() {
            for ((j, k), _) in q {
                if *j >= n || *k >= n {
                    return Err(HplError::Unsupported("differential refers to a missing generator"));
                }
                if weights[*j] + weights[*k] != weights[i] {
                    return Err(HplError::Unsupported("differential must preserve weight"));
                }
            }
        }
        let alg = algebra(&gens);
        let weight_of = |b: BracketWord| -> usize { b.leading().letters().iter().map(|&l| weights[l as usize]).sum() };
        let mut basis = Vec::new();
        for m in 1..=max_weight {
            basis.extend(alg.basis(m).elems.iter().copied().filter(|b| weight_of(*b) <= max_weight));
        }
        let index: HashMap<BracketWord, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let coords = |x: &LieElement| -> SparseVec {
            let mut v: SparseVec = x.terms().iter().filter_map(|(b, c)| index.get(b).map(|&i| (i, c.clone()))).collect();
            v.sort_by_key(|e| e.0);
            v
        };
        let names: Vec<String> = basis.iter().map(|b| format_bracket_word(&gens, *b)).collect();
        let degrees: Vec<i64> = basis.iter().map(|b| gens.word_degree(b.leading())).collect();
        let mut brackets = Vec::new();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                if weight_of(basis[i]) + weight_of(basis[j]) > max_weight {
                    continue;
                }
                let prod: LieElement = LieElement::from_terms(&gens, alg.bracket_basis(basis[i], basis[j]));
                let v = coords(&prod);
                if !v.is_empty() {
                    brackets.push(((i, j), v));
                }
            }
        }
        let values = diff.iter().map(|q| quadratic_element(&gens, q)).collect::<Result<Vec<_>, _>>()?;
        let delta = Derivation::new(&gens, -1, values).map_err(|_| HplError::Degree("differential"))?;
        let mut dvals = Vec::with_capacity(basis.len());
        for b in &basis {
            let img = delta.apply(&LieElement::basis(&gens, *b)).map_err(|_| HplError::Degree("differential"))?;
            dvals.push(coords(&img));
        }
        let lie = DgLie::new(names, degrees, brackets, dvals)?;
        Ok(FreeModel { gens, weights, diff, max_weight, basis, index, lie })
    }

    pub fn lie(&self) -> &DgLie {
        &self.lie
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn basis(&self) -> &[BracketWord] {
        &self.basis
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn generator_weight(&self, i: usize) -> usize {
        self.weights[i]
    }

    pub fn weight(&self, i: usize) -> usize {
        self.basis[i].leading().letters().iter().map(|&l| self.weights[l as usize]).sum()
    }

    pub fn differential(&self, i: usize) -> &Quadratic {
        &self.diff[i]
    }

    /// Index of the `i`-th generator in the basis.
    pub fn generator_index(&self, i: usize) -> usize {
        self.index[&BracketWord::Lyndon(gradedlie::Word::letter(i as u8))]
    }

    pub fn index_of(&self, b: BracketWord) -> Option<usize> {
        self.index.get(&b).copied()
    }
}

/// The model `(𝕃(x₁…x_n, r₁…r_m), d r_a = q_a)` of the quadratic Lie algebra `𝕃(x)/(q)`, both
/// truncated to weight `≤ max_weight`, with the projection `f` (`x_i ↦ x_i`, `r_a ↦ 0`).
#[derive(Clone, Debug)]
pub struct QuadraticModel {
    pub model: FreeModel,
    pub quotient: DgLie,
    /// `f` as a `dim(quotient) × dim(model)` matrix.
    pub f: SparseMatrix,
    /// Weight of each quotient basis element (its word length).
    pub quotient_weights: Vec<usize>,
}

impl QuadraticModel {
    pub fn new(n: usize, gen_degree: i64, relations: &[Quadratic], max_weight: usize) -> Result<Self, HplError> {
        let m = relations.len();
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend((1..=m).map(|a| format!("r{a}")));
        let mut degrees = vec![gen_degree; n];
        degrees.extend(std::iter::repeat(2 * gen_degree + 1).take(m));
        let gens = Arc::new(GeneratorSet::mixed(&names, &degrees)?);
        let mut weights = vec![1; n];
        weights.extend(std::iter::repeat(2).take(m));
        let mut diff = vec![Quadratic::new(); n];
        diff.extend(relations.iter().cloned());
        let model = FreeModel::new(gens, weights, diff, max_weight)?;

        let xgens = Arc::new(GeneratorSet::numbered("x", n, gen_degree)?);
        let rels = relations.iter().map(|q| quadratic_element(&xgens, q)).collect::<Result<Vec<_>, _>>()?;
        let pres = Presentation::new(xgens.clone(), rels)?;
        let quotient = DgLie::from_presentation(&pres, max_weight)?;
        let mut tower = IdealTower::new(&pres);
        let xalg = algebra(&xgens);
        let mut offsets = vec![0usize; max_weight + 2];
        let mut quotient_weights = Vec::new();
        for k in 1..=max_weight {
            let nk = tower.normal_words(k).len();
            offsets[k + 1] = offsets[k] + nk;
            quotient_weights.extend(std::iter::repeat(k).take(nk));
        }
        let mut trip = Vec::new();
        for (col, b) in model.basis().iter().enumerate() {
            let lead = b.leading();
            if lead.letters().iter().any(|&l| l as usize >= n) {
                continue;
            }
            let k = lead.len();
            let pos = xalg.basis(k).index_of(*b).expect("words in the x letters are x-basis elements");
            for (r, c) in tower.quotient_coords(k, &vec![(pos, Rational::one())]) {
                trip.push((offsets[k] + r, col, c));
            }
        }
        let f = SparseMatrix::from_triplets(quotient.dim(), model.lie().dim(), trip).expect("in range");
        Ok(QuadraticModel { model, quotient, f, quotient_weights })
    }

    /// Contraction of the model onto the quotient along `f`, built weight by weight.
    pub fn contraction(&self) -> Result<Contraction, HplError> {
        let big = ChainComplex::new(self.model.lie().degrees().to_vec(), crate::linfty::differential_matrix(self.model.lie()))?;
        let small = ChainComplex::zero(self.quotient.degrees().to_vec());
        let big_w: Vec<usize> = (0..big.dim()).map(|i| self.model.weight(i)).collect();
        contraction_by_blocks(&big, &small, &self.f, &big_w, &self.quotient_weights)
    }
}

/// `contraction_along` on each block of an extra grading preserved by `d` and `f`, assembled.
pub fn contraction_by_blocks(
    big: &ChainComplex,
    small: &ChainComplex,
    f: &SparseMatrix,
    big_label: &[usize],
    small_label: &[usize],
) -> Result<Contraction, HplError> {
    let mut labels: Vec<usize> = big_label.iter().chain(small_label).copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let (mut gt, mut ht) = (Vec::new(), Vec::new());
    for w in labels {
        let bi: Vec<usize> = (0..big.dim()).filter(|&i| big_label[i] == w).collect();
        let si: Vec<usize> = (0..small.dim()).filter(|&i| small_label[i] == w).collect();
        let sub_big = ChainComplex::new(
            bi.iter().map(|&i| big.degrees()[i]).collect(),
            crate::complex::block(big.d(), &bi, &bi),
        )?;
        let sub_small = ChainComplex::zero(si.iter().map(|&i| small.degrees()[i]).collect());
        let sub_f = crate::complex::block(f, &si, &bi);
        let c = contraction_along(&sub_big, &sub_small, &sub_f)?;
        gt.extend(c.g.entries().map(|(r, k, v)| (bi[r], si[k], v.clone())));
        ht.extend(c.h.entries().map(|(r, k, v)| (bi[r], bi[k], v.clone())));
    }
    let n = big.dim();
    let g = SparseMatrix::from_triplets(n, small.dim(), gt).expect("in range");
    let h = SparseMatrix::from_triplets(n, n, ht).expect("in range");
    let mut c = Contraction::new(big.clone(), small.clone(), f.clone(), g, h)?;
    c.normalized = true;
    Ok(c)
}

/// Basis element of `sA ⊕ Hom(V, A)`: a suspension `s a_i` or the map `v_j ↦ a_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerCell {
    Susp(usize),
    Hom { generator: usize, value: usize },
}

/// `sA ⊕ Hom(V, A)` for `A` one side of a quadratic model, truncated to derivation weight `≤ w`.
#[derive(Clone, Debug)]
pub struct DerivationLayout {
    pub cells: Vec<DerCell>,
    pub degrees: Vec<i64>,
    pub weights: Vec<i64>,
    index: HashMap<DerCell, usize>,
}

impl DerivationLayout {
    fn new(elem_deg: &[i64], elem_w: &[usize], gen_deg: &[i64], gen_w: &[usize], max: i64) -> Self {
        let mut cells = Vec::new();
        let mut degrees = Vec::new();
        let mut weights = Vec::new();
        for i in 0..elem_deg.len() {
            if elem_w[i] as i64 <= max {
                cells.push(DerCell::Susp(i));
                degrees.push(elem_deg[i] + 1);
                weights.push(elem_w[i] as i64);
            }
        }
        for j in 0..gen_deg.len() {
            for i in 0..elem_deg.len() {
                let w = elem_w[i] as i64 - gen_w[j] as i64;
                if w <= max {
                    cells.push(DerCell::Hom { generator: j, value: i });
                    degrees.push(elem_deg[i] - gen_deg[j]);
                    weights.push(w);
                }
            }
        }
        let index = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        DerivationLayout { cells, degrees, weights, index }
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn index_of(&self, c: DerCell) -> Option<usize> {
        self.index.get(&c).copied()
    }
}

/// The two derivation complexes `(sA ⊕ Hom(V, A), d_*)` for `A` the model and the quotient, the
/// contraction between them induced by a contraction of the model, and the perturbations
/// `t(sx) = ad_x`, `t(θ) = −(−1)^{|θ|} θ∘d`.
#[derive(Clone, Debug)]
pub struct DerivationPair {
    pub big_layout: DerivationLayout,
    pub small_layout: DerivationLayout,
    pub contraction: Contraction,
    pub t_big: SparseMatrix,
    pub t_small: SparseMatrix,
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl DerivationPair {
    pub fn new(qm: &QuadraticModel, base: &Contraction, max_weight: i64) -> Result<Self, HplError> {
        let model = &qm.model;
        let a = model.lie();
        let k = &qm.quotient;
        let ngen = model.gens().len();
        if max_weight + 2 > model.max_weight() as i64 {
            return Err(HplError::Unsupported("model truncation too small for the derivation weight"));
        }
        let gen_deg: Vec<i64> = (0..ngen).map(|j| model.gens().degree(j)).collect();
        let gen_w: Vec<usize> = (0..ngen).map(|j| model.generator_weight(j)).collect();
        let a_w: Vec<usize> = (0..a.dim()).map(|i| model.weight(i)).collect();
        let big_layout = DerivationLayout::new(a.degrees(), &a_w, &gen_deg, &gen_w, max_weight);
        let small_layout = DerivationLayout::new(k.degrees(), &qm.quotient_weights, &gen_deg, &gen_w, max_weight);
        let gen_in_a: Vec<SparseVec> = (0..ngen).map(|j| vec![(model.generator_index(j), Rational::one())]).collect();
        let gen_in_k: Vec<SparseVec> = gen_in_a.iter().map(|v| qm.f.mul_vec(v)).collect();

        // maps A → A' lifted to the layouts: s x ↦ sgn·s φ(x), (v_j ↦ a) ↦ (v_j ↦ φ(a))
        let lift = |src: &DerivationLayout, tgt: &DerivationLayout, phi: &SparseMatrix, susp_sign: Rational| {
            let mut trip = Vec::new();
            for (col, cell) in src.cells.iter().enumerate() {
                let img = phi.mul_vec(&vec![(
                    match cell {
                        DerCell::Susp(i) => *i,
                        DerCell::Hom { value, .. } => *value,
                    },
                    Rational::one(),
                )]);
                for (r, c) in img {
                    let (cell2, c) = match cell {
                        DerCell::Susp(_) => (DerCell::Susp(r), &c * &susp_sign),
                        DerCell::Hom { generator, .. } => (DerCell::Hom { generator: *generator, value: r }, c),
                    };
                    if let Some(row) = tgt.index_of(cell2) {
                        trip.push((row, col, c));
                    }
                }
            }
            SparseMatrix::from_triplets(tgt.dim(), src.dim(), trip).expect("in range")
        };
        let one = Rational::one();
        let d_a = crate::linfty::differential_matrix(a);
        let d_big = lift(&big_layout, &big_layout, &d_a, -one.clone());
        let f_star = lift(&big_layout, &small_layout, &qm.f, one.clone());
        let g_star = lift(&small_layout, &big_layout, &base.g, one.clone());
        let h_star = lift(&big_layout, &big_layout, &base.h, -one.clone());
        let big = ChainComplex::new(big_layout.degrees.clone(), d_big)?;
        let small = ChainComplex::zero(small_layout.degrees.clone());
        let contraction = Contraction::new(big, small, f_star, g_star, h_star)?;

        let t_big = perturbation(&big_layout, a, &gen_in_a, model)?;
        let t_small = perturbation(&small_layout, k, &gen_in_k, model)?;
        Ok(DerivationPair { big_layout, small_layout, contraction, t_big, t_small })
    }
}

/// `t(s x)(v_j) = [x, v_j]`, `t(θ)(v_j) = −(−1)^{|θ|} Σ c ([θv_a, v_b] + (−1)^{|v_a||θ|} [v_a, θv_b])`
/// for `d v_j = Σ c [v_a, v_b]`, with `v_j` standing for its image in the target algebra.
fn perturbation(layout: &DerivationLayout, lie: &DgLie, gens: &[SparseVec], model: &FreeModel) -> Result<SparseMatrix, HplError> {
    let mut trip = Vec::new();
    let ngen = gens.len();
    let push = |col: usize, j: usize, v: SparseVec, c: &Rational, trip: &mut Vec<(usize, usize, Rational)>| -> Result<(), HplError> {
        for (r, x) in v {
            let row = layout
                .index_of(DerCell::Hom { generator: j, value: r })
                .ok_or(HplError::Unsupported("perturbation leaves the truncation"))?;
            trip.push((row, col, x * c));
        }
        Ok(())
    };
    for (col, cell) in layout.cells.iter().enumerate() {
        match *cell {
            DerCell::Susp(i) => {
                for j in 0..ngen {
                    let v = lie.bracket(&[(i, Rational::one())], &gens[j]);
                    push(col, j, v, &Rational::one(), &mut trip)?;
                }
            }
            DerCell::Hom { generator, value } => {
                let deg = layout.degrees[col];
                let theta = |a: usize| -> SparseVec {
                    if a == generator {
                        vec![(value, Rational::one())]
                    } else {
                        SparseVec::new()
                    }
                };
                for j in 0..ngen {
                    let mut acc = SparseVec::new();
                    for ((a, b), c) in model.differential(j) {
                        let t1 = lie.bracket(&theta(*a), &gens[*b]);
                        let t2 = lie.bracket(&gens[*a], &theta(*b));
                        let s2 = sign(model.gens().degree(*a) * deg);
                        acc = exactla::vec_lincomb(&Rational::one(), &acc, c, &t1);
                        acc = exactla::vec_lincomb(&Rational::one(), &acc, &(c * s2), &t2);
                    }
                    if acc.iter().any(|(_, x)| !x.is_zero()) {
                        push(col, j, acc, &-sign(deg), &mut trip)?;
                    }
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(layout.dim(), layout.dim(), trip).expect("in range"))
}
