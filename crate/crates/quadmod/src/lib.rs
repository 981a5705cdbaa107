//! `(−1)^d`-symmetric quadratic modules `(H, μ, q)`, the hyperbolic modules `H_g`, the canonical
//! element `ω_V ∈ 𝕃²(V)`, adjoints of isometric embeddings and automorphism tests.
//!
//! The target of `q` is modelled by the cyclic subgroup generated by `∂(ι_d)`: infinite cyclic for
//! `d` even, of order two for odd `d ∉ {3, 7}`, trivial for `d ∈ {3, 7}`.

mod intmat;

use std::sync::Arc;

use exactla::{q as qint, Rational};
use gradedlie::{bracket, BracketWord, GeneratorSet, LieElement, Word};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use intmat::{column, det, identity, inverse, inverse_unimodular, matmul, matvec, transpose, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("need d ≥ 3, got {0}")]
    BadDimension(i64),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("gram matrix is not (−1)^d-symmetric")]
    NotSymmetric,
    #[error("gram matrix is not unimodular (det = {0})")]
    Singular(i128),
    #[error("q values violate H J q(x) = ⟨x,x⟩")]
    BadQ,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("map is not an isometry")]
    NotIsometric,
    #[error("json: {0}")]
    Json(String),
}

/// Which subgroup `∂(ι_d)` generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QTarget {
    InfiniteCyclic,
    OrderTwo,
    Zero,
}

impl QTarget {
    pub fn for_dimension(d: i64) -> QTarget {
        if d % 2 == 0 {
            QTarget::InfiniteCyclic
        } else if d == 1 || d == 3 || d == 7 {
            QTarget::Zero
        } else {
            QTarget::OrderTwo
        }
    }

    /// Canonical representative of `c·∂(ι_d)`.
    pub fn reduce(self, c: i64) -> i64 {
        match self {
            QTarget::InfiniteCyclic => c,
            QTarget::OrderTwo => c.rem_euclid(2),
            QTarget::Zero => 0,
        }
    }
}

/// A `(−1)^d`-symmetric unimodular form with a quadratic refinement.
#[derive(Debug, Clone)]
pub struct QuadraticModule {
    d: i64,
    gram: IntMatrix,
    qvals: Vec<i64>,
    target: QTarget,
    gens: Arc<GeneratorSet>,
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    d: i64,
    gram: Vec<Vec<i64>>,
    q: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl QuadraticModule {
    /// Validate and build. `qvals[i]` is `q(e_i)` as a multiple of `∂(ι_d)`.
    pub fn new(d: i64, gram: IntMatrix, qvals: Vec<i64>, names: Option<Vec<String>>) -> Result<Self, QuadError> {
        if d < 3 {
            return Err(QuadError::BadDimension(d));
        }
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(QuadError::SizeMismatch { expected: n, got: gram.iter().map(|r| r.len()).max().unwrap_or(0) });
        }
        if qvals.len() != n {
            return Err(QuadError::SizeMismatch { expected: n, got: qvals.len() });
        }
        let eps = if d % 2 == 0 { 1 } else { -1 };
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != eps * gram[j][i] {
                    return Err(QuadError::NotSymmetric);
                }
            }
        }
        let dt = det(&gram);
        if dt != 1 && dt != -1 {
            return Err(QuadError::Singular(dt));
        }
        let target = QTarget::for_dimension(d);
        // H J (c ∂ι) = 2c for d even; for d odd both sides of the second Wall equation vanish
        if d % 2 == 0 && (0..n).any(|i| 2 * qvals[i] != gram[i][i]) {
            return Err(QuadError::BadQ);
        }
        let qvals: Vec<i64> = qvals.into_iter().map(|c| target.reduce(c)).collect();
        let names = names.unwrap_or_else(|| (1..=n).map(|i| format!("x{i}")).collect());
        if names.len() != n {
            return Err(QuadError::SizeMismatch { expected: n, got: names.len() });
        }
        let gens = GeneratorSet::new(&names, d - 1).map_err(|e| QuadError::Json(e.to_string()))?;
        Ok(QuadraticModule { d, gram, qvals, target, gens: Arc::new(gens) })
    }

    pub fn from_json(s: &str) -> Result<Self, QuadError> {
        let j: QuadJson = serde_json::from_str(s).map_err(|e| QuadError::Json(e.to_string()))?;
        Self::new(j.d, j.gram, j.q, j.names)
    }

    pub fn to_json(&self) -> String {
        let j = QuadJson {
            d: self.d,
            gram: self.gram.clone(),
            q: self.qvals.clone(),
            names: Some(self.gens.names().to_vec()),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn qvals(&self) -> &[i64] {
        &self.qvals
    }

    pub fn target(&self) -> QTarget {
        self.target
    }

    /// `(−1)^d`.
    pub fn epsilon(&self) -> i64 {
        if self.d % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Generators of `𝕃(V)`, one per basis vector, in degree `d − 1`.
    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let gy = matvec(&self.gram, y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Matrix of `⟨e_i^#, e_j^#⟩`, the inverse transpose of the gram matrix.
    pub fn dual_gram(&self) -> IntMatrix {
        transpose(&inverse_unimodular(&self.gram).expect("unimodular"))
    }

    /// Orthogonal sum; names of `other` are suffixed if they clash.
    pub fn orthogonal_sum(&self, other: &QuadraticModule) -> Result<QuadraticModule, QuadError> {
        if self.d != other.d {
            return Err(QuadError::BadDimension(other.d));
        }
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let mut qvals = self.qvals.clone();
        qvals.extend(&other.qvals);
        let mut names: Vec<String> = self.gens.names().to_vec();
        for nm in other.gens.names() {
            let mut cand = nm.clone();
            while names.contains(&cand) {
                cand.push('\'');
            }
            names.push(cand);
        }
        Self::new(self.d, gram, qvals, Some(names))
    }
}

/// The hyperbolic module `H_g`, basis `e_1..e_g, f_1..f_g`.
pub fn hyperbolic(g: usize, d: i64) -> Result<QuadraticModule, QuadError> {
    if g == 0 {
        return Err(QuadError::ZeroGenus);
    }
    if d < 3 {
        return Err(QuadError::BadDimension(d));
    }
    let eps = if d % 2 == 0 { 1 } else { -1 };
    let n = 2 * g;
    let mut gram = vec![vec![0; n]; n];
    for i in 0..g {
        gram[i][g + i] = 1;
        gram[g + i][i] = eps;
    }
    let names: Vec<String> = (1..=g).map(|i| format!("e{i}")).chain((1..=g).map(|i| format!("f{i}"))).collect();
    QuadraticModule::new(d, gram, vec![0; n], Some(names))
}

/// `q(x)` as a canonical multiple of `∂(ι_d)`, from the basis values by the rule
/// `q(x+y) = q(x) + q(y) + ⟨x,y⟩∂(ι_d)`.
pub fn q_eval(m: &QuadraticModule, x: &[i64]) -> Result<i64, QuadError> {
    let n = m.rank();
    if x.len() != n {
        return Err(QuadError::SizeMismatch { expected: n, got: x.len() });
    }
    let mut total: i64 = 0;
    for i in 0..n {
        let a = x[i];
        total += a * m.qvals[i] + a * (a - 1) / 2 * m.gram[i][i];
        for j in i + 1..n {
            total += a * x[j] * m.gram[i][j];
        }
    }
    Ok(m.target.reduce(total))
}

/// Square integer matrix acting on basis coordinates (column `j` is the image of `e_j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryMatrix {
    pub entries: IntMatrix,
}

impl IsometryMatrix {
    pub fn new(entries: IntMatrix) -> Self {
        IsometryMatrix { entries }
    }

    pub fn identity(n: usize) -> Self {
        IsometryMatrix { entries: identity(n) }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn compose(&self, other: &IsometryMatrix) -> IsometryMatrix {
        IsometryMatrix { entries: matmul(&self.entries, &other.entries) }
    }
}

/// Whether `m` preserves both the form and `q`.
pub fn is_automorphism(qm: &QuadraticModule, m: &IsometryMatrix) -> Result<bool, QuadError> {
    let n = qm.rank();
    if m.size() != n || m.entries.iter().any(|r| r.len() != n) {
        return Err(QuadError::SizeMismatch { expected: n, got: m.size() });
    }
    let mt = transpose(&m.entries);
    if matmul(&matmul(&mt, &qm.gram), &m.entries) != qm.gram {
        return Ok(false);
    }
    for j in 0..n {
        if q_eval(qm, &column(&m.entries, j))? != qm.qvals[j] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Wall's description for `H_g`: writing `m = [[α, β], [γ, δ]]` in `g×g` blocks, the diagonals of
/// `γᵗα` and `δᵗβ` are even (meaningful when `∂(ι_d)` has order two).
pub fn even_diagonal_condition(m: &IsometryMatrix, g: usize) -> bool {
    let blk = |r0: usize, c0: usize| -> IntMatrix {
        (0..g).map(|i| (0..g).map(|j| m.entries[r0 + i][c0 + j]).collect()).collect()
    };
    let (alpha, beta, gamma, delta) = (blk(0, 0), blk(0, g), blk(g, 0), blk(g, g));
    let ga = matmul(&transpose(&gamma), &alpha);
    let db = matmul(&transpose(&delta), &beta);
    (0..g).all(|i| ga[i][i] % 2 == 0 && db[i][i] % 2 == 0)
}

/// `ω_V ∈ 𝕃²(V)` from `2ω_V = Σ_{i,j} ⟨e_i^#, e_j^#⟩ [e_i, e_j]`.
pub fn omega_element(qm: &QuadraticModule) -> Result<LieElement, QuadError> {
    let inv = inverse(&qm.gram).ok_or(QuadError::Singular(0))?;
    let gens = qm.generators();
    let n = qm.rank();
    let mut two_omega = LieElement::zero(gens);
    for i in 0..n {
        for j in 0..n {
            // ⟨e_i^#, e_j^#⟩ = (G^{-1})_{ji}
            let c = inv[j][i].clone();
            if c.is_zero() {
                continue;
            }
            let b = bracket(&LieElement::generator(gens, i), &LieElement::generator(gens, j)).expect("same algebra");
            two_omega = two_omega.add_scaled(&b, &c).expect("same algebra");
        }
    }
    Ok(two_omega.scale(&Rational::new(1.into(), 2.into())))
}

/// The pairing `⟨[x,y], a∧b⟩ = ⟨x,a⟩⟨y,b⟩ + ε⟨y,a⟩⟨x,b⟩` of `𝕃²(V)` with `Λ²(V)`.
pub fn pair_l2(qm: &QuadraticModule, l2: &LieElement, a: &[i64], b: &[i64]) -> Rational {
    let n = qm.rank();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| (k == i) as i64).collect() };
    let eps = qm.epsilon();
    let mut total = Rational::zero();
    for (bw, c) in l2.terms() {
        let w = bw.leading();
        if w.len() != 2 {
            continue;
        }
        let (i, j) = match bw {
            BracketWord::Lyndon(w) => (w.get(0) as usize, w.get(1) as usize),
            BracketWord::Square(w) => (w.get(0) as usize, w.get(0) as usize),
        };
        let (xi, xj) = (unit(i), unit(j));
        let v = qm.form(&xi, a) * qm.form(&xj, b) + eps * qm.form(&xj, a) * qm.form(&xi, b);
        total += c * qint(v);
    }
    total
}

/// Adjoint `f^!` of an isometric embedding `f: V → W` and the projector `1 − f f^!` onto `V^⊥`.
///
/// `f` has `rank W` rows and `rank V` columns.
pub fn adjoint_and_complement(
    f: &IntMatrix,
    qv: &QuadraticModule,
    qw: &QuadraticModule,
) -> Result<(IntMatrix, IntMatrix), QuadError> {
    let (nv, nw) = (qv.rank(), qw.rank());
    if f.len() != nw || f.iter().any(|r| r.len() != nv) {
        return Err(QuadError::SizeMismatch { expected: nw, got: f.len() });
    }
    if matmul(&matmul(&transpose(f), &qw.gram), f) != qv.gram {
        return Err(QuadError::NotIsometric);
    }
    // ⟨f^! x, y⟩_V = ⟨x, f y⟩_W  ⇔  (f^!)ᵀ G_V = G_W f
    let gv_inv = inverse_unimodular(&qv.gram).ok_or(QuadError::Singular(0))?;
    let adj = transpose(&matmul(&matmul(&qw.gram, f), &gv_inv));
    let ffa = matmul(f, &adj);
    let proj: IntMatrix = (0..nw).map(|i| (0..nw).map(|j| (i == j) as i64 - ffa[i][j]).collect()).collect();
    Ok((adj, proj))
}

/// Standard inclusion `H_g → H_{g+k}` (`e_i ↦ e_i`, `f_i ↦ f_i`).
pub fn standard_inclusion(g: usize, g2: usize) -> IntMatrix {
    let mut f = vec![vec![0; 2 * g]; 2 * g2];
    for i in 0..g {
        f[i][i] = 1;
        f[g2 + i][g + i] = 1;
    }
    f
}

/// Images of the generators of `𝕃(V)` under the linear map `m: V → W` (columns = images).
pub fn generator_images(m: &IntMatrix, target: &Arc<GeneratorSet>) -> Vec<LieElement> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    (0..cols)
        .map(|j| {
            let mut x = LieElement::zero(target);
            for (i, row) in m.iter().enumerate() {
                if row[j] != 0 {
                    x = x.add_scaled(&LieElement::generator(target, i), &qint(row[j])).unwrap();
                }
            }
            x
        })
        .collect()
}

/// The basis word `[x_i, x_j]` of `𝕃²` for `i < j`.
pub fn l2_word(i: usize, j: usize) -> BracketWord {
    BracketWord::Lyndon(Word::from_letters(&[i as u8, j as u8]))
}
