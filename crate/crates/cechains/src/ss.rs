use std::collections::BTreeMap;

use exactla::{rank, rank_kernel, SparseMatrix, SparseVec};

use crate::ce::CEComplex;
use crate::dglie::DgLie;
use crate::homology::homology_lie;
use crate::table::DimTable;
use crate::CEError;

/// Pages of the word-length spectral sequence in total degrees `0..=nmax`.
#[derive(Debug, Clone)]
pub struct SpectralSequence {
    pub nmax: i64,
    /// `E^r` for `r = 1..=pages`.
    pub pages: BTreeMap<usize, DimTable>,
    pub e_infinity: DimTable,
    /// `dim H_n` of the total complex.
    pub total: BTreeMap<i64, usize>,
    /// `H^{CE}_{p,q}(H_*(L))`, computed without the filtration.
    pub e2_direct: DimTable,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> Option<&DimTable> {
        self.pages.get(&r)
    }

    pub fn e2_agrees(&self) -> bool {
        self.pages.get(&2).map(|t| t.support() == self.e2_direct.support()).unwrap_or(false)
    }

    pub fn collapses_at(&self, r: usize) -> bool {
        self.pages.get(&r).map(|t| t.support() == self.e_infinity.support()).unwrap_or(false)
    }

    /// `Σ_p dim E^∞_{p, n−p} = dim H_n` for every computed `n`.
    pub fn converges(&self) -> bool {
        self.total.iter().all(|(&n, &d)| self.e_infinity.total(n) == d)
    }
}

/// Filtered total complex data in one total degree.
struct Degree {
    wl: Vec<usize>,
    cols: Vec<SparseVec>,
    rows: usize,
}

impl Degree {
    fn new(c: &CEComplex, n: i64) -> Self {
        let mut wl = Vec::new();
        for (p, _, len) in c.total_layout(n) {
            wl.extend(std::iter::repeat(p).take(len));
        }
        let m = c.total_matrix(n);
        Degree { wl, cols: m.columns(), rows: m.rows() }
    }
}

/// `{x ∈ F_p C_n : δx ∈ F_{p−r} C_{n−1}}` as vectors in `C_n`.
fn z_space(cur: &Degree, below: &Degree, r: usize, p: i64) -> Vec<SparseVec> {
    if p < 0 {
        return Vec::new();
    }
    let keep: Vec<usize> = (0..cur.wl.len()).filter(|&i| cur.wl[i] as i64 <= p).collect();
    let bound = p - r as i64;
    let cols: Vec<SparseVec> = keep
        .iter()
        .map(|&i| cur.cols[i].iter().filter(|(row, _)| below.wl[*row] as i64 > bound).cloned().collect())
        .collect();
    let m = SparseMatrix::from_cols(cur.rows, cols).expect("indices in range");
    let (_, ker) = rank_kernel(&m);
    ker.into_iter().map(|v| v.into_iter().map(|(k, c)| (keep[k], c)).collect()).collect()
}

fn span_dim(dim: usize, vs: Vec<SparseVec>) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&SparseMatrix::from_rows(dim, vs).expect("indices in range"))
}

fn apply(cols: &[SparseVec], rows: usize, v: &SparseVec) -> SparseVec {
    let m = SparseMatrix::from_cols(rows, cols.to_vec()).expect("indices in range");
    m.mul_vec(v)
}

/// `dim E^r_{p, n−p}` for all `p`, for a fixed total degree `n`.
fn page_in_degree(lower: &Degree, cur: &Degree, upper: &Degree, r: usize) -> BTreeMap<usize, usize> {
    let maxp = cur.wl.iter().chain(&upper.wl).copied().max().unwrap_or(0);
    let dim = cur.wl.len();
    let mut out = BTreeMap::new();
    for p in 0..=maxp {
        if !cur.wl.contains(&p) {
            continue;
        }
        let p = p as i64;
        let z = z_space(cur, lower, r, p);
        let mut denom = z_space(cur, lower, r - 1, p - 1);
        for v in z_space(upper, cur, r - 1, p + r as i64 - 1) {
            let img = apply(&upper.cols, upper.rows, &v);
            if !img.is_empty() {
                denom.push(img);
            }
        }
        out.insert(p as usize, z.len() - span_dim(dim, denom));
    }
    out
}

/// The spectral sequence of the word-length filtration, pages `1..=pages` and `E^∞`.
pub fn wordlength_ss(l: &DgLie, pages: usize, nmax: i64) -> Result<SpectralSequence, CEError> {
    if !l.is_positively_graded() {
        return Err(CEError::NotPositive);
    }
    let pmax = (nmax.max(0) + 1) as usize;
    let c = CEComplex::new(l, pmax, nmax);
    let degs: BTreeMap<i64, Degree> = (-1..=nmax + 1).map(|n| (n, Degree::new(&c, n))).collect();
    let rinf = pmax + 2;
    let mut tables: BTreeMap<usize, BTreeMap<(i64, i64), usize>> = BTreeMap::new();
    let mut total = BTreeMap::new();
    for n in 0..=nmax {
        let (lo, cu, up) = (&degs[&(n - 1)], &degs[&n], &degs[&(n + 1)]);
        for r in (1..=pages).chain(std::iter::once(rinf)) {
            let t = tables.entry(r).or_default();
            for (p, d) in page_in_degree(lo, cu, up, r) {
                t.insert((p as i64, n - p as i64), d);
            }
        }
        total.insert(n, c.total_homology(n)?);
    }
    let mut pages_out = BTreeMap::new();
    let mut e_inf = None;
    for (r, cells) in tables {
        let t = DimTable::new(pmax, nmax, cells);
        if r == rinf {
            e_inf = Some(t.clone());
        }
        if r <= pages {
            pages_out.insert(r, t);
        }
    }
    let hl = homology_lie(l)?;
    let e2_direct = CEComplex::new(&hl, pmax, nmax).bigraded_homology()?;
    Ok(SpectralSequence { nmax, pages: pages_out, e_infinity: e_inf.expect("computed"), total, e2_direct })
}
