use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::InvError;

/// Degree `2nd − k` of the `λ`-class attached to a class in `H_k(Out F_{n+1}; ℚ)`.
pub fn kontsevich_degree(n: usize, k: usize, d: i64) -> Result<i64, InvError> {
    let deg = 2 * n as i64 * d - k as i64;
    if n == 0 || deg <= 0 {
        return Err(InvError::NonpositiveDegree(deg));
    }
    Ok(deg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Borel { i: usize },
    Lambda { n: usize, k: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
    pub provenance: Provenance,
}

/// Free graded-commutative algebra on the listed generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRing {
    pub d: i64,
    pub generators: Vec<Generator>,
    /// Set when the `λ`-side is not determined by the input (d even).
    pub lambda_unknown: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutFnEntry {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
}

/// User-supplied `dim H_k(Out F_{n+1}; ℚ)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutFnTable {
    pub entries: Vec<OutFnEntry>,
}

impl OutFnTable {
    pub fn new(entries: Vec<OutFnEntry>) -> Result<Self, InvError> {
        let t = OutFnTable { entries };
        t.validate()?;
        Ok(t)
    }

    pub fn from_json(s: &str) -> Result<Self, InvError> {
        let t: OutFnTable = serde_json::from_str(s).map_err(|e| InvError::Table(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn validate(&self) -> Result<(), InvError> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if e.n == 0 {
                return Err(InvError::Table("n must be at least 1".into()));
            }
            if e.k == 0 && e.dim == 0 {
                return Err(InvError::Table(format!("H_0(Out F_{}) must be nonzero", e.n + 1)));
            }
            if !seen.insert((e.n, e.k)) {
                return Err(InvError::Table(format!("duplicate entry ({}, {})", e.n, e.k)));
            }
        }
        Ok(())
    }

    pub fn dim(&self, n: usize, k: usize) -> usize {
        self.entries.iter().find(|e| e.n == n && e.k == k).map_or(0, |e| e.dim)
    }
}

/// Generators of the stable cohomology ring up to `maxdeg`.
pub fn stable_ring(d: i64, table: &OutFnTable, maxdeg: i64) -> Result<StableRing, InvError> {
    if d < 3 {
        return Err(InvError::Dimension(d));
    }
    let mut generators = Vec::new();
    let borel = |i: i64| if d % 2 == 1 { 4 * i - 2 } else { 4 * i };
    let mut i = 1;
    while borel(i) <= maxdeg {
        generators.push(Generator {
            label: format!("x{i}"),
            degree: borel(i),
            provenance: Provenance::Borel { i: i as usize },
        });
        i += 1;
    }
    let lambda_unknown = d % 2 == 0;
    if !lambda_unknown {
        for e in &table.entries {
            let Ok(deg) = kontsevich_degree(e.n, e.k, d) else { continue };
            if deg > maxdeg {
                continue;
            }
            for index in 0..e.dim {
                generators.push(Generator {
                    label: format!("lambda({},{})#{}", e.n, e.k, index + 1),
                    degree: deg,
                    provenance: Provenance::Lambda { n: e.n, k: e.k, index },
                });
            }
        }
    }
    generators.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.label.cmp(&b.label)));
    Ok(StableRing { d, generators, lambda_unknown })
}

/// Coefficients up to `t^N` of `∏_{even}(1 − t^a)^{−1} ∏_{odd}(1 + t^b)`.
pub fn poincare_series(r: &StableRing, n: usize) -> Vec<u128> {
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    for g in &r.generators {
        let a = g.degree as usize;
        if a == 0 || a > n {
            continue;
        }
        if g.degree % 2 == 0 {
            for m in a..=n {
                c[m] += c[m - a];
            }
        } else {
            for m in (a..=n).rev() {
                c[m] += c[m - a];
            }
        }
    }
    c
}

/// Degrees of the `λ`-generators only: the predicted invariant CE cohomology generators.
pub fn lambda_degrees(r: &StableRing) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for g in &r.generators {
        if matches!(g.provenance, Provenance::Lambda { .. }) {
            *out.entry(g.degree).or_insert(0) += 1;
        }
    }
    out
}
