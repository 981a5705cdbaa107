use std::collections::BTreeMap;

use serde::Serialize;

/// Dimensions indexed by `(p, q)` together with the truncation window they were computed in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub pmax: usize,
    pub nmax: i64,
    #[serde(serialize_with = "cells_as_list")]
    pub cells: BTreeMap<(i64, i64), usize>,
}

#[derive(Serialize)]
struct Cell {
    p: i64,
    q: i64,
    dim: usize,
}

fn cells_as_list<S: serde::Serializer>(cells: &BTreeMap<(i64, i64), usize>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(cells.iter().map(|(&(p, q), &dim)| Cell { p, q, dim }))
}

impl DimTable {
    pub fn new(pmax: usize, nmax: i64, cells: BTreeMap<(i64, i64), usize>) -> Self {
        DimTable { pmax, nmax, cells }
    }

    pub fn get(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Sum over the antidiagonal `p + q = n`.
    pub fn total(&self, n: i64) -> usize {
        self.cells.iter().filter(|((p, q), _)| p + q == n).map(|(_, d)| d).sum()
    }

    /// Cells with nonzero dimension.
    pub fn support(&self) -> Vec<(i64, i64, usize)> {
        self.cells.iter().filter(|(_, &d)| d > 0).map(|(&(p, q), &d)| (p, q, d)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,q,dim\n");
        for (&(p, q), d) in &self.cells {
            s.push_str(&format!("{p},{q},{d}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}
