use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::matrix::primitive_integer;
use crate::scalar::{eliminate, normalize, Overflow, Row, Scalar};
use crate::{Rational, SparseVec};

#[derive(Clone)]
enum Store {
    Small(BTreeMap<usize, Row<i128>>),
    Big(BTreeMap<usize, Row<BigInt>>),
}

/// Incremental row echelon basis keyed by the minimal support index of each stored row.
///
/// Used for rank-only accumulation of large generating sets and for canonical remainders
/// modulo a subspace.
#[derive(Clone)]
pub struct Echelon {
    cols: usize,
    store: Store,
}

fn insert_into<T: Scalar>(map: &mut BTreeMap<usize, Row<T>>, mut r: Row<T>) -> Result<bool, Overflow> {
    normalize(&mut r)?;
    loop {
        let Some(&(lead, ref lv)) = r.first() else {
            return Ok(false);
        };
        match map.get(&lead) {
            Some(p) => {
                let lv = lv.clone();
                r = eliminate(&r, &lv, p, &p[0].1)?;
            }
            None => {
                map.insert(lead, r);
                return Ok(true);
            }
        }
    }
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, store: Store::Small(BTreeMap::new()) }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Small(m) => m.len(),
            Store::Big(m) => m.len(),
        }
    }

    pub fn pivots(&self) -> BTreeSet<usize> {
        match &self.store {
            Store::Small(m) => m.keys().copied().collect(),
            Store::Big(m) => m.keys().copied().collect(),
        }
    }

    fn promote(&mut self) {
        if let Store::Small(m) = &self.store {
            let big = m
                .iter()
                .map(|(k, r)| (*k, r.iter().map(|(c, v)| (*c, v.to_big())).collect()))
                .collect();
            self.store = Store::Big(big);
        }
    }

    /// Insert an integer vector; returns whether it enlarged the span.
    pub fn insert_integer(&mut self, v: Vec<(usize, BigInt)>) -> bool {
        let mut v: Vec<(usize, BigInt)> = v.into_iter().filter(|(_, x)| !Zero::is_zero(x)).collect();
        v.sort_by_key(|e| e.0);
        debug_assert!(v.iter().all(|(c, _)| *c < self.cols));
        if let Store::Small(m) = &mut self.store {
            let small: Result<Row<i128>, Overflow> =
                v.iter().map(|(c, x)| Ok((*c, i128::from_big(x)?))).collect();
            if let Ok(s) = small {
                let snapshot_len = m.len();
                match insert_into(m, s) {
                    Ok(b) => return b,
                    Err(Overflow) => debug_assert_eq!(m.len(), snapshot_len),
                }
            }
            self.promote();
        }
        match &mut self.store {
            Store::Big(m) => insert_into(m, v).expect("bigint elimination cannot overflow"),
            Store::Small(_) => unreachable!(),
        }
    }

    /// Insert a rational vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_integer(primitive_integer(v))
    }

    /// Canonical remainder of `v` modulo the span: supported off the pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).map(|(c, _)| *c).find(|c| self.has_pivot(*c));
            let Some(c) = next else { break };
            let coeff = acc[&c].clone();
            let row = self.row_rational(c);
            let lead = row[0].1.clone();
            let f = coeff / lead;
            for (k, x) in row {
                let e = acc.entry(k).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    acc.remove(&k);
                }
            }
            cursor = c + 1;
        }
        acc.into_iter().collect()
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    fn has_pivot(&self, c: usize) -> bool {
        match &self.store {
            Store::Small(m) => m.contains_key(&c),
            Store::Big(m) => m.contains_key(&c),
        }
    }

    fn row_rational(&self, c: usize) -> SparseVec {
        match &self.store {
            Store::Small(m) => m[&c].iter().map(|(k, v)| (*k, Rational::from_integer(BigInt::from(*v)))).collect(),
            Store::Big(m) => m[&c].iter().map(|(k, v)| (*k, Rational::from_integer(v.clone()))).collect(),
        }
    }

    /// Stored rows (pivot column ascending), as rational vectors.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.pivots().into_iter().map(|c| self.row_rational(c)).collect()
    }
}
