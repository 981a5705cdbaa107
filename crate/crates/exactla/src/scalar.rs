use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Raised by the machine-word path; callers retry with `BigInt`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Overflow;

/// Integer ring used by the fraction-free eliminator.
pub(crate) trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Result<Self, Overflow>;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn gcd(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn sub(&self, other: &Self) -> Result<Self, Overflow>;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn from_big(b: &BigInt) -> Result<Self, Overflow>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*other).ok_or(Overflow)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn from_big(b: &BigInt) -> Result<Self, Overflow> {
        // keep headroom so that gcd/abs never see i128::MIN
        match b.to_i128() {
            Some(v) if v != i128::MIN => Ok(v),
            _ => Err(Overflow),
        }
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
    fn from_big(b: &BigInt) -> Result<Self, Overflow> {
        Ok(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) type Row<T> = Vec<(usize, T)>;

/// Divide a row by the gcd of its entries and make the leading entry positive.
pub(crate) fn normalize<T: Scalar>(row: &mut Row<T>) -> Result<(), Overflow> {
    let Some(first) = row.first() else {
        return Ok(());
    };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.is_negative();
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    if flip {
        for (_, v) in row.iter_mut() {
            *v = v.neg()?;
        }
    }
    Ok(())
}

/// `a*x - b*y` on sparse rows, dropping zeros. Inputs sorted by column.
pub(crate) fn combine<T: Scalar>(a: &T, x: &Row<T>, b: &T, y: &Row<T>) -> Result<Row<T>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, a.mul(&x[i].1)?));
            i += 1;
        } else if cj < ci {
            out.push((cj, b.mul(&y[j].1)?.neg()?));
            j += 1;
        } else {
            let v = a.mul(&x[i].1)?.sub(&b.mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Eliminate column `col` of `row` against `piv` (whose entry at `col` is `pv`).
pub(crate) fn eliminate<T: Scalar>(row: &Row<T>, rv: &T, piv: &Row<T>, pv: &T) -> Result<Row<T>, Overflow> {
    let g = pv.gcd(rv);
    let a = pv.div_exact(&g);
    let b = rv.div_exact(&g);
    let mut r = combine(&a, row, &b, piv)?;
    normalize(&mut r)?;
    Ok(r)
}

pub(crate) fn entry<T: Scalar>(row: &Row<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}
