use exactla::SparseMatrix;

use crate::complex::{add, id, is_homogeneous, mul, sub, ChainComplex};
use crate::HplError;

/// `f: C → H`, `g: H → C`, `h: C → C` of degree `+1` with `fg = 1` and `1 − gf = dh + hd`.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub big: ChainComplex,
    pub small: ChainComplex,
    pub f: SparseMatrix,
    pub g: SparseMatrix,
    pub h: SparseMatrix,
    /// Set when the homotopy had to be rewritten to satisfy the side conditions.
    pub normalized: bool,
}

impl Contraction {
    pub fn new(
        big: ChainComplex,
        small: ChainComplex,
        f: SparseMatrix,
        g: SparseMatrix,
        h: SparseMatrix,
    ) -> Result<Self, HplError> {
        let (n, m) = (big.dim(), small.dim());
        for (name, mat, shape) in [("f", &f, (m, n)), ("g", &g, (n, m)), ("h", &h, (n, n))] {
            if (mat.rows(), mat.cols()) != shape {
                return Err(HplError::Shape { map: name, expected: shape, got: (mat.rows(), mat.cols()) });
            }
        }
        if !is_homogeneous(&f, small.degrees(), big.degrees(), 0) {
            return Err(HplError::Degree("f"));
        }
        if !is_homogeneous(&g, big.degrees(), small.degrees(), 0) {
            return Err(HplError::Degree("g"));
        }
        if !is_homogeneous(&h, big.degrees(), big.degrees(), 1) {
            return Err(HplError::Degree("h"));
        }
        let c = Contraction { big, small, f, g, h, normalized: false };
        c.check()?;
        Ok(c)
    }

    /// The identities that do not involve the side conditions.
    pub fn check(&self) -> Result<(), HplError> {
        let (d, dh) = (self.big.d(), self.small.d());
        if mul(&self.f, d) != mul(dh, &self.f) {
            return Err(HplError::Identity("f is not a chain map"));
        }
        if mul(d, &self.g) != mul(&self.g, dh) {
            return Err(HplError::Identity("g is not a chain map"));
        }
        if mul(&self.f, &self.g) != id(self.small.dim()) {
            return Err(HplError::Identity("fg ≠ 1"));
        }
        let lhs = sub(&id(self.big.dim()), &mul(&self.g, &self.f));
        let rhs = add(&mul(d, &self.h), &mul(&self.h, d));
        if lhs != rhs {
            return Err(HplError::Identity("1 − gf ≠ dh + hd"));
        }
        Ok(())
    }

    /// `fh = 0`, `hg = 0`, `h² = 0`.
    pub fn side_conditions(&self) -> bool {
        mul(&self.f, &self.h).is_zero() && mul(&self.h, &self.g).is_zero() && mul(&self.h, &self.h).is_zero()
    }

    /// Replace `h` by `P h P` with `P = 1 − gf`, then by `h d h`; both steps keep `1 − gf = dh + hd`.
    pub fn normalize(mut self) -> Self {
        if self.side_conditions() {
            return self;
        }
        let p = sub(&id(self.big.dim()), &mul(&self.g, &self.f));
        let h1 = mul(&mul(&p, &self.h), &p);
        self.h = mul(&mul(&h1, self.big.d()), &h1);
        self.normalized = true;
        self
    }
}
