use std::collections::BTreeMap;
use std::fmt;

use exactla::Rational;
use num_traits::{One, Signed, Zero};

/// Graded generators. `T(j)` is a formal root of degree 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    C(u32),
    P(u32),
    Euler { d: u32 },
    T(u32),
}

impl Var {
    pub fn degree(self) -> u32 {
        match self {
            Var::C(i) => 2 * i,
            Var::P(i) => 4 * i,
            Var::Euler { d } => 2 * d,
            Var::T(_) => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::C(i) => write!(f, "c{i}"),
            Var::P(i) => write!(f, "p{i}"),
            Var::Euler { .. } => write!(f, "e"),
            Var::T(j) => write!(f, "t{j}"),
        }
    }
}

pub type Monomial = BTreeMap<Var, u32>;

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|(v, e)| v.degree() * e).sum()
}

pub fn monomial_string(m: &Monomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Polynomial in [`Var`]s with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn one() -> Self {
        SymPoly::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        SymPoly::monomial([(v, 1)].into_iter().collect(), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(*v).or_insert(0) += e;
                }
                out.add_term(m, a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SymPoly {
        (0..n).fold(SymPoly::one(), |acc, _| acc.mul(self))
    }

    /// Common degree of all terms; `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(monomial_degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Terms of the given degree.
    pub fn part(&self, degree: u32) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) == degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Replace every variable for which `f` returns a polynomial.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Option<SymPoly>) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = SymPoly::constant(c.clone());
            for (&v, &e) in m {
                let image = f(v).unwrap_or_else(|| SymPoly::var(v));
                acc = acc.mul(&image.pow(e));
            }
            out = out.add(&acc);
        }
        out
    }
}

// c1^3 before c1 c2 before c3
fn lex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let o = x.0.cmp(y.0).then_with(|| y.1.cmp(x.1));
        if o.is_ne() {
            return o;
        }
    }
    b.len().cmp(&a.len())
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| monomial_degree(b.0).cmp(&monomial_degree(a.0)).then_with(|| lex(a.0, b.0)));
        for (m, c) in terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial_string(m))?;
            } else {
                write!(f, "{abs} {}", monomial_string(m))?;
            }
        }
        Ok(())
    }
}
