use std::collections::BTreeMap;

use exactla::Rational;
use num_traits::{One, Zero};
use schurstab::partition::{factorial, partitions, Partition};
use serde_json::{json, Value};

use crate::poly::{Monomial, SymPoly, Var};
use crate::series::f_series;
use crate::symmetric::s_class;
use crate::ClassError;

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `s_n(c_1, …, c_n)` from Newton's recurrence.
pub fn newton_class(n: u32) -> Result<SymPoly, ClassError> {
    if n == 0 {
        return Err(ClassError::ZeroIndex);
    }
    let mut s: Vec<SymPoly> = vec![SymPoly::zero()];
    for m in 1..=n {
        let mut acc = SymPoly::var(Var::C(m)).scale(&(sign(m as usize - 1) * Rational::from_integer(m.into())));
        for i in 1..m {
            acc = acc.add(&SymPoly::var(Var::C(i)).mul(&s[(m - i) as usize]).scale(&sign(i as usize - 1)));
        }
        s.push(acc);
    }
    Ok(s.pop().expect("n ≥ 1"))
}

/// `B_k` in the convention `t/tanh(t/2) = 2(1 + Σ (−1)^{k−1} B_k t^{2k}/(2k)!)`, read off the
/// series.
pub fn bernoulli(k: usize) -> Result<Rational, ClassError> {
    if k == 0 {
        return Err(ClassError::ZeroIndex);
    }
    let f = f_series(2 * k + 1);
    Ok(f.coeff(2 * k) * fact(2 * k) * sign(k - 1) / Rational::from_integer(2.into()))
}

/// `λ_k = (−1)^{k−1} B_k / (2k)!`.
pub fn lambda(k: usize) -> Result<Rational, ClassError> {
    Ok(sign(k - 1) * bernoulli(k)? / fact(2 * k))
}

fn check_d(d: i64) -> Result<(), ClassError> {
    if d < 3 {
        return Err(ClassError::Dimension(d));
    }
    Ok(())
}

/// `I ↦ 2^d λ_I` over partitions of `n`.
pub fn ltilde_coeffs(n: usize, d: i64) -> Result<BTreeMap<Partition, Rational>, ClassError> {
    if n == 0 {
        return Err(ClassError::ZeroIndex);
    }
    check_d(d)?;
    let lambdas: Vec<Rational> = (1..=n).map(lambda).collect::<Result<_, _>>()?;
    let two_d = Rational::from_integer(num_traits::pow(exactla::BigInt::from(2), d as usize));
    Ok(partitions(n)
        .into_iter()
        .map(|p| {
            let c = p.iter().fold(two_d.clone(), |acc, &i| acc * &lambdas[i - 1]);
            (p, c)
        })
        .collect())
}

/// `L̃_n = 2^d Σ λ_I s_I` as a polynomial in Pontryagin classes.
pub fn ltilde_polynomial(n: usize, d: i64) -> Result<SymPoly, ClassError> {
    let mut out = SymPoly::zero();
    for (p, c) in ltilde_coeffs(n, d)? {
        out = out.add(&s_class(&p).scale(&c));
    }
    Ok(out)
}

/// The relation between a Borel class and `κ`-classes in degree `4i − 2`:
/// `lhs_coefficient · s_{2i−1}(η) = Σ_I rhs[I] · κ_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaBorelRelation {
    pub i: usize,
    pub d: i64,
    pub degree: i64,
    pub lhs_coefficient: Rational,
    pub rhs: BTreeMap<Partition, Rational>,
}

impl KappaBorelRelation {
    /// Coefficient of the one-part partition `(i + s)`.
    pub fn single_partition_coefficient(&self) -> Rational {
        let n = self.rhs.keys().next().map_or(0, |p| p.iter().sum());
        self.rhs.get(&vec![n]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nontrivial(&self) -> bool {
        !self.single_partition_coefficient().is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "d": self.d,
            "degree": self.degree,
            "lhs": { "coefficient": self.lhs_coefficient.to_string(), "class": format!("s{}(eta)", 2 * self.i - 1) },
            "rhs": self.rhs.iter().map(|(p, c)| json!({ "kappa": p, "coefficient": c.to_string() })).collect::<Vec<_>>(),
            "single_partition_coefficient": self.single_partition_coefficient().to_string(),
            "nontrivial": self.nontrivial(),
        })
    }
}

pub fn kappa_borel_relation(i: usize, d: i64) -> Result<KappaBorelRelation, ClassError> {
    check_d(d)?;
    if d % 2 == 0 {
        return Err(ClassError::EvenDimension(d));
    }
    if i == 0 {
        return Err(ClassError::ZeroIndex);
    }
    let s = ((d - 1) / 2) as usize;
    Ok(KappaBorelRelation {
        i,
        d,
        degree: 4 * i as i64 - 2,
        lhs_coefficient: Rational::from_integer((-2).into()) / fact(2 * i - 1),
        rhs: ltilde_coeffs(i + s, d)?,
    })
}

/// A `κ`-class generator `κ_c` of the stable diffeomorphism side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaGenerator {
    pub monomial: Monomial,
    pub class_degree: i64,
    pub kappa_degree: i64,
}

/// Monomials `c` in `p_{⌈(d+1)/4⌉}, …, p_{d−1}, e` with `2d < |c| ≤ 2d + maxdeg`.
pub fn grw_kappa_degrees(d: i64, maxdeg: i64) -> Result<Vec<KappaGenerator>, ClassError> {
    check_d(d)?;
    let lo = (d + 4) / 4;
    let mut vars: Vec<Var> = (lo..d).map(|i| Var::P(i as u32)).collect();
    vars.push(Var::Euler { d: d as u32 });
    let top = 2 * d + maxdeg;
    let mut out = Vec::new();
    fn rec(vars: &[Var], top: i64, cur: &mut Monomial, deg: i64, acc: &mut Vec<(Monomial, i64)>) {
        let Some((&v, rest)) = vars.split_first() else {
            acc.push((cur.clone(), deg));
            return;
        };
        let mut e = 0u32;
        let mut total = deg;
        while total <= top {
            if e > 0 {
                cur.insert(v, e);
            }
            rec(rest, top, cur, total, acc);
            e += 1;
            total += v.degree() as i64;
        }
        cur.remove(&v);
    }
    let mut all = Vec::new();
    rec(&vars, top, &mut Monomial::new(), 0, &mut all);
    for (m, deg) in all {
        if deg > 2 * d {
            out.push(KappaGenerator { monomial: m, class_degree: deg, kappa_degree: deg - 2 * d });
        }
    }
    out.sort_by(|a, b| a.kappa_degree.cmp(&b.kappa_degree).then_with(|| a.monomial.cmp(&b.monomial)));
    Ok(out)
}
