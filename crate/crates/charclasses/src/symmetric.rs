//! Symmetric polynomials in formal roots `t_1, …, t_N` and their expression in elementary
//! symmetric classes.

use exactla::Rational;
use num_traits::One;
use schurstab::partition::Partition;

use crate::poly::{Monomial, SymPoly, Var};

fn root_monomial(exps: &[u32]) -> Monomial {
    exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, &e)| (Var::T(j as u32 + 1), e)).collect()
}

/// `e_k(t_1^step, …, t_N^step)`.
pub fn elementary(n: usize, k: usize, step: u32) -> SymPoly {
    let mut out = SymPoly::zero();
    if k > n {
        return out;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let mut exps = vec![0; n];
        for &j in &pick {
            exps[j] = step;
        }
        out.add_term(root_monomial(&exps), Rational::one());
        // next k-subset
        let mut i = k;
        while i > 0 && pick[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        pick[i - 1] += 1;
        for j in i..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// `t_1^k + ⋯ + t_N^k`.
pub fn power_sum(n: usize, k: u32) -> SymPoly {
    let mut out = SymPoly::zero();
    for j in 0..n {
        let mut exps = vec![0; n];
        exps[j] = k;
        out.add_term(root_monomial(&exps), Rational::one());
    }
    out
}

/// Sum of the distinct monomials `t^{step·σ(I)}` in `N` roots.
pub fn monomial_symmetric(n: usize, part: &[usize], step: u32) -> SymPoly {
    let mut out = SymPoly::zero();
    if part.len() > n {
        return out;
    }
    let mut exps: Vec<u32> = part.iter().map(|&i| i as u32 * step).collect();
    exps.resize(n, 0);
    exps.sort_unstable();
    // iterate distinct permutations in lexicographic order
    loop {
        out.add_term(root_monomial(&exps), Rational::one());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| exps[i] < exps[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| exps[j] > exps[i]).expect("successor exists");
        exps.swap(i, j);
        exps[i + 1..].reverse();
    }
}

fn root_exponents(m: &Monomial, n: usize) -> Option<Vec<u32>> {
    let mut exps = vec![0; n];
    for (v, &e) in m {
        match v {
            Var::T(j) if (*j as usize) >= 1 && (*j as usize) <= n => exps[*j as usize - 1] = e,
            _ => return None,
        }
    }
    Some(exps)
}

/// Rewrite a symmetric polynomial in `t_1^step, …, t_N^step` as a polynomial in the elementary
/// classes `class(k) = e_k`. Returns `None` if the input is not symmetric in that sense.
pub fn to_elementary(poly: &SymPoly, n: usize, step: u32, class: &dyn Fn(u32) -> Var) -> Option<SymPoly> {
    let mut rest = poly.clone();
    let mut out = SymPoly::zero();
    let elem: Vec<SymPoly> = (0..=n).map(|k| elementary(n, k, step)).collect();
    while let Some((m, c)) = rest.terms().iter().max_by(|a, b| {
        let ea = root_exponents(a.0, n).unwrap_or_default();
        let eb = root_exponents(b.0, n).unwrap_or_default();
        ea.cmp(&eb)
    }) {
        let exps = root_exponents(m, n)?;
        if exps.windows(2).any(|w| w[0] < w[1]) || exps.iter().any(|e| e % step != 0) {
            return None;
        }
        let a: Vec<u32> = exps.iter().map(|e| e / step).collect();
        let c = c.clone();
        let mut lead = SymPoly::constant(c.clone());
        let mut target = Monomial::new();
        for k in 1..=n {
            let power = a[k - 1] - a.get(k).copied().unwrap_or(0);
            if power > 0 {
                lead = lead.mul(&elem[k].pow(power));
                target.insert(class(k as u32), power);
            }
        }
        out.add_term(target, c);
        rest = rest.sub(&lead);
    }
    Some(out)
}

/// `s_I(p_1, …, p_n)`: the monomial symmetric function `m_I` in the squared roots, written in
/// Pontryagin classes.
pub fn s_class(part: &Partition) -> SymPoly {
    let n: usize = part.iter().sum();
    let m = monomial_symmetric(n, part, 2);
    to_elementary(&m, n, 2, &Var::P).expect("monomial symmetric functions are symmetric")
}

/// The elementary substitution `c_k ↦ e_k(t_1, …, t_N)` (and `p_k ↦ e_k(t^2)`).
pub fn at_roots(poly: &SymPoly, n: usize) -> SymPoly {
    poly.substitute(&|v| match v {
        Var::C(k) => Some(elementary(n, k as usize, 1)),
        Var::P(k) => Some(elementary(n, k as usize, 2)),
        _ => None,
    })
}
