use std::collections::BTreeMap;

use charclasses::poly::monomial_degree;
use charclasses::series::{f_series, tanh_half, t};
use charclasses::symmetric::{at_roots, monomial_symmetric, power_sum, to_elementary};
use charclasses::*;
use exactla::{q, qf, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use spinvariants::ring::OutFnEntry;
use spinvariants::OutFnTable;

fn poly(terms: &[(i64, i64, &[(Var, u32)])]) -> SymPoly {
    let mut p = SymPoly::zero();
    for (n, d, m) in terms {
        p.add_term(m.iter().cloned().collect(), qf(*n, *d));
    }
    p
}

fn c(i: u32) -> Var {
    Var::C(i)
}

fn p(i: u32) -> Var {
    Var::P(i)
}

#[test]
fn newton_examples() {
    assert_eq!(newton_class(1).unwrap(), poly(&[(1, 1, &[(c(1), 1)])]));
    assert_eq!(newton_class(2).unwrap(), poly(&[(1, 1, &[(c(1), 2)]), (-2, 1, &[(c(2), 1)])]));
    assert_eq!(
        newton_class(3).unwrap(),
        poly(&[(1, 1, &[(c(1), 3)]), (-3, 1, &[(c(1), 1), (c(2), 1)]), (3, 1, &[(c(3), 1)])])
    );
    assert_eq!(newton_class(2).unwrap().to_string(), "c1^2 - 2 c2");
    assert_eq!(newton_class(3).unwrap().to_string(), "c1^3 - 3 c1 c2 + 3 c3");
    assert_eq!(newton_class(0), Err(ClassError::ZeroIndex));
}

#[test]
fn newton_classes_are_power_sums_at_three_roots() {
    for n in 1..=7 {
        assert_eq!(at_roots(&newton_class(n).unwrap(), 3), power_sum(3, n), "n={n}");
        assert_eq!(newton_class(n).unwrap().homogeneous_degree(), Some(2 * n));
    }
}

#[test]
fn chern_character_at_three_roots() {
    // Σ_j exp(t_j) against 3 + Σ_k s_k(c)/k!, truncated in degree 2K
    let kmax = 6u32;
    let mut direct = SymPoly::zero();
    for j in 1..=3 {
        let mut term = SymPoly::one();
        for k in 0..=kmax {
            direct = direct.add(&term);
            term = term.mul(&SymPoly::var(Var::T(j))).scale(&qf(1, k as i64 + 1));
        }
    }
    let mut ch = SymPoly::constant(q(3));
    let mut fact = Rational::one();
    for k in 1..=kmax {
        fact *= q(k as i64);
        ch = ch.add(&at_roots(&newton_class(k).unwrap(), 3).scale(&(Rational::one() / &fact)));
    }
    assert_eq!(direct, ch);
}

/// Classical `b_n` with `t/(e^t − 1) = Σ b_n t^n/n!`, from `Σ_{j≤m} C(m+1, j) b_j = 0`.
fn classical_bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut binom = Rational::one();
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += &binom * bj;
            binom = binom * q((m + 1 - j) as i64) / q(j as i64 + 1);
        }
        b.push(-s / q(m as i64 + 1));
    }
    b
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |a, k| a * q(k as i64))
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli(1).unwrap(), qf(1, 6));
    assert_eq!(bernoulli(2).unwrap(), qf(1, 30));
    assert_eq!(bernoulli(3).unwrap(), qf(1, 42));
    let table = [qf(1, 6), qf(1, 30), qf(1, 42), qf(1, 30), qf(5, 66), qf(691, 2730), qf(7, 6)];
    let b = classical_bernoulli(20);
    for k in 1..=10 {
        let classical = if k % 2 == 1 { b[2 * k].clone() } else { -b[2 * k].clone() };
        assert_eq!(bernoulli(k).unwrap(), classical, "k={k}");
        if k <= table.len() {
            assert_eq!(bernoulli(k).unwrap(), table[k - 1]);
        }
        assert!(bernoulli(k).unwrap() > Rational::zero());
    }
    assert_eq!(lambda(1).unwrap(), qf(1, 12));
    assert_eq!(lambda(2).unwrap(), qf(-1, 720));
    assert_eq!(bernoulli(0), Err(ClassError::ZeroIndex));
}

#[test]
fn f_times_tanh_is_t() {
    for order in [2, 7, 20] {
        assert_eq!(f_series(order).mul(&tanh_half(order)), t(order));
    }
    // t/tanh(t/2) = t + 2t/(e^t − 1)
    let b = classical_bernoulli(16);
    let f = f_series(17);
    for n in 0..17 {
        let expected = match n {
            0 => q(2),
            1 => Rational::one() + q(2) * &b[1],
            _ => q(2) * &b[n] / factorial(n),
        };
        assert_eq!(f.coeff(n), expected, "n={n}");
    }
    assert_eq!(f.coeff(2), qf(1, 6));
    assert_eq!(f.coeff(4), qf(-1, 360));
}

#[test]
fn ltilde_examples() {
    let one = ltilde_coeffs(1, 3).unwrap();
    assert_eq!(one, BTreeMap::from([(vec![1], qf(2, 3))]));
    let two = ltilde_coeffs(2, 3).unwrap();
    assert_eq!(two, BTreeMap::from([(vec![2], q(8) * qf(-1, 720)), (vec![1, 1], q(8) * qf(1, 144))]));
    for n in 1..=8 {
        for d in 3..=7 {
            assert!(!ltilde_coeffs(n, d).unwrap()[&vec![n]].is_zero());
        }
    }
    assert_eq!(ltilde_coeffs(1, 2), Err(ClassError::Dimension(2)));
}

#[test]
fn s_class_examples() {
    assert_eq!(s_class(&vec![1]), poly(&[(1, 1, &[(p(1), 1)])]));
    assert_eq!(s_class(&vec![2]), poly(&[(1, 1, &[(p(1), 2)]), (-2, 1, &[(p(2), 1)])]));
    assert_eq!(s_class(&vec![1, 1]), poly(&[(1, 1, &[(p(2), 1)])]));
    assert_eq!(s_class(&vec![2, 1]), poly(&[(1, 1, &[(p(1), 1), (p(2), 1)]), (-3, 1, &[(p(3), 1)])]));
    assert_eq!(
        s_class(&vec![3]),
        poly(&[(1, 1, &[(p(1), 3)]), (-3, 1, &[(p(1), 1), (p(2), 1)]), (3, 1, &[(p(3), 1)])])
    );
    // at n roots, s_I(p) is the monomial symmetric function in the squares
    for n in 1..=5usize {
        for part in schurstab::partition::partitions(n) {
            assert_eq!(at_roots(&s_class(&part), n), monomial_symmetric(n, &part, 2), "{part:?}");
        }
    }
}

/// `∏_{j≤N} f(t_j)` in total `t`-degree `2n`, using `t/tanh(t/2) = t + 2t/(e^t − 1)`.
fn product_expansion(n: usize, roots: usize) -> SymPoly {
    let b = classical_bernoulli(2 * n);
    let mut prod = SymPoly::one();
    for j in 1..=roots {
        let mut fj = SymPoly::constant(q(2));
        for k in 1..=n {
            let coeff = q(2) * &b[2 * k] / factorial(2 * k);
            fj = fj.add(&SymPoly::var(Var::T(j as u32)).pow(2 * k as u32).scale(&coeff));
        }
        prod = prod.mul(&fj).part_upto(4 * n as u32);
    }
    prod.part(4 * n as u32)
}

trait Truncate {
    fn part_upto(&self, deg: u32) -> SymPoly;
}

impl Truncate for SymPoly {
    fn part_upto(&self, deg: u32) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in self.terms() {
            if monomial_degree(m) <= deg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

#[test]
fn ltilde_matches_product_of_f() {
    for d in [3i64, 4, 5] {
        for n in 1..=4usize {
            let roots = n + 1;
            let expanded = product_expansion(n, roots);
            let rescale = Rational::from_integer(num_traits::pow(exactla::BigInt::from(2), d as usize))
                / Rational::from_integer(num_traits::pow(exactla::BigInt::from(2), roots));
            let lt = ltilde_polynomial(n, d).unwrap();
            assert_eq!(at_roots(&lt, roots), expanded.scale(&rescale), "d={d} n={n}");
            // and back in Pontryagin classes
            let back = to_elementary(&expanded.scale(&rescale), roots, 2, &Var::P).unwrap();
            assert_eq!(back, lt, "d={d} n={n}");
            assert_eq!(lt.homogeneous_degree(), Some(4 * n as u32));
        }
    }
}

#[test]
fn kappa_borel_records() {
    let r = kappa_borel_relation(1, 3).unwrap();
    assert_eq!(r.lhs_coefficient, q(-2));
    assert_eq!(r.degree, 2);
    assert_eq!(r.rhs, ltilde_coeffs(2, 3).unwrap());
    assert_eq!(r.single_partition_coefficient(), qf(-1, 90));
    assert!(r.nontrivial());
    let r5 = kappa_borel_relation(1, 5).unwrap();
    assert_eq!(r5.rhs.len(), 3);
    assert_eq!(r5.single_partition_coefficient(), q(32) * qf(1, 42) / factorial(6));
    assert!(r5.nontrivial());
    let r2 = kappa_borel_relation(2, 3).unwrap();
    assert_eq!(r2.lhs_coefficient, qf(-2, 6));
    assert_eq!(r2.degree, 6);
    // both sides live in degree 4i − 2
    for (i, d) in [(1usize, 3i64), (2, 3), (3, 3), (1, 5), (2, 7)] {
        let r = kappa_borel_relation(i, d).unwrap();
        let s = (d as usize - 1) / 2;
        for part in r.rhs.keys() {
            let deg = 4 * part.iter().sum::<usize>() as i64 - 2 * d;
            assert_eq!(deg, r.degree);
            assert_eq!(part.iter().sum::<usize>(), i + s);
        }
        assert_eq!(r.degree, 4 * i as i64 - 2);
        assert!(r.nontrivial());
    }
    assert_eq!(kappa_borel_relation(1, 4), Err(ClassError::EvenDimension(4)));
    let json = kappa_borel_relation(1, 3).unwrap().to_json();
    assert_eq!(json["single_partition_coefficient"], "-1/90");
}

/// Brute-force monomials in the allowed variables by degree.
fn brute_grw(d: i64, maxdeg: i64) -> BTreeMap<i64, usize> {
    let lo = ((d + 1) as f64 / 4.0).ceil() as i64;
    let mut degs: Vec<i64> = (lo..d).map(|i| 4 * i).collect();
    degs.push(2 * d);
    let mut counts = BTreeMap::new();
    let top = 2 * d + maxdeg;
    let mut stack = vec![(0usize, 0i64)];
    while let Some((idx, deg)) = stack.pop() {
        if idx == degs.len() {
            if deg > 2 * d {
                *counts.entry(deg - 2 * d).or_insert(0) += 1;
            }
            continue;
        }
        let mut total = deg;
        while total <= top {
            stack.push((idx + 1, total));
            total += degs[idx];
        }
    }
    counts
}

#[test]
fn grw_generators() {
    let g = grw_kappa_degrees(3, 4).unwrap();
    let names = |k: i64| -> Vec<String> {
        g.iter().filter(|x| x.kappa_degree == k).map(|x| charclasses::poly::monomial_string(&x.monomial)).collect()
    };
    assert_eq!(names(2), vec!["p1^2", "p2"]);
    assert_eq!(names(4), vec!["p1 e"]);
    for d in 3..=8 {
        let g = grw_kappa_degrees(d, 24).unwrap();
        let mut counts = BTreeMap::new();
        for x in &g {
            assert_eq!(x.kappa_degree % 2, 0);
            assert_eq!(monomial_degree(&x.monomial) as i64, x.class_degree);
            *counts.entry(x.kappa_degree).or_insert(0) += 1;
        }
        assert_eq!(counts, brute_grw(d, 24), "d={d}");
    }
    // d = 4 uses p_2, p_3 and e only
    assert!(grw_kappa_degrees(4, 20).unwrap().iter().all(|x| !x.monomial.contains_key(&Var::P(1))));
}

#[test]
fn ring_comparison() {
    let empty = OutFnTable::default();
    let r = compare_rings(3, 2, &empty).unwrap();
    assert_eq!(r.counts, vec![DegreeCount { degree: 2, aut: 1, diff: 2 }]);
    assert_eq!(r.diff_surplus_degrees, vec![2]);
    assert!(!r.injective_obstruction());
    assert_eq!(r.borel.len(), 1);
    let table = OutFnTable::new(vec![OutFnEntry { n: 1, k: 0, dim: 1 }, OutFnEntry { n: 6, k: 11, dim: 1 }]).unwrap();
    let r = compare_rings(3, 26, &table).unwrap();
    assert_eq!(r.odd_aut_generators, vec![("lambda(6,11)#1".to_string(), 25)]);
    assert!(r.injective_obstruction() && r.surjective_obstruction());
    let six = r.counts.iter().find(|c| c.degree == 6).unwrap();
    assert_eq!((six.aut, six.diff), (2, brute_grw(3, 26)[&6]));
    assert!(r.borel.iter().all(KappaBorelRelation::nontrivial));
    assert!(r.to_text().contains("degree 25"));
    assert_eq!(r.to_json()["counts"][0]["diff"], 2);
    assert_eq!(compare_rings(4, 8, &empty).unwrap_err(), ClassError::EvenDimension(4));
}

fn random_c_poly() -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((1u32..=3, 0u32..=2, 1u32..=2, -5i64..=5), 1..5).prop_map(|ts| {
        let mut out = SymPoly::zero();
        for (a, ea, b, coeff) in ts {
            let mut m = Monomial::new();
            if ea > 0 {
                m.insert(Var::C(a), ea);
            }
            *m.entry(Var::C(b)).or_insert(0) += 1;
            out.add_term(m, q(coeff));
        }
        out
    })
}

proptest! {
    #[test]
    fn newton_at_any_root_count(n in 1u32..=6, roots in 1usize..=5) {
        prop_assert_eq!(at_roots(&newton_class(n).unwrap(), roots), power_sum(roots, n));
    }

    #[test]
    fn elementary_roundtrip(poly in random_c_poly()) {
        // six roots suffice for polynomials of c-degree at most 6
        let roots = 6;
        let back = to_elementary(&at_roots(&poly, roots), roots, 1, &Var::C).unwrap();
        prop_assert_eq!(back, poly);
    }

    #[test]
    fn series_division_inverts_multiplication(
        a in prop::collection::vec(-9i64..=9, 8),
        b in prop::collection::vec(-9i64..=9, 8),
    ) {
        let mut b = b;
        if b[0] == 0 { b[0] = 1; }
        let sa = Series::new(a.iter().map(|&x| q(x)).collect(), 8);
        let sb = Series::new(b.iter().map(|&x| q(x)).collect(), 8);
        prop_assert_eq!(sa.mul(&sb).div(&sb).unwrap(), sa);
    }

    #[test]
    fn ltilde_is_multiplicative(n in 1usize..=6, d in 3i64..=7) {
        let table = ltilde_coeffs(n, d).unwrap();
        let two_d = Rational::from_integer(num_traits::pow(exactla::BigInt::from(2), d as usize));
        for (part, coeff) in table {
            let prod = part.iter().fold(two_d.clone(), |acc, &i| acc * lambda(i).unwrap());
            prop_assert_eq!(coeff, prod);
        }
    }
}
