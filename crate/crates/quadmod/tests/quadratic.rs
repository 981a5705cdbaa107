use exactla::q;
use gradedlie::{format_element, parse_element, substitute};
use proptest::prelude::*;
use quadmod::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// q by walking unit steps with q(x ± e_i) = q(x) + q(±e_i) ± ⟨x, e_i⟩.
fn q_walk(m: &QuadraticModule, x: &[i64]) -> i64 {
    let n = m.rank();
    let mut cur = vec![0i64; n];
    let mut val = 0i64;
    for i in 0..n {
        let e: Vec<i64> = (0..n).map(|k| (k == i) as i64).collect();
        let step = x[i].signum();
        let q_step = if step > 0 { m.qvals()[i] } else { -m.qvals()[i] + m.form(&e, &e) };
        for _ in 0..x[i].abs() {
            let se: Vec<i64> = e.iter().map(|v| v * step).collect();
            val += q_step + m.form(&cur, &se);
            cur[i] += step;
        }
    }
    m.target().reduce(val)
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

/// A product of random generators of Aut(H_g): GL_g blocks, even shears, and e_i/f_i swaps.
fn random_automorphism(rng: &mut ChaCha8Rng, g: usize, d: i64, steps: usize) -> IsometryMatrix {
    let n = 2 * g;
    let eps = if d % 2 == 0 { 1 } else { -1 };
    let mut m = IsometryMatrix::identity(n);
    for _ in 0..steps {
        let mut s = identity(n);
        match rng.gen_range(0..3) {
            0 if g > 1 => {
                // e_j ↦ e_j + k e_i, f_i ↦ f_i − k f_j
                let i = rng.gen_range(0..g);
                let mut j = rng.gen_range(0..g);
                while j == i {
                    j = rng.gen_range(0..g);
                }
                let k = rng.gen_range(-2..=2);
                s[i][j] = k;
                s[g + j][g + i] = -k;
            }
            1 => {
                // f_j ↦ f_j + Σ S_ij e_i with S = −ε Sᵀ and even diagonal
                let i = rng.gen_range(0..g);
                let j = rng.gen_range(0..g);
                let k = rng.gen_range(-2..=2);
                if i == j {
                    if eps == -1 {
                        s[i][g + i] = 2 * k;
                    }
                } else {
                    s[i][g + j] = k;
                    s[j][g + i] = -eps * k;
                }
            }
            _ => {
                let i = rng.gen_range(0..g);
                s[i][i] = 0;
                s[g + i][g + i] = 0;
                s[g + i][i] = 1;
                s[i][g + i] = eps;
            }
        }
        m = IsometryMatrix::new(s).compose(&m);
    }
    m
}

#[test]
fn hyperbolic_grams() {
    assert_eq!(hyperbolic(1, 3).unwrap().gram(), &vec![vec![0, 1], vec![-1, 0]]);
    assert_eq!(hyperbolic(1, 4).unwrap().gram(), &vec![vec![0, 1], vec![1, 0]]);
    let h = hyperbolic(2, 3).unwrap();
    assert_eq!(
        h.gram(),
        &vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]]
    );
    let sum = hyperbolic(1, 3).unwrap().orthogonal_sum(&hyperbolic(1, 3).unwrap()).unwrap();
    assert_eq!(det(sum.gram()), 1);
    assert!(hyperbolic(0, 3).is_err());
    assert!(hyperbolic(1, 2).is_err());
}

#[test]
fn targets() {
    assert_eq!(QTarget::for_dimension(4), QTarget::InfiniteCyclic);
    assert_eq!(QTarget::for_dimension(5), QTarget::OrderTwo);
    assert_eq!(QTarget::for_dimension(9), QTarget::OrderTwo);
    for d in [1, 3, 7] {
        assert_eq!(QTarget::for_dimension(d), QTarget::Zero);
    }
}

#[test]
fn construction_checks() {
    assert_eq!(QuadraticModule::new(3, vec![vec![0, 1], vec![1, 0]], vec![0, 0], None).unwrap_err(), QuadError::NotSymmetric);
    assert!(matches!(QuadraticModule::new(4, vec![vec![0, 2], vec![2, 0]], vec![0, 0], None), Err(QuadError::Singular(_))));
    assert_eq!(QuadraticModule::new(4, vec![vec![2, 1], vec![1, 0]], vec![0, 0], None).unwrap_err(), QuadError::BadQ);
    assert!(QuadraticModule::new(4, vec![vec![2, 1], vec![1, 0]], vec![1, 0], None).is_ok());
    // E8 is even unimodular
    let e8 = e8_gram();
    assert_eq!(det(&e8), 1);
    assert!(QuadraticModule::new(8, e8, vec![1; 8], None).is_ok());
}

fn e8_gram() -> IntMatrix {
    let mut g = vec![vec![0i64; 8]; 8];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    for i in 0..8 {
        g[i][i] = 2;
    }
    for (a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

#[test]
fn q_examples() {
    for d in [4, 5, 6, 9] {
        let h = hyperbolic(1, d).unwrap();
        let dq = QTarget::for_dimension(d).reduce(1);
        assert_eq!(q_eval(&h, &[1, 1]).unwrap(), dq);
        assert_eq!(q_eval(&h, &[2, 0]).unwrap(), 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in [3, 7] {
        let h = hyperbolic(2, d).unwrap();
        for _ in 0..20 {
            assert_eq!(q_eval(&h, &random_vec(&mut rng, 4, 5)).unwrap(), 0);
        }
    }
    assert!(q_eval(&hyperbolic(1, 4).unwrap(), &[1]).is_err());
}

#[test]
fn q_hyperbolic_formula_and_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in [3, 4, 5, 6, 8] {
        for g in 1..=3 {
            let h = hyperbolic(g, d).unwrap();
            for _ in 0..30 {
                let x = random_vec(&mut rng, 2 * g, 4);
                let ab: i64 = (0..g).map(|i| x[i] * x[g + i]).sum();
                let v = q_eval(&h, &x).unwrap();
                assert_eq!(v, h.target().reduce(ab));
                assert_eq!(v, q_walk(&h, &x));
            }
        }
    }
    let e8 = QuadraticModule::new(8, e8_gram(), vec![1; 8], None).unwrap();
    for _ in 0..30 {
        let x = random_vec(&mut rng, 8, 3);
        assert_eq!(q_eval(&e8, &x).unwrap(), q_walk(&e8, &x));
        // H J q(x) = ⟨x,x⟩ with H J ∂ι = 2
        assert_eq!(2 * q_eval(&e8, &x).unwrap(), e8.form(&x, &x));
    }
}

#[test]
fn automorphism_examples() {
    let h = hyperbolic(1, 5).unwrap();
    assert!(is_automorphism(&h, &IsometryMatrix::identity(2)).unwrap());
    assert!(!is_automorphism(&h, &IsometryMatrix::new(vec![vec![1, 0], vec![1, 1]])).unwrap());
    assert!(is_automorphism(&h, &IsometryMatrix::new(vec![vec![1, 0], vec![2, 1]])).unwrap());
    // d = 3: only symplecticity matters
    let h3 = hyperbolic(1, 3).unwrap();
    assert!(is_automorphism(&h3, &IsometryMatrix::new(vec![vec![1, 0], vec![1, 1]])).unwrap());
    // d even: orthogonal and q-preserving; the swap is, e ↦ −e alone is
    let h4 = hyperbolic(1, 4).unwrap();
    assert!(is_automorphism(&h4, &IsometryMatrix::new(vec![vec![0, 1], vec![1, 0]])).unwrap());
    assert!(is_automorphism(&h4, &IsometryMatrix::new(vec![vec![-1, 0], vec![0, -1]])).unwrap());
    assert!(!is_automorphism(&h4, &IsometryMatrix::new(vec![vec![1, 0], vec![1, 1]])).unwrap());
    assert!(is_automorphism(&h, &IsometryMatrix::identity(3)).is_err());
}

#[test]
fn wall_condition_matches_for_order_two() {
    // all 2×2 and a sample of 4×4 symplectic matrices with small entries
    let h = hyperbolic(1, 5).unwrap();
    let mut count = 0;
    for a in -3..=3i64 {
        for b in -3..=3i64 {
            for c in -3..=3i64 {
                for dd in -3..=3i64 {
                    if a * dd - b * c != 1 {
                        continue;
                    }
                    let m = IsometryMatrix::new(vec![vec![a, b], vec![c, dd]]);
                    assert_eq!(is_automorphism(&h, &m).unwrap(), even_diagonal_condition(&m, 1));
                    count += 1;
                }
            }
        }
    }
    assert!(count > 50);
    let h2 = hyperbolic(2, 5).unwrap();
    let h2z = hyperbolic(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        // symplectic but not necessarily q-preserving: use d = 3 generators then test at d = 5
        let m = random_automorphism(&mut rng, 2, 3, 6);
        let mut m2 = m.clone();
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..2);
            let t = IsometryMatrix::new({
                let mut s = identity(4);
                s[i][2 + i] = 1;
                s
            });
            m2 = t.compose(&m);
        }
        assert!(is_automorphism(&h2z, &m2).unwrap());
        assert_eq!(is_automorphism(&h2, &m2).unwrap(), even_diagonal_condition(&m2, 2));
    }
}

#[test]
fn omega_examples() {
    let h1 = hyperbolic(1, 3).unwrap();
    let w1 = omega_element(&h1).unwrap();
    assert_eq!(w1, parse_element(h1.generators(), "[e1,f1]").unwrap());
    let h2 = hyperbolic(2, 3).unwrap();
    assert_eq!(omega_element(&h2).unwrap(), parse_element(h2.generators(), "[e1,f1]+[e2,f2]").unwrap());
    for d in [4, 5, 6] {
        let h = hyperbolic(3, d).unwrap();
        let w = omega_element(&h).unwrap();
        assert_eq!(w, parse_element(h.generators(), "[e1,f1]+[e2,f2]+[e3,f3]").unwrap(), "d={d}");
    }
    let e8 = QuadraticModule::new(8, e8_gram(), vec![1; 8], None).unwrap();
    let w = omega_element(&e8).unwrap();
    for c in w.terms().values() {
        assert!((c * q(2)).is_integer());
    }
    assert!(!format_element(&w).is_empty());
}

#[test]
fn omega_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let e8 = QuadraticModule::new(8, e8_gram(), vec![1; 8], None).unwrap();
    let twisted = QuadraticModule::new(4, vec![vec![2, 1], vec![1, 0]], vec![1, 0], None).unwrap();
    let mods = vec![hyperbolic(2, 3).unwrap(), hyperbolic(2, 4).unwrap(), hyperbolic(3, 5).unwrap(), e8, twisted];
    for m in &mods {
        let w = omega_element(m).unwrap();
        for _ in 0..50 {
            let a = random_vec(&mut rng, m.rank(), 4);
            let b = random_vec(&mut rng, m.rank(), 4);
            assert_eq!(pair_l2(m, &w, &a, &b), q(m.form(&a, &b)));
        }
    }
}

#[test]
fn omega_invariant_under_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (g, d) in [(1, 3), (2, 3), (2, 4), (2, 5), (3, 6)] {
        let h = hyperbolic(g, d).unwrap();
        let w = omega_element(&h).unwrap();
        for _ in 0..10 {
            let m = random_automorphism(&mut rng, g, d, 8);
            assert!(is_automorphism(&h, &m).unwrap());
            let images = generator_images(&m.entries, h.generators());
            assert_eq!(substitute(&w, &images).unwrap(), w, "g={g} d={d}");
        }
    }
}

#[test]
fn connected_sum_law() {
    for d in [3, 4, 5] {
        let a = hyperbolic(1, d).unwrap();
        let b = hyperbolic(2, d).unwrap();
        let s = a.orthogonal_sum(&b).unwrap();
        let ws = omega_element(&s).unwrap();
        let n = a.rank();
        let m = b.rank();
        let inc_a: IntMatrix = (0..n + m).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let inc_b: IntMatrix = (0..n + m).map(|i| (0..m).map(|j| (i == n + j) as i64).collect()).collect();
        let wa = substitute(&omega_element(&a).unwrap(), &generator_images(&inc_a, s.generators())).unwrap();
        let wb = substitute(&omega_element(&b).unwrap(), &generator_images(&inc_b, s.generators())).unwrap();
        assert_eq!(ws, wa.add(&wb).unwrap());
    }
}

#[test]
fn adjoints() {
    for d in [3, 4] {
        let h1 = hyperbolic(1, d).unwrap();
        let h2 = hyperbolic(2, d).unwrap();
        let f = standard_inclusion(1, 2);
        let (adj, proj) = adjoint_and_complement(&f, &h1, &h2).unwrap();
        assert_eq!(adj, transpose(&f));
        assert_eq!(matmul(&adj, &f), identity(2));
        assert_eq!(matmul(&adj, &proj), vec![vec![0; 4]; 2]);

        let id = identity(4);
        let (adj, proj) = adjoint_and_complement(&id, &h2, &h2).unwrap();
        assert_eq!(adj, id);
        assert_eq!(proj, vec![vec![0; 4]; 4]);
    }
    // e ↦ e_1, f ↦ f_1 + e_2 is isometric for d odd
    let h1 = hyperbolic(1, 3).unwrap();
    let h2 = hyperbolic(2, 3).unwrap();
    // rows: e1, e2, f1, f2
    let mut f = vec![vec![0; 2]; 4];
    f[0][0] = 1;
    f[2][1] = 1;
    f[1][1] = 1;
    let (adj, proj) = adjoint_and_complement(&f, &h1, &h2).unwrap();
    assert_eq!(matmul(&adj, &f), identity(2));
    for k in 0..4 {
        let x: Vec<i64> = (0..4).map(|i| (i == k) as i64).collect();
        let px = matvec(&proj, &x);
        for j in 0..2 {
            assert_eq!(h2.form(&column(&f, j), &px), 0);
        }
    }
    assert!(matches!(adjoint_and_complement(&vec![vec![1, 0], vec![0, 2], vec![0, 0], vec![0, 0]], &h1, &h2), Err(QuadError::NotIsometric)));
}

#[test]
fn json_roundtrip() {
    let h = hyperbolic(2, 5).unwrap();
    let s = h.to_json();
    let back = QuadraticModule::from_json(&s).unwrap();
    assert_eq!(back.gram(), h.gram());
    assert_eq!(back.generators().names(), h.generators().names());
    let m = QuadraticModule::from_json(r#"{"d":3,"gram":[[0,1],[-1,0]],"q":[0,0]}"#).unwrap();
    assert_eq!(m.rank(), 2);
    assert!(QuadraticModule::from_json(r#"{"d":3,"gram":[[0,1],[1,0]],"q":[0,0]}"#).is_err());
    assert!(QuadraticModule::from_json("not json").is_err());
}

proptest! {
    #[test]
    fn q_additivity(d in 3i64..10, a in prop::collection::vec(-6i64..6, 4), b in prop::collection::vec(-6i64..6, 4)) {
        let h = hyperbolic(2, d).unwrap();
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = q_eval(&h, &s).unwrap();
        let rhs = h.target().reduce(q_eval(&h, &a).unwrap() + q_eval(&h, &b).unwrap() + h.form(&a, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_bilinear(a in prop::collection::vec(-5i64..5, 4), b in prop::collection::vec(-5i64..5, 4), c in prop::collection::vec(-5i64..5, 4)) {
        let h = hyperbolic(2, 4).unwrap();
        let w = omega_element(&h).unwrap();
        let bc: Vec<i64> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
        prop_assert_eq!(pair_l2(&h, &w, &a, &bc), pair_l2(&h, &w, &a, &b) + pair_l2(&h, &w, &a, &c));
    }
}
