//! A quick pass over every engine with pinned expected values.

use std::collections::BTreeMap;
use std::sync::Arc;

use cechains::CEComplex;
use exactla::{q, qf, SparseMatrix};
use gradedlie::{bracket, center_up_to, lyndon_basis, pbw_dim_oracle, GeneratorSet, LieElement, Presentation};
use hpl::{contraction_from_split, split_complex, ChainComplex};
use quadmod::{generator_images, hyperbolic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spinvariants::explicit::{invariants_kernel, Explicit};
use spinvariants::{invariant_ce_complex, min_stable_genus};

use crate::commands::pool;
use crate::config::RunConfig;
use crate::glie::truncated_g;
use crate::table::ResultTable;
use crate::CliError;

type Check = fn(u64) -> Result<String, String>;

const CHECKS: [(&str, Check); 10] = [
    ("lyndon_vs_pbw", lyndon_vs_pbw),
    ("g_dims_vs_schur", g_dims_vs_schur),
    ("theta_identity", theta_identity),
    ("ce_d_squared", ce_d_squared),
    ("contraction", contraction),
    ("tensor_invariants", tensor_invariants),
    ("kontsevich_d3", kontsevich_d3),
    ("genus_identities", genus_identities),
    ("stability_bounds", stability_bounds),
    ("center", center),
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lyndon_vs_pbw(_: u64) -> Result<String, String> {
    for deg in [2i64, 3] {
        let gens = GeneratorSet::numbered("x", 2, deg).map_err(|e| e.to_string())?;
        for k in 1..=6 {
            let a = lyndon_basis(&gens, k).map_err(|e| e.to_string())?.len() as u64;
            let b = pbw_dim_oracle(&gens, k).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("degree {deg}, k = {k}: {a} vs {b}"))?;
        }
    }
    Ok("k ≤ 6, two generators of degree 2 and 3".into())
}

fn g_dims_vs_schur(_: u64) -> Result<String, String> {
    for d in [3i64, 4] {
        for g in 1..=2 {
            let qm = hyperbolic(g, d).map_err(|e| e.to_string())?;
            for k in 3..=5 {
                let a = dercomplex::g_dim(&qm, k);
                let b = schurstab::der_omega_dim(k, d, 2 * g);
                ensure(b == a.into(), || format!("d={d} g={g} k={k}: {a} vs {b}"))?;
            }
        }
    }
    Ok("d ∈ {3,4}, g ≤ 2, k ≤ 5".into())
}

fn theta_identity(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 0;
    for d in [3i64, 4] {
        let h = hyperbolic(2, d).map_err(|e| e.to_string())?;
        let gens = h.generators();
        for _ in 0..20 {
            let k = rng.gen_range(1..=3);
            let basis = gradedlie::algebra(gens).basis(k);
            let mut xi = LieElement::zero(gens);
            for _ in 0..3 {
                let b = basis.elems[rng.gen_range(0..basis.len())];
                xi = xi.add_scaled(&LieElement::basis(gens, b), &q(rng.gen_range(-3..=3))).map_err(|e| e.to_string())?;
            }
            let x: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
            let t = dercomplex::theta(&h, &x, &xi).map_err(|e| e.to_string())?;
            let xe = generator_images(&x.iter().map(|&c| vec![c]).collect::<Vec<_>>(), gens)[0].clone();
            let lhs = dercomplex::ev_omega(&t, &h).map_err(|e| e.to_string())?;
            let rhs = bracket(&xe, &xi).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("d={d}: mismatch"))?;
            n += 1;
        }
    }
    Ok(format!("{n} random pairs"))
}

fn ce_d_squared(_: u64) -> Result<String, String> {
    let qm = hyperbolic(2, 3).map_err(|e| e.to_string())?;
    let (lie, _) = truncated_g(&qm, 5).map_err(|e| e.to_string())?;
    ensure(lie.check_jacobi(), || "Jacobi fails".into())?;
    let cx = CEComplex::new(&lie, 3, 10);
    let mut n = 0;
    for p in 1..=3 {
        for deg in 0..=10 {
            for w in cx.basis(p, deg) {
                let dw = cx.differential(w).map_err(|e| e.to_string())?;
                let ddw = cx.apply(&dw).map_err(|e| e.to_string())?;
                ensure(ddw.is_empty(), || format!("δ² ≠ 0 on {w:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} basis words of 𝔤_2 truncated at word length 5, d = 3"))
}

fn contraction(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let mut degrees = Vec::new();
        let mut trip = Vec::new();
        let mut expected = BTreeMap::new();
        for k in 0..4i64 {
            for _ in 0..rng.gen_range(0..3) {
                degrees.push(k);
                *expected.entry(k).or_insert(0usize) += 1;
            }
            if k > 0 {
                for _ in 0..rng.gen_range(0..3) {
                    let a = degrees.len();
                    degrees.push(k);
                    degrees.push(k - 1);
                    trip.push((a + 1, a, q(rng.gen_range(1..4))));
                }
            }
        }
        let n = degrees.len();
        let d = SparseMatrix::from_triplets(n, n, trip).map_err(|e| e.to_string())?;
        let c = ChainComplex::new(degrees, d).map_err(|e| e.to_string())?;
        let h: BTreeMap<i64, usize> = c.homology_dims().into_iter().filter(|(_, v)| *v > 0).collect();
        ensure(h == expected, || format!("homology {h:?} vs {expected:?}"))?;
        let con = contraction_from_split(&split_complex(&c)).map_err(|e| e.to_string())?;
        con.check().map_err(|e| e.to_string())?;
        ensure(con.side_conditions(), || "side conditions fail".into())?;
    }
    Ok("20 random split complexes".into())
}

fn tensor_invariants(_: u64) -> Result<String, String> {
    let mut got = Vec::new();
    for g in 1..=3 {
        let v = Explicit::hyperbolic(g, 3).map_err(|e| e.to_string())?;
        got.push(invariants_kernel(&v, 4).len());
    }
    ensure(got == [2, 3, 3], || format!("dim (V^⊗4)^inv for g = 1,2,3: {got:?}"))?;
    Ok("dim (V^⊗4)^inv = 2, 3, 3 for g = 1, 2, 3".into())
}

fn kontsevich_d3(_: u64) -> Result<String, String> {
    let g = min_stable_genus(3, 7);
    let cx = invariant_ce_complex(3, g, 7).map_err(|e| e.to_string())?;
    let h: BTreeMap<i64, usize> = cx.homology_dims.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect();
    ensure(h == BTreeMap::from([(0, 1), (6, 1)]), || format!("{h:?}"))?;
    Ok(format!("H = {h:?} through degree 7 at g = {g}"))
}

fn genus_identities(_: u64) -> Result<String, String> {
    let err = |e: charclasses::ClassError| e.to_string();
    ensure(charclasses::newton_class(2).map_err(err)?.to_string() == "c1^2 - 2 c2", || "s2".into())?;
    ensure(charclasses::newton_class(3).map_err(err)?.to_string() == "c1^3 - 3 c1 c2 + 3 c3", || "s3".into())?;
    ensure(charclasses::lambda(1).map_err(err)? == qf(1, 12), || "λ1".into())?;
    ensure(charclasses::lambda(2).map_err(err)? == qf(-1, 720), || "λ2".into())?;
    ensure(charclasses::kappa_borel_relation(1, 3).map_err(err)?.nontrivial(), || "relation".into())?;
    let two = charclasses::grw_kappa_degrees(3, 2).map_err(err)?.len();
    ensure(two == 2, || format!("κ-degree 2 count {two}"))?;
    Ok("Newton, λ, κ-relation and GRW counts".into())
}

fn stability_bounds(_: u64) -> Result<String, String> {
    for k in 0..10 {
        ensure(schurstab::total_bound(k) == 2 * k + 4, || format!("total bound at {k}"))?;
        for ell in 0..4 {
            ensure(schurstab::stability_bounds(k, ell).0 == 2 * k + ell + 4, || format!("bound ({k},{ell})"))?;
        }
        for p in 0..6 {
            ensure(schurstab::ce_page_bound(p, k, 3) == 2 * k + p + 4, || format!("page bound ({p},{k})"))?;
        }
    }
    Ok("2k+4, 2k+ℓ+4 and 2q+⌊3p/d⌋+4".into())
}

fn center(_: u64) -> Result<String, String> {
    let pres = |g: usize| -> Result<Presentation, String> {
        let names: Vec<String> = (1..=g).flat_map(|i| [format!("e{i}"), format!("f{i}")]).collect();
        let gens = Arc::new(GeneratorSet::new(&names, 2).map_err(|e| e.to_string())?);
        let mut omega = LieElement::zero(&gens);
        for i in 0..g {
            let b = bracket(&LieElement::generator(&gens, 2 * i), &LieElement::generator(&gens, 2 * i + 1))
                .map_err(|e| e.to_string())?;
            omega = omega.add(&b).map_err(|e| e.to_string())?;
        }
        Presentation::new(gens, vec![omega]).map_err(|e| e.to_string())
    };
    ensure(center_up_to(&pres(2)?, 5).is_empty(), || "g = 2 center nonempty".into())?;
    ensure(!center_up_to(&pres(1)?, 3).is_empty(), || "g = 1 center empty".into())?;
    Ok("g = 2 centerless through length 5; g = 1 has center".into())
}

pub fn run(c: &RunConfig) -> Result<ResultTable, CliError> {
    let seed = c.seed();
    let results: Vec<(&str, Result<String, String>)> =
        pool(c.jobs())?.install(|| CHECKS.par_iter().map(|(name, f)| (*name, f(seed))).collect());
    let mut t = ResultTable::new("selftest", c.describe(), &["check", "status", "detail"]);
    t.window = "small fixed instances".into();
    t.justification = format!("seeded with {seed}");
    let mut failed = Vec::new();
    for (name, r) in results {
        match r {
            Ok(detail) => t.push([name, "pass", &detail]),
            Err(detail) => {
                failed.push(name.to_string());
                t.push([name, "fail", &detail]);
            }
        }
    }
    if failed.is_empty() {
        Ok(t)
    } else {
        Err(CliError::SelftestFailed(Box::new(t), failed))
    }
}
