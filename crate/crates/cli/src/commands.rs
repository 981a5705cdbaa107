use std::collections::BTreeMap;

use cechains::{wordlength_ss, CEComplex};
use charclasses::{
    bernoulli, compare_rings, grw_kappa_degrees, kappa_borel_relation, lambda, ltilde_coeffs, newton_class,
};
use quadmod::hyperbolic;
use rayon::prelude::*;
use schurstab::{ce_page_bound, e2_page_bound, stability_bounds, total_bound};
use spinvariants::ring::{poincare_series, stable_ring, OutFnTable, Provenance};
use spinvariants::{invariant_ce_complex, min_stable_genus, InvError};

use crate::config::RunConfig;
use crate::glie::truncated_g;
use crate::table::ResultTable;
use crate::{selftest, CliError};

pub const COMMANDS: [&str; 8] = ["dims", "ce", "ss", "invariants", "stable-ring", "stability", "genus", "selftest"];

pub(crate) fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Compute(e.to_string()))
}

fn inv_err(e: InvError) -> CliError {
    match e {
        InvError::UnstableRange { .. } => CliError::Unstable(e.to_string()),
        InvError::Dimension(_) => CliError::Config(e.to_string()),
        other => CliError::Compute(other.to_string()),
    }
}

fn load_table(c: &RunConfig) -> Result<OutFnTable, CliError> {
    match &c.table {
        None => Ok(OutFnTable::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            OutFnTable::from_json(&text).map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

pub fn run(command: &str, c: &RunConfig) -> Result<ResultTable, CliError> {
    c.validate()?;
    match command {
        "dims" => dims(c),
        "ce" => ce(c),
        "ss" => ss(c),
        "invariants" => invariants(c),
        "stable-ring" => stable(c),
        "stability" => stability(c),
        "genus" => genus(c),
        "selftest" => selftest::run(c),
        other => Err(CliError::Config(format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn dims(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (d, g, maxlen) = (c.d(), c.g(), c.maxlen.unwrap_or(5));
    let qm = hyperbolic(g, d).map_err(|e| CliError::Config(e.to_string()))?;
    let rows: Vec<(usize, i64, usize, String)> = pool(c.jobs())?.install(|| {
        (3..=maxlen.max(2))
            .into_par_iter()
            .map(|k| {
                let exact = dercomplex::g_dim(&qm, k);
                let schur = schurstab::der_omega_dim(k, d, 2 * g).to_string();
                (k, schurstab::u_tilde_degree(k, d), exact, schur)
            })
            .collect()
    });
    let mut t = ResultTable::new("dims", c.describe(), &["k", "degree", "dim", "schur_dim", "agree"]);
    t.window = format!("word length 3..={maxlen}");
    t.justification = "exact kernel of the bracketing map against the Schur functor of the twisted U(k); no stability needed".into();
    for (k, deg, dim, schur) in rows {
        let agree = dim.to_string() == schur;
        t.push([k.to_string(), deg.to_string(), dim.to_string(), schur, agree.to_string()]);
    }
    Ok(t)
}

/// Largest total degree where the truncation `word length ≤ maxlen` does not matter.
fn exact_through(d: i64, maxlen: usize) -> i64 {
    (maxlen as i64 - 1) * (d - 1) - 1
}

fn ce(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (d, g, maxlen) = (c.d(), c.g(), c.maxlen.unwrap_or(5));
    let exact = exact_through(d, maxlen);
    let maxdeg = c.maxdeg.unwrap_or(exact);
    let qm = hyperbolic(g, d).map_err(|e| CliError::Config(e.to_string()))?;
    let (lie, _) = truncated_g(&qm, maxlen)?;
    let cx = CEComplex::new(&lie, (maxdeg / d).max(0) as usize + 1, maxdeg);
    let h = cx.bigraded_homology().map_err(|e| CliError::Compute(e.to_string()))?;
    let mut t = ResultTable::new("ce", c.describe(), &["p", "q", "n", "dim"]);
    t.window = format!("word length ≤ {maxlen}, total degree ≤ {maxdeg}");
    t.justification = format!("generators of word length > {maxlen} have suspended degree > {exact} + 1; exact through total degree {exact}");
    for (p, q, dim) in h.support() {
        t.push([p, q, p + q, dim as i64]);
    }
    Ok(t)
}

fn ss(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (d, g, maxlen) = (c.d(), c.g(), c.maxlen.unwrap_or(5));
    let exact = exact_through(d, maxlen);
    let maxdeg = c.maxdeg.unwrap_or(exact);
    let pages = c.pages.unwrap_or(3);
    let qm = hyperbolic(g, d).map_err(|e| CliError::Config(e.to_string()))?;
    let (lie, _) = truncated_g(&qm, maxlen)?;
    let s = wordlength_ss(&lie, pages, maxdeg).map_err(|e| CliError::Compute(e.to_string()))?;
    let mut t = ResultTable::new("ss", c.describe(), &["page", "p", "q", "dim"]);
    t.window = format!("word length ≤ {maxlen}, total degree ≤ {maxdeg}, pages 1..={pages}");
    t.justification = format!(
        "exact through total degree {exact}; E2 matches CE of the homology: {}; converges: {}",
        s.e2_agrees(),
        s.converges()
    );
    for (r, table) in &s.pages {
        for (p, q, dim) in table.support() {
            t.push([r.to_string(), p.to_string(), q.to_string(), dim.to_string()]);
        }
    }
    for (p, q, dim) in s.e_infinity.support() {
        t.push(["inf".to_string(), p.to_string(), q.to_string(), dim.to_string()]);
    }
    Ok(t)
}

fn invariants(c: &RunConfig) -> Result<ResultTable, CliError> {
    let d = c.d();
    let maxdeg = c.maxdeg.unwrap_or(4 * d);
    let g = c.g.unwrap_or_else(|| min_stable_genus(d, maxdeg));
    let cx = invariant_ce_complex(d, g, maxdeg).map_err(inv_err)?;
    let mut t = ResultTable::new("invariants", c.describe(), &["degree", "chain_dim", "cohomology_dim"]);
    t.window = format!("total degree ≤ {maxdeg} at g = {g}");
    t.justification = format!(
        "matchings span the invariants of V^(⊗K) when 2g {} K; minimal stable genus for this window is {}",
        if d % 2 == 1 { "≥" } else { ">" },
        min_stable_genus(d, maxdeg)
    );
    for n in 0..=maxdeg {
        let chain = cx.chain_dims.get(&n).copied().unwrap_or(0);
        let h = cx.homology_dims.get(&n).copied().unwrap_or(0);
        if chain > 0 || h > 0 {
            t.push([n as usize, chain, h]);
        }
    }
    Ok(t)
}

fn stable(c: &RunConfig) -> Result<ResultTable, CliError> {
    let d = c.d();
    let maxdeg = c.maxdeg.unwrap_or(12);
    let table = load_table(c)?;
    let r = stable_ring(d, &table, maxdeg).map_err(inv_err)?;
    let mut t = ResultTable::new("stable-ring", c.describe(), &["section", "label", "degree", "value"]);
    t.window = format!("degree ≤ {maxdeg}");
    t.justification = if r.lambda_unknown {
        "d even: only Borel classes; the λ-side is not determined by the input table".into()
    } else {
        "Borel classes plus one λ-class per basis element of the supplied homology of Out(F_{n+1})".into()
    };
    for gen in &r.generators {
        let kind = match gen.provenance {
            Provenance::Borel { .. } => "borel",
            Provenance::Lambda { .. } => "lambda",
        };
        t.push(["generator", &gen.label, &gen.degree.to_string(), kind]);
    }
    for (n, coeff) in poincare_series(&r, maxdeg.max(0) as usize).iter().enumerate() {
        t.push(["poincare".to_string(), String::new(), n.to_string(), coeff.to_string()]);
    }
    Ok(t)
}

fn stability(c: &RunConfig) -> Result<ResultTable, CliError> {
    let d = c.d();
    let maxdeg = c.maxdeg.unwrap_or(2 * d);
    let ell = c.ell.unwrap_or(0);
    let gmin = c.g_min.unwrap_or_else(|| min_stable_genus(d, maxdeg));
    let gmax = c.g_max.unwrap_or(gmin + 1);
    let mut t = ResultTable::new("stability", c.describe(), &["section", "quantity", "p", "q", "g", "value"]);
    t.window = format!("degree ≤ {maxdeg}, g in {gmin}..={gmax}");
    t.justification = format!("bounds are ranges in g for isomorphism; observed dims computed at g ≥ {}", min_stable_genus(d, maxdeg));
    let m = maxdeg.max(0) as usize;
    for k in 0..=m {
        t.push(["bound", "total", "", &k.to_string(), "", &total_bound(k).to_string()]);
        t.push(["bound", "coefficients", "", &k.to_string(), "", &stability_bounds(k, ell).0.to_string()]);
    }
    for p in 0..=m {
        for q in 0..=(m - p) {
            t.push(["bound", "ce_page", &p.to_string(), &q.to_string(), "", &ce_page_bound(p, q, d).to_string()]);
            t.push(["bound", "e2_page", &p.to_string(), &q.to_string(), "", &e2_page_bound(p, q).to_string()]);
        }
    }
    let observed: Vec<Result<(usize, BTreeMap<i64, usize>), CliError>> = pool(c.jobs())?.install(|| {
        (gmin..=gmax)
            .into_par_iter()
            .map(|g| invariant_ce_complex(d, g, maxdeg).map(|cx| (g, cx.chain_dims)).map_err(inv_err))
            .collect()
    });
    let observed: Vec<(usize, BTreeMap<i64, usize>)> = observed.into_iter().collect::<Result<_, _>>()?;
    for (g, dims) in &observed {
        for (n, dim) in dims {
            t.push(["observed", "invariant_chains", "", &n.to_string(), &g.to_string(), &dim.to_string()]);
        }
    }
    if observed.len() >= 2 {
        let (a, b) = (&observed[observed.len() - 2].1, &observed[observed.len() - 1].1);
        t.push(["observed", "constant_last_two", "", "", "", &(a == b).to_string()]);
    }
    Ok(t)
}

fn partition(p: &[usize]) -> String {
    format!("({})", p.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn genus(c: &RunConfig) -> Result<ResultTable, CliError> {
    let d = c.d();
    let i = c.i.unwrap_or(1);
    let maxdeg = c.maxdeg.unwrap_or(4 * i as i64 - 2);
    let cls = |e: charclasses::ClassError| CliError::Config(e.to_string());
    let mut t = ResultTable::new("genus", c.describe(), &["section", "key", "value"]);
    t.window = format!("i = {i}, κ-degree ≤ {maxdeg}");
    t.justification = "formal identities; no stability range involved".into();
    let top = (2 * i as u32 - 1).max(3);
    for n in 1..=top {
        t.push(["newton".to_string(), format!("s{n}"), newton_class(n).map_err(cls)?.to_string()]);
    }
    let s = ((d - 1) / 2) as usize;
    for k in 1..=(i + s) {
        t.push(["bernoulli".to_string(), format!("B{k}"), bernoulli(k).map_err(cls)?.to_string()]);
        t.push(["lambda".to_string(), format!("lambda{k}"), lambda(k).map_err(cls)?.to_string()]);
    }
    for (p, coeff) in ltilde_coeffs(i + s, d).map_err(cls)? {
        t.push(["ltilde".to_string(), partition(&p), coeff.to_string()]);
    }
    if d % 2 == 1 {
        let r = kappa_borel_relation(i, d).map_err(cls)?;
        t.push(["relation".to_string(), "lhs".to_string(), format!("{} s{}(eta)", r.lhs_coefficient, 2 * i - 1)]);
        t.push(["relation".to_string(), "degree".to_string(), r.degree.to_string()]);
        for (p, coeff) in &r.rhs {
            t.push(["relation".to_string(), format!("kappa{}", partition(p)), coeff.to_string()]);
        }
        t.push(["relation".to_string(), "single_partition".to_string(), r.single_partition_coefficient().to_string()]);
        t.push(["relation".to_string(), "nontrivial".to_string(), r.nontrivial().to_string()]);
    } else {
        t.push(["relation", "unsupported", "d even"]);
    }
    for k in grw_kappa_degrees(d, maxdeg).map_err(cls)? {
        t.push([
            "kappa".to_string(),
            charclasses::poly::monomial_string(&k.monomial),
            k.kappa_degree.to_string(),
        ]);
    }
    if d % 2 == 1 {
        let cmp = compare_rings(d, maxdeg, &load_table(c)?).map_err(cls)?;
        for row in &cmp.counts {
            t.push(["compare".to_string(), format!("degree {}", row.degree), format!("aut {} diff {}", row.aut, row.diff)]);
        }
        for (label, deg) in &cmp.odd_aut_generators {
            t.push(["compare".to_string(), "odd_generator".to_string(), format!("{label} in degree {deg}")]);
        }
    }
    Ok(t)
}
