/// Stability range of a polynomial coefficient system: `H_k(Γ_g; F)` is stable for
/// `g > bound` and surjective at `g = bound`. Returns `(iso_above, surj_at)`.
pub fn stability_bounds(k: usize, ell: usize) -> (usize, usize) {
    let b = 2 * k + ell + 4;
    (b, b)
}

/// Coefficient degree of the Schur functor giving CE `p`-chains of `𝔤_g`.
pub fn ce_polynomial_degree(p: usize, d: i64) -> usize {
    assert!(d >= 3, "d ≥ 3");
    3 * p / d as usize
}

/// Range for the first page `H_q(Γ_g; C^CE_p(𝔤_g))`.
pub fn ce_page_bound(p: usize, q: usize, d: i64) -> usize {
    stability_bounds(q, ce_polynomial_degree(p, d)).0
}

/// Range for the second page, which uses `⌊3p/d⌋ ≤ 2p`.
pub fn e2_page_bound(p: usize, q: usize) -> usize {
    2 * p + 2 * q + 4
}

/// Range for the hyperhomology and for `H^k` of the stable space.
pub fn total_bound(k: usize) -> usize {
    stability_bounds(k, 0).0
}

/// Range for the twisted blocks with `t` tensor factors of `Π`.
pub fn block_bound(p: usize, q: usize, t: usize) -> usize {
    2 * p + 2 * q + 2 * t + 4
}

/// Whether `g` lies in the isomorphism range for `(k, ℓ)`.
pub fn is_stable(g: usize, k: usize, ell: usize) -> bool {
    g > stability_bounds(k, ell).0
}

/// Degrees `4i − d` of the basis `π_i` of `Π`, `i ≥ ⌈(d+1)/4⌉`, up to `maxdeg`.
pub fn pi_degrees(d: i64, maxdeg: i64) -> Vec<i64> {
    assert!(d >= 3, "d ≥ 3");
    let first = (d + 1 + 3) / 4;
    (first..).map(|i| 4 * i - d).take_while(|&deg| deg <= maxdeg).collect()
}

/// Degrees occurring in `𝒟(k) = Π^{⊗k}` up to `maxdeg`, with multiplicities.
pub fn d_degrees(k: usize, d: i64, maxdeg: i64) -> std::collections::BTreeMap<i64, u64> {
    let pi = pi_degrees(d, maxdeg);
    let mut cur = std::collections::BTreeMap::from([(0i64, 1u64)]);
    for _ in 0..k {
        let mut next = std::collections::BTreeMap::new();
        for (&a, &m) in &cur {
            for &b in &pi {
                if a + b <= maxdeg {
                    *next.entry(a + b).or_insert(0) += m;
                }
            }
        }
        cur = next;
    }
    cur
}
