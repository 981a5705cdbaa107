use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{GeneratorSet, LieError};

/// Solve `∏_k (1−t^k)^{−a_k}` (even `k·d'`) `· ∏_k (1+t^k)^{a_k}` (odd `k·d'`) `= target`
/// for `a_1..a_N`, degree by degree. `target[0]` must be 1.
pub fn pbw_solve(target: &[BigInt], gen_degree: i64) -> Vec<BigInt> {
    let n = target.len().saturating_sub(1);
    let mut a = vec![BigInt::zero(); n + 1];
    let mut cur = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return a;
    }
    cur[0] = BigInt::one();
    for k in 1..=n {
        a[k] = &target[k] - &cur[k];
        let odd = (k as i64 * gen_degree).rem_euclid(2) == 1;
        multiply_factor(&mut cur, k, &a[k], odd);
    }
    a
}

/// Multiply a truncated series by `(1−t^k)^{−m}` or, if `odd`, by `(1+t^k)^m`.
pub fn multiply_factor(s: &mut [BigInt], k: usize, m: &BigInt, odd: bool) {
    let n = s.len() - 1;
    // binomial series coefficients of the factor, up to t^n
    let mut coeff = vec![BigInt::zero(); n / k + 1];
    coeff[0] = BigInt::one();
    for j in 1..coeff.len() {
        let jj = BigInt::from(j);
        coeff[j] = if odd {
            // C(m, j)
            &coeff[j - 1] * (m - BigInt::from(j - 1)) / &jj
        } else {
            // C(m + j − 1, j)
            &coeff[j - 1] * (m + BigInt::from(j - 1)) / &jj
        };
    }
    let old = s.to_vec();
    for (i, v) in s.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for j in 0..=i / k {
            if !coeff[j].is_zero() {
                acc += &coeff[j] * &old[i - j * k];
            }
        }
        *v = acc;
    }
}

/// Dimension of the word-length-`k` part of the free graded Lie algebra, from the
/// Poincaré–Birkhoff–Witt identity against `1/(1 − n t)`.
pub fn pbw_dim_oracle(g: &GeneratorSet, k: usize) -> Result<u64, LieError> {
    if k == 0 {
        return Err(LieError::ZeroLength);
    }
    if !g.is_uniform() {
        return Err(LieError::Unsupported("PBW oracle needs a single generator degree".into()));
    }
    let n = BigInt::from(g.len());
    let mut target = vec![BigInt::one()];
    for i in 1..=k {
        let prev = target[i - 1].clone();
        target.push(prev * &n);
    }
    let a = pbw_solve(&target, g.gen_degree());
    Ok(u64::try_from(&a[k]).expect("dimension fits in u64"))
}

/// Classical necklace count `(1/k) Σ_{e|k} μ(k/e) n^e`.
pub fn witt_number(n: u64, k: u64) -> u64 {
    let mut s: i128 = 0;
    for e in 1..=k {
        if k % e == 0 {
            s += mobius(k / e) as i128 * (n as i128).pow(e as u32);
        }
    }
    (s / k as i128) as u64
}

fn mobius(mut m: u64) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if m > 1 {
        r = -r;
    }
    r
}
