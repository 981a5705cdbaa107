use num_bigint::BigInt;
use num_traits::One;

/// Partition as a weakly decreasing list of positive parts.
pub type Partition = Vec<usize>;

/// All partitions of `k`, in reverse lexicographic order (`(k)` first, `1^k` last).
pub fn partitions(k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Multiplicities `m_i` of the parts.
pub fn multiplicities(lambda: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in lambda {
        match out.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Centralizer order `z_λ = ∏ i^{m_i} m_i!`.
pub fn z(lambda: &[usize]) -> BigInt {
    let mut acc = BigInt::one();
    for (i, m) in multiplicities(lambda) {
        for j in 1..=m {
            acc *= BigInt::from(i) * BigInt::from(j);
        }
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Size of the conjugacy class `k!/z_λ`.
pub fn class_size(lambda: &[usize]) -> BigInt {
    factorial(lambda.iter().sum()) / z(lambda)
}

/// Sign of a permutation of cycle type `λ`.
pub fn sign(lambda: &[usize]) -> i64 {
    let even_cycles = lambda.iter().filter(|&&p| p % 2 == 0).count();
    if even_cycles % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cycle type of a permutation given in one-line notation.
pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Sorted union of two partitions.
pub fn union(a: &[usize], b: &[usize]) -> Partition {
    let mut out: Partition = a.iter().chain(b).copied().collect();
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// All ways to split the parts of `lambda` into a sub-multiset of total `a` and the rest.
pub fn splits(lambda: &[usize], a: usize) -> Vec<(Partition, Partition)> {
    let mults = multiplicities(lambda);
    let mut out = Vec::new();
    fn rec(
        mults: &[(usize, usize)],
        i: usize,
        rest: usize,
        left: &mut Partition,
        right: &mut Partition,
        out: &mut Vec<(Partition, Partition)>,
    ) {
        if i == mults.len() {
            if rest == 0 {
                out.push((left.clone(), right.clone()));
            }
            return;
        }
        let (p, m) = mults[i];
        for take in 0..=m {
            if take * p > rest {
                break;
            }
            let (l0, r0) = (left.len(), right.len());
            left.extend(std::iter::repeat(p).take(take));
            right.extend(std::iter::repeat(p).take(m - take));
            rec(mults, i + 1, rest - take * p, left, right, out);
            left.truncate(l0);
            right.truncate(r0);
        }
    }
    rec(&mults, 0, a, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Möbius function.
pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}
