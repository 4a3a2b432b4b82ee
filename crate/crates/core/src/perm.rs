//! Permutation ranking helpers for splitting the `n!` labelings into
//! contiguous ranges.

use num_bigint::BigUint;
use num_traits::One;

/// `n!` as a machine integer; `None` on overflow (`n > 20`).
pub fn factorial_u64(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// The product `lo * (lo + 1) * ... * hi`, or 1 when `lo > hi`.
pub fn rising_range(lo: u64, hi: u64) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`, 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The permutation of `0..n` with lexicographic rank `rank`, decoded from
/// its factorial-base digits.
pub fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial_u64(i).expect("rank range fits in u64");
        let d = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(d));
    }
    out
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn rank(perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut r = 0u64;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count() as u64;
        r += smaller * factorial_u64(n - 1 - i).expect("rank fits in u64");
    }
    r
}

/// Advances to the lexicographically next permutation; returns `false`
/// (leaving the slice sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrank_walks_in_lex_order() {
        let mut p: Vec<usize> = (0..5).collect();
        let mut r = 0;
        loop {
            assert_eq!(unrank(5, r), p);
            assert_eq!(rank(&p), r);
            r += 1;
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(r, 120);
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn small_numbers() {
        assert_eq!(factorial_u64(20), Some(2_432_902_008_176_640_000));
        assert_eq!(factorial_u64(21), None);
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::from(0u32));
        assert_eq!(rising_range(3, 5), BigUint::from(60u32));
        assert_eq!(rising_range(4, 3), BigUint::one());
    }
}
