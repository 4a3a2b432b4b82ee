//! Ordinal sums of antichains and brooms.
//!
//! For a composition `C = (c_1, ..., c_r)` the poset stacks the antichains
//! with `T_{c_1}` on top and `T_{c_r}` at the bottom: it is built by
//! starting from `T_{c_1}` and attaching each further antichain below.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::enumeration::GenFun;
use crate::error::{Error, Result};
use crate::perm::{factorial, rising_range};
use crate::poset::Poset;

/// The poset of a composition, bottom antichain `T_{c_r}` first.
pub fn composition_poset(composition: &[usize]) -> Result<Poset> {
    if composition.is_empty() || composition.contains(&0) {
        return Err(Error::Param(format!("composition parts must be positive: {composition:?}")));
    }
    let mut parts = composition.iter().rev();
    let mut poset = Poset::antichain(*parts.next().expect("nonempty"))?;
    for &c in parts {
        poset = poset.ordinal_sum(&Poset::antichain(c)?);
    }
    Ok(poset)
}

/// Cumulative coefficients of a composition poset:
/// `b_s = (c_1 + ... + c_j)! * prod_{m > j} (c_m + s)! / s!` where `j` is
/// the part whose partial-sum window contains `s`.
pub fn ordinal_sum_antichains_g(composition: &[usize]) -> Result<GenFun> {
    if composition.is_empty() || composition.contains(&0) {
        return Err(Error::Param(format!("composition parts must be positive: {composition:?}")));
    }
    let total: usize = composition.iter().sum();
    let mut coeffs = Vec::with_capacity(total);
    let mut j = 0;
    let mut prefix = composition[0];
    for s in 0..total {
        while s >= prefix {
            j += 1;
            prefix += composition[j];
        }
        let mut b = factorial(prefix);
        for &c in &composition[j + 1..] {
            b *= rising_range(s as u64 + 1, (c + s) as u64);
        }
        coeffs.push(b);
    }
    Ok(GenFun::cumulative(coeffs))
}

/// The broom `T_n ⊕ C_{k+1}`; just the chain when `n = 0`.
pub fn broom_poset(n: usize, k: usize) -> Result<Poset> {
    let chain = Poset::chain(k + 1)?;
    if n == 0 {
        return Ok(chain);
    }
    Ok(Poset::antichain(n)?.ordinal_sum(&chain))
}

/// Single broom coefficient
/// `a_s(n,k) = (n+s)!(s+1)^{k+1-s} - (n+s-1)! s^{k+2-s}` for `s <= k+1`,
/// zero beyond, with `0^0 = 1`.
pub fn broom_coeff(n: usize, k: usize, s: usize) -> BigUint {
    if s > k + 1 {
        return BigUint::zero();
    }
    let pow = |base: usize, exp: usize| -> BigInt {
        if exp == 0 {
            BigInt::one()
        } else {
            BigInt::from(base).pow(exp as u32)
        }
    };
    let first = BigInt::from(factorial(n + s)) * pow(s + 1, k + 1 - s);
    let second_pow = pow(s, k + 2 - s);
    // With n = s = 0 the factorial is undefined but multiplied by 0^{k+2}.
    let second = if second_pow.is_zero() {
        BigInt::zero()
    } else {
        BigInt::from(factorial(n + s - 1)) * second_pow
    };
    (first - second).to_biguint().expect("broom coefficients are nonnegative")
}

/// Sorting coefficients of the broom, length `n + k + 1`.
pub fn broom_f(n: usize, k: usize) -> GenFun {
    GenFun::sorting((0..n + k + 1).map(|s| broom_coeff(n, k, s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{sorting_gf, EnumConfig};

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn known_vectors() {
        assert_eq!(ordinal_sum_antichains_g(&[2, 2, 2]).unwrap().coeffs, big(&[8, 72, 288, 480, 720, 720]));
        assert_eq!(ordinal_sum_antichains_g(&[4]).unwrap().coeffs, big(&[24; 4]));
        assert_eq!(
            ordinal_sum_antichains_g(&[1, 2, 3]).unwrap().coeffs,
            big(&[12, 144, 360, 720, 720, 720])
        );
        assert_eq!(
            ordinal_sum_antichains_g(&[3, 1, 2]).unwrap().coeffs,
            big(&[12, 72, 216, 480, 720, 720])
        );
    }

    #[test]
    fn orientation_matches_enumeration() {
        let cfg = EnumConfig::single();
        for c in [vec![1, 2, 3], vec![3, 1, 2], vec![2, 1], vec![1, 1, 2]] {
            let p = composition_poset(&c).unwrap();
            let brute = sorting_gf(&p, &cfg).unwrap().to_cumulative().unwrap();
            assert_eq!(brute, ordinal_sum_antichains_g(&c).unwrap(), "{c:?}");
        }
    }

    #[test]
    fn brooms() {
        assert_eq!(broom_f(1, 1).coeffs, big(&[1, 3, 2]));
        assert_eq!(broom_f(1, 0).coeffs, big(&[1, 1]));
        assert_eq!(broom_f(0, 0).coeffs, big(&[1]));
        assert_eq!(broom_coeff(1, 2, 2), broom_coeff(2, 1, 1));
        assert_eq!(broom_poset(0, 2).unwrap(), Poset::chain(3).unwrap());
    }

    #[test]
    fn rejects_bad_compositions() {
        assert!(ordinal_sum_antichains_g(&[]).is_err());
        assert!(ordinal_sum_antichains_g(&[1, 0]).is_err());
        assert!(composition_poset(&[0]).is_err());
    }
}
