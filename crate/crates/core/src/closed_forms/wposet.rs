//! Tangled labelings of the W-posets `W_{a,b,c,d}`.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::families::WParams;
use crate::perm::{binomial, factorial};

/// `(i + j + k)! / (i! j! k!)`.
fn trinomial(i: u64, j: u64, k: u64) -> BigUint {
    binomial(i + j + k, i) * binomial(j + k, j)
}

/// `C(n-2, lead) * sum_{i<inner} sum_{j<=outer} (outer-j+1) * (i+j+mid-1 choose i, j, mid-1)`.
fn correction(n: u64, lead: u64, inner: u64, outer: u64, mid: u64) -> BigUint {
    let mut acc = BigUint::zero();
    for i in 0..inner {
        for j in 0..=outer {
            acc += trinomial(i, j, mid - 1) * (outer - j + 1);
        }
    }
    binomial(n - 2, lead) * acc
}

/// Tangled labelings of `W_{a,b,c,d}` with `n - 1` on `y`.
pub fn w_poset_tangled_at_y(p: &WParams) -> Result<BigUint> {
    let WParams { a, b, c, d } = *p;
    if a == 0 || b == 0 || c == 0 || d == 0 {
        return Err(Error::Param(format!("W-poset parameters must be positive, got ({a},{b},{c},{d})")));
    }
    let n = p.size() as u64;
    let (a, b, c, d) = (a as u64, b as u64, c as u64, d as u64);
    let x = correction(n, a, b, d, c);
    let z = correction(n, d, c, a, b);
    let weight = factorial(a as usize) * factorial(b as usize) * factorial(c as usize) * factorial(d as usize);
    let full = factorial(n as usize - 2);
    let excluded = weight * (x + z);
    if excluded > full {
        return Err(Error::Internal("W-poset correction exceeds (n-2)!".into()));
    }
    Ok(full - excluded)
}

/// Total tangled labelings of `W_{a,b,c,d}`:
/// `(n-2)(n-2)! - a!b!c!d!(X+Z)`.
pub fn w_poset_tangled(p: &WParams) -> Result<BigUint> {
    let at_y = w_poset_tangled_at_y(p)?;
    let n = p.size();
    // Every alpha, beta, gamma, delta contributes (n-2)!; x and z none.
    Ok(at_y + factorial(n - 2) * (n - 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w2211() {
        assert_eq!(w_poset_tangled(&WParams::new(2, 2, 1, 1)).unwrap(), BigUint::from(34412u32));
    }

    #[test]
    fn mirror_symmetry() {
        for (a, b, c, d) in [(1, 2, 3, 1), (2, 1, 1, 3), (1, 1, 2, 2)] {
            assert_eq!(
                w_poset_tangled(&WParams::new(a, b, c, d)).unwrap(),
                w_poset_tangled(&WParams::new(d, c, b, a)).unwrap()
            );
        }
    }

    #[test]
    fn zero_parameters_rejected() {
        assert!(matches!(w_poset_tangled(&WParams::new(0, 1, 1, 1)), Err(Error::Param(_))));
    }

    #[test]
    fn trinomials() {
        assert_eq!(trinomial(1, 1, 1), BigUint::from(6u32));
        assert_eq!(trinomial(2, 0, 1), BigUint::from(3u32));
        assert_eq!(trinomial(0, 0, 0), BigUint::from(1u32));
    }
}
