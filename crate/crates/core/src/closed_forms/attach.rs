//! Generating functions of `T_k ⊕ P` from those of `P`, and the tails of
//! pedestals `C_l ⊕ P`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumeration::{GenFun, GenFunKind};
use crate::error::{Error, Result};
use crate::io::decimal_vec;
use crate::perm::{binomial, factorial, rising_range};

/// Square matrix of big integers, row-major.
pub type Matrix = Vec<Vec<BigUint>>;

/// The three `n × n` matrices relating the functions of `P` and `T_k ⊕ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionMatrices {
    pub n: usize,
    pub k: usize,
    /// Lower triangular; acts on sorting coefficients.
    pub x: Matrix,
    /// Diagonal; acts on cumulative coefficients.
    pub y: Matrix,
    /// All-ones lower triangular.
    pub r: Matrix,
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(BigUint::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[BigUint]) -> Vec<BigUint> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigUint::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn composition_matrices(n: usize, k: usize) -> Result<CompositionMatrices> {
    if n == 0 || k == 0 {
        return Err(Error::Param(format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
    }
    let kf = factorial(k);
    let k64 = k as u64;
    let mut x = vec![vec![BigUint::zero(); n]; n];
    let mut y = vec![vec![BigUint::zero(); n]; n];
    let mut r = vec![vec![BigUint::zero(); n]; n];
    for i in 1..=n {
        let i64 = i as u64;
        for j in 1..i {
            x[i - 1][j - 1] = &kf * binomial(k64 + i64 - 2, k64 - 1);
        }
        x[i - 1][i - 1] = &kf * binomial(k64 + i64 - 1, k64);
        // (k+i-1)!/(i-1)! = i * (i+1) * ... * (k+i-1)
        y[i - 1][i - 1] = rising_range(i64, k64 + i64 - 1);
        for j in 1..=i {
            r[i - 1][j - 1] = BigUint::one();
        }
    }
    Ok(CompositionMatrices { n, k, x, y, r })
}

impl CompositionMatrices {
    /// `Y R = R X`.
    pub fn intertwines(&self) -> bool {
        mat_mul(&self.y, &self.r) == mat_mul(&self.r, &self.x)
    }
}

/// The function of `T_k ⊕ P` from the function of an `n`-element `P`, in
/// the same mode.
pub fn attach_antichain(gf: &GenFun, k: usize, mode: GenFunKind) -> Result<GenFun> {
    gf.expect(mode)?;
    gf.validate()?;
    let n = gf.len();
    let m = composition_matrices(n, k)?;
    let mut coeffs;
    match mode {
        GenFunKind::Sorting => {
            coeffs = mat_vec(&m.x, &gf.coeffs);
            coeffs.push(factorial(n) * factorial(k) * binomial((n + k - 1) as u64, (k - 1) as u64));
            coeffs.resize(n + k, BigUint::zero());
        }
        GenFunKind::Cumulative => {
            coeffs = mat_vec(&m.y, &gf.coeffs);
            coeffs.resize(n + k, factorial(n + k));
        }
    }
    Ok(GenFun { kind: mode, coeffs })
}

/// Tails of the functions of `C_l ⊕ P` for any `n`-element `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PedestalCoeffs {
    pub n: usize,
    pub l: usize,
    /// `b_tail[r]` is the cumulative coefficient at index `n + l - 1 - r`,
    /// for `r = 0..=l`.
    #[serde(with = "decimal_vec")]
    pub b_tail: Vec<BigUint>,
    /// `a_tail[r]` is the number of `r`-tangled labelings, for `r = 0..l`.
    #[serde(with = "decimal_vec")]
    pub a_tail: Vec<BigUint>,
    /// Tangled plus quasi-tangled labelings, `3(n+l-1)! - (n+l-2)!`. Only
    /// determined by the tails when `l >= 2`; `None` for `l = 1`, where the
    /// quasi-tangled count depends on `P`.
    #[serde(with = "opt_decimal", default)]
    pub quasi_plus_tangled: Option<BigUint>,
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => crate::io::decimal::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let n = Option::<serde_json::Number>::deserialize(d)?;
        n.map(|n| n.to_string().parse().map_err(serde::de::Error::custom)).transpose()
    }
}

fn pow(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// The quasi-plus-tangled closed form `3(m-1)! - (m-2)!` for `m = n + l`.
pub fn quasi_plus_tangled_formula(n: usize, l: usize) -> BigUint {
    let m = n + l;
    factorial(m - 1) * 3u32 - factorial(m - 2)
}

pub fn pedestal_coeffs(n: usize, l: usize) -> Result<PedestalCoeffs> {
    if n == 0 || l == 0 {
        return Err(Error::Param(format!("need n >= 1 and l >= 1, got n = {n}, l = {l}")));
    }
    let top = n + l;
    let b_tail: Vec<BigUint> = (0..=l).map(|r| pow(top - r, r) * factorial(top - r)).collect();
    let a_tail: Vec<BigUint> = (0..l)
        .map(|r| (pow(top - r, r + 1) - pow(top - r - 1, r + 1)) * factorial(top - r - 1))
        .collect();
    for r in 0..l {
        if a_tail[r] != &b_tail[r] - &b_tail[r + 1] {
            return Err(Error::Internal(format!("pedestal tails disagree at r = {r}")));
        }
    }
    let quasi_plus_tangled = if l >= 2 {
        let v = quasi_plus_tangled_formula(n, l);
        if v != &a_tail[0] + &a_tail[1] {
            return Err(Error::Internal("quasi-plus-tangled formula disagrees with the tails".into()));
        }
        Some(v)
    } else {
        None
    };
    Ok(PedestalCoeffs { n, l, b_tail, a_tail, quasi_plus_tangled })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn mat(rows: &[&[u64]]) -> Matrix {
        rows.iter().map(|r| big(r)).collect()
    }

    #[test]
    fn small_matrices() {
        let m = composition_matrices(3, 1).unwrap();
        assert_eq!(m.x, mat(&[&[1, 0, 0], &[1, 2, 0], &[1, 1, 3]]));
        assert_eq!(m.y, mat(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]));
        assert_eq!(m.r, mat(&[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]));
        assert!(m.intertwines());
        let m = composition_matrices(3, 2).unwrap();
        assert_eq!(m.x, mat(&[&[2, 0, 0], &[4, 6, 0], &[6, 6, 12]]));
        assert!(m.intertwines());
        assert!(composition_matrices(0, 1).is_err());
    }

    #[test]
    fn attach_to_lambda() {
        let f = GenFun::from_u64(GenFunKind::Sorting, &[2, 4, 0]);
        let expect: [&[u64]; 3] = [&[2, 10, 6, 6], &[4, 32, 36, 48, 0], &[12, 132, 216, 360, 0, 0]];
        for (k, want) in (1..=3).zip(expect) {
            let got = attach_antichain(&f, k, GenFunKind::Sorting).unwrap();
            assert_eq!(got.coeffs, big(want), "k = {k}");
            got.validate().unwrap();
            let g = attach_antichain(&f.to_cumulative().unwrap(), k, GenFunKind::Cumulative).unwrap();
            assert_eq!(g, got.to_cumulative().unwrap());
        }
        assert!(matches!(attach_antichain(&f, 1, GenFunKind::Cumulative), Err(Error::Mode(_))));
    }

    #[test]
    fn pedestal_small_cases() {
        let p = pedestal_coeffs(3, 1).unwrap();
        assert_eq!(p.a_tail, big(&[6]));
        assert_eq!(p.quasi_plus_tangled, None);
        for n in 1..6 {
            let p = pedestal_coeffs(n, 2).unwrap();
            assert_eq!(p.a_tail[1], factorial(n + 1) * 2u32 - factorial(n));
            assert_eq!(p.a_tail[0], factorial(n + 1));
        }
        assert!(pedestal_coeffs(0, 1).is_err());
    }
}
