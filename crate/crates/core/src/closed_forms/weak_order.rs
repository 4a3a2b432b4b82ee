//! The family of cumulative coefficient vectors over all rearrangements of a
//! composition, ordered by coordinatewise dominance, compared with the right
//! weak order on permutations.

use num_bigint::BigUint;

use crate::closed_forms::ordinal::ordinal_sum_antichains_g;
use crate::error::{Error, Result};
use crate::perm::next_permutation;

/// Largest number of parts accepted.
pub const MAX_PARTS: usize = 7;

/// `u <= v` coordinatewise.
pub fn dominated(u: &[BigUint], v: &[BigUint]) -> bool {
    u.len() == v.len() && u.iter().zip(v).all(|(a, b)| a <= b)
}

/// Inversion set of a one-line permutation as value pairs `(a, b)`, `a < b`,
/// with `b` appearing before `a`.
pub fn inversions(perm: &[usize]) -> Vec<(usize, usize)> {
    let mut inv = Vec::new();
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv.push((perm[j], perm[i]));
            }
        }
    }
    inv.sort_unstable();
    inv
}

/// `p <= q` in the right weak order: inversion sets are nested.
pub fn weak_le(p: &[usize], q: &[usize]) -> bool {
    let iq = inversions(q);
    inversions(p).iter().all(|x| iq.binary_search(x).is_ok())
}

/// Covers `p ⋖ p s_i` of the right weak order: swap an ascent at adjacent
/// positions.
pub fn weak_up_covers(perm: &[usize]) -> Vec<Vec<usize>> {
    (0..perm.len().saturating_sub(1))
        .filter(|&i| perm[i] < perm[i + 1])
        .map(|i| {
            let mut q = perm.to_vec();
            q.swap(i, i + 1);
            q
        })
        .collect()
}

/// Outcome of comparing dominance with the weak order under
/// `pi -> b_{rev(pi)}`. Pairs index into [`CoeffFamily::perms`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Refinement {
    /// Every weak-order cover `(pi, sigma)`.
    pub weak_covers: Vec<(usize, usize)>,
    /// Weak-order covers whose images are not dominated; empty when the
    /// map is order preserving.
    pub violations: Vec<(usize, usize)>,
    /// Dominance relations between images of weak-incomparable or
    /// weak-reversed pairs.
    pub extra: Vec<(usize, usize)>,
}

impl Refinement {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `B(C)`: the vector `b_pi` of every rearrangement `pi(C) = (c_{pi(1)}, ...)`.
#[derive(Clone, Debug)]
pub struct CoeffFamily {
    pub composition: Vec<usize>,
    /// One-line permutations of `1..=r` in lexicographic order.
    pub perms: Vec<Vec<usize>>,
    pub vectors: Vec<Vec<BigUint>>,
    /// Covers of dominance among distinct vectors, as `(lower, upper)`
    /// indices; colliding permutations are listed in `collisions`.
    pub hasse: Vec<(usize, usize)>,
    /// Pairs `i < j` with equal vectors.
    pub collisions: Vec<(usize, usize)>,
    pub refinement: Refinement,
}

impl CoeffFamily {
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.perms.iter().position(|p| p == perm)
    }

    pub fn vector(&self, perm: &[usize]) -> Option<&[BigUint]> {
        self.index_of(perm).map(|i| self.vectors[i].as_slice())
    }

    /// Index of `rev(perm)`, the permutation read backwards.
    pub fn reversed(&self, i: usize) -> usize {
        let mut r = self.perms[i].clone();
        r.reverse();
        self.index_of(&r).expect("reversal is a permutation")
    }

    /// Dominance between `b_p` and `b_q`.
    pub fn dominates(&self, p: &[usize], q: &[usize]) -> Option<bool> {
        Some(dominated(self.vector(p)?, self.vector(q)?))
    }
}

/// Packed bit matrix for the dominance relation.
struct Bits {
    words: usize,
    rows: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Bits { words, rows: vec![0; n * words] }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

pub fn weak_order_family(composition: &[usize]) -> Result<CoeffFamily> {
    let r = composition.len();
    if r == 0
        || composition.contains(&0)
        || composition.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::Distinctness(composition.iter().map(|&c| c as u64).collect()));
    }
    if r > MAX_PARTS {
        return Err(Error::Param(format!("at most {MAX_PARTS} parts are supported, got {r}")));
    }
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (1..=r).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let vectors = perms
        .iter()
        .map(|p| {
            let arranged: Vec<usize> = p.iter().map(|&i| composition[i - 1]).collect();
            ordinal_sum_antichains_g(&arranged).map(|g| g.coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let count = perms.len();

    let mut collisions = Vec::new();
    let mut rep = (0..count).collect::<Vec<_>>();
    for i in 0..count {
        for j in i + 1..count {
            if vectors[i] == vectors[j] {
                collisions.push((i, j));
                rep[j] = rep[j].min(rep[i]);
            }
        }
    }

    // Strict dominance among representatives of distinct vectors.
    let reps: Vec<usize> = (0..count).filter(|&i| rep[i] == i).collect();
    let mut up = Bits::new(count);
    let mut down = Bits::new(count);
    for &i in &reps {
        for &j in &reps {
            if i != j && dominated(&vectors[i], &vectors[j]) {
                up.set(i, j);
                down.set(j, i);
            }
        }
    }
    let mut hasse = Vec::new();
    for &i in &reps {
        for &j in &reps {
            if up.get(i, j) && up.row(i).iter().zip(down.row(j)).all(|(a, b)| a & b == 0) {
                hasse.push((i, j));
            }
        }
    }

    let index = |q: &[usize]| perms.binary_search_by(|p| p.as_slice().cmp(q)).expect("permutation listed");
    let image = |i: usize| {
        let mut q = perms[i].clone();
        q.reverse();
        index(&q)
    };
    let mut refinement = Refinement::default();
    for (i, p) in perms.iter().enumerate() {
        for q in weak_up_covers(p) {
            let j = index(&q);
            refinement.weak_covers.push((i, j));
            if !dominated(&vectors[image(i)], &vectors[image(j)]) {
                refinement.violations.push((i, j));
            }
        }
    }
    for i in 0..count {
        for j in 0..count {
            if i != j && dominated(&vectors[image(i)], &vectors[image(j)]) && !weak_le(&perms[i], &perms[j]) {
                refinement.extra.push((i, j));
            }
        }
    }

    Ok(CoeffFamily { composition: composition.to_vec(), perms, vectors, hasse, collisions, refinement })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn family_of_123() {
        let fam = weak_order_family(&[1, 2, 3]).unwrap();
        let expect: [(&[usize], &[u64]); 6] = [
            (&[1, 2, 3], &[12, 144, 360, 720, 720, 720]),
            (&[1, 3, 2], &[12, 144, 288, 480, 720, 720]),
            (&[2, 1, 3], &[12, 96, 360, 720, 720, 720]),
            (&[3, 1, 2], &[12, 72, 216, 480, 720, 720]),
            (&[2, 3, 1], &[12, 96, 360, 480, 600, 720]),
            (&[3, 2, 1], &[12, 72, 216, 480, 600, 720]),
        ];
        for (p, v) in expect {
            assert_eq!(fam.vector(p).unwrap(), big(v).as_slice(), "{p:?}");
        }
        assert!(fam.collisions.is_empty());
        assert!(fam.refinement.holds());
        assert!(fam.dominates(&[3, 1, 2], &[2, 1, 3]).unwrap());
        let a = fam.index_of(&[2, 1, 3]).unwrap();
        let b = fam.index_of(&[3, 1, 2]).unwrap();
        // b_312 = phi(213), b_213 = phi(312)
        assert!(fam.refinement.extra.contains(&(a, b)));
    }

    #[test]
    fn family_of_12() {
        let fam = weak_order_family(&[1, 2]).unwrap();
        assert_eq!(fam.perms.len(), 2);
        assert!(fam.refinement.holds());
        assert!(fam.refinement.extra.is_empty());
        assert_eq!(fam.hasse.len(), 1);
    }

    #[test]
    fn weak_order_helpers() {
        assert_eq!(inversions(&[3, 1, 2]), vec![(1, 3), (2, 3)]);
        assert!(weak_le(&[1, 2, 3], &[3, 2, 1]));
        assert!(!weak_le(&[2, 1, 3], &[3, 1, 2]));
        assert_eq!(weak_up_covers(&[1, 3, 2]), vec![vec![3, 1, 2]]);
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(matches!(weak_order_family(&[2, 1]), Err(Error::Distinctness(_))));
        assert!(matches!(weak_order_family(&[1, 1]), Err(Error::Distinctness(_))));
    }
}
