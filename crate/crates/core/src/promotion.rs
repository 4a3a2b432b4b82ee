//! Extended promotion on labelings and the quantities derived from a single
//! labeling: promotion chains, sorting time, frozen sets, standardization,
//! tangledness and the lift to `T_k ⊕ P`.
//!
//! Labels are 1-based as in the combinatorics (`{1..n}`); elements are the
//! poset's 0-based indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// A bijection from elements to `{1..n}`; position `e` holds `L(e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Labeling("empty labeling".into()));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n {
                return Err(Error::Labeling(format!("label {l} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[l], true) {
                return Err(Error::Labeling(format!("label {l} used twice")));
            }
        }
        Ok(Labeling { labels })
    }

    /// Checks that the labeling fits `poset`.
    pub fn for_poset(labels: Vec<usize>, poset: &Poset) -> Result<Self> {
        let l = Self::new(labels)?;
        l.check(poset)?;
        Ok(l)
    }

    pub fn check(&self, poset: &Poset) -> Result<()> {
        if self.len() != poset.len() {
            return Err(Error::Labeling(format!(
                "{} labels for a poset with {} elements",
                self.len(),
                poset.len()
            )));
        }
        Ok(())
    }

    /// The identity labeling `e -> e + 1`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    /// Builds a labeling from the inverse map: `order[i]` is the element
    /// carrying label `i + 1`.
    pub fn from_inverse(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut labels = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            if e >= n || labels[e] != 0 {
                return Err(Error::Labeling(format!("element {e} repeated or out of range")));
            }
            labels[e] = i + 1;
        }
        Self::new(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> usize {
        self.labels[e]
    }

    /// Element carrying label `l`.
    pub fn element(&self, l: usize) -> usize {
        self.labels.iter().position(|&x| x == l).expect("label in range")
    }

    /// `inv[l - 1]` is the element labeled `l`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (e, &l) in self.labels.iter().enumerate() {
            inv[l - 1] = e;
        }
        inv
    }

    /// Whether `x < y` implies `L(x) < L(y)`.
    pub fn is_natural(&self, poset: &Poset) -> bool {
        poset.covers().iter().all(|&(a, b)| self.labels[a] < self.labels[b])
    }
}

impl TryFrom<Vec<usize>> for Labeling {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Labeling::new(v)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Vec<usize> {
        l.labels
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Labeling {
    type Err = Error;
    /// Comma- or whitespace-separated labels.
    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("label {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Labeling::new(labels)
    }
}

/// One application of promotion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromotionStep {
    pub result: Labeling,
    /// Elements whose labels were swapped, in order. When the element
    /// labeled 1 is already maximal this is just that element.
    pub chain: Vec<usize>,
}

/// Applies extended promotion once.
pub fn promote(poset: &Poset, labeling: &Labeling) -> Result<PromotionStep> {
    labeling.check(poset)?;
    let n = poset.len();
    let mut labels = labeling.labels.clone();
    let mut inv = labeling.inverse();
    let mut x = inv[0];
    let mut chain = vec![x];
    let mut floor = 1;
    while !poset.is_maximal(x) {
        // Everything above the element now holding 1 carries a label larger
        // than the one just swapped, so the scan resumes from there.
        let next = (floor + 1..=n)
            .find(|&l| poset.lt(x, inv[l - 1]))
            .ok_or_else(|| Error::Internal("no label above a non-maximal element".into()))?;
        let y = inv[next - 1];
        labels[x] = next;
        inv[next - 1] = x;
        labels[y] = 1;
        inv[0] = y;
        chain.push(y);
        x = y;
        floor = next;
    }
    for l in labels.iter_mut() {
        *l = if *l == 1 { n } else { *l - 1 };
    }
    Ok(PromotionStep { result: Labeling { labels }, chain })
}

/// The labelings `L_0 = L, L_1, ..., L_steps`.
pub fn promotions(poset: &Poset, labeling: &Labeling, steps: usize) -> Result<Vec<PromotionStep>> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = labeling.clone();
    for _ in 0..steps {
        let step = promote(poset, &cur)?;
        cur = step.result.clone();
        out.push(step);
    }
    Ok(out)
}

/// Number of promotions needed to reach a natural labeling.
pub fn order(poset: &Poset, labeling: &Labeling) -> Result<usize> {
    labeling.check(poset)?;
    let n = poset.len();
    let mut cur = labeling.clone();
    for k in 0..n {
        if cur.is_natural(poset) {
            return Ok(k);
        }
        cur = promote(poset, &cur)?.result;
    }
    Err(Error::Internal(format!("labeling {labeling} not sorted after {} promotions", n - 1)))
}

/// Frozen elements: those `x` with `L^{-1}({a..n})` an upper order ideal
/// for every `a >= L(x)`. Returned ascending.
pub fn frozen_set(poset: &Poset, labeling: &Labeling) -> Result<Vec<usize>> {
    labeling.check(poset)?;
    let inv = labeling.inverse();
    let mut inside = vec![false; poset.len()];
    let mut frozen = Vec::new();
    for &e in inv.iter().rev() {
        // The window stays an upper ideal iff the new element's up-set is
        // already inside it.
        if !poset.strict_up(e).all(|y| inside[y]) {
            break;
        }
        inside[e] = true;
        frozen.push(e);
    }
    frozen.sort_unstable();
    Ok(frozen)
}

/// Order-preserving relabeling of `subset` into `{1..|subset|}`; position
/// `i` of the result belongs to `subset[i]`, matching [`Poset::induced`].
pub fn standardize(labeling: &Labeling, subset: &[usize]) -> Result<Labeling> {
    if subset.is_empty() {
        return Err(Error::Labeling("cannot standardize on an empty subset".into()));
    }
    if let Some(&e) = subset.iter().find(|&&e| e >= labeling.len()) {
        return Err(Error::Index { index: e, n: labeling.len() });
    }
    let mut by_label: Vec<usize> = (0..subset.len()).collect();
    by_label.sort_by_key(|&i| labeling.labels[subset[i]]);
    let mut labels = vec![0; subset.len()];
    for (rank, &i) in by_label.iter().enumerate() {
        labels[i] = rank + 1;
    }
    Labeling::new(labels)
}

/// Whether `order(L) = n - 1`.
///
/// Tested directly: the element labeled `n` must be a basin, and after
/// `n - 2` promotions the element labeled 1 must lie strictly above it.
/// A one-element poset is never called tangled.
pub fn is_tangled(poset: &Poset, labeling: &Labeling) -> Result<bool> {
    labeling.check(poset)?;
    let n = poset.len();
    if n < 2 {
        return Ok(false);
    }
    let top = labeling.element(n);
    if !poset.is_basin(top) {
        return Ok(false);
    }
    let mut cur = labeling.clone();
    for _ in 0..n - 2 {
        cur = promote(poset, &cur)?.result;
    }
    Ok(poset.lt(top, cur.element(1)))
}

/// Labeling of `T_k ⊕ P` (new minimal elements first, indices `0..k`)
/// giving the `s`-th new element label `indices[s]` and restricting to a
/// labeling of `P` that standardizes to `labeling`.
pub fn lift_labeling(labeling: &Labeling, indices: &[usize]) -> Result<Labeling> {
    let n = labeling.len();
    let k = indices.len();
    if k == 0 {
        return Err(Error::Range("at least one index is required".into()));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Range(format!("{indices:?} is not strictly increasing")));
    }
    if indices[0] == 0 || indices[k - 1] > n + k {
        return Err(Error::Range(format!("{indices:?} must lie in 1..={}", n + k)));
    }
    let mut base = labeling.labels.clone();
    for &i in indices {
        for l in base.iter_mut() {
            if *l >= i {
                *l += 1;
            }
        }
    }
    let mut labels = indices.to_vec();
    labels.extend(base);
    Labeling::new(labels)
}

/// Allocation-free promotion for enumeration over posets with at most 64
/// elements. Labels are stored 1-based in `u8` buffers: `lab[e]` is the
/// label of `e` and `inv[l]` the element with label `l` (`inv[0]` unused).
#[derive(Clone, Debug)]
pub struct Engine {
    n: usize,
    above: Vec<u64>,
    covers: Vec<(u8, u8)>,
    basin: u64,
}

impl Engine {
    pub const MAX_N: usize = 64;

    pub fn new(poset: &Poset) -> Result<Self> {
        let n = poset.len();
        if n > Self::MAX_N {
            return Err(Error::Param(format!("fast promotion supports at most {} elements", Self::MAX_N)));
        }
        let above = (0..n)
            .map(|x| poset.strict_up(x).fold(0u64, |m, y| m | 1 << y))
            .collect();
        let covers = poset.covers().iter().map(|&(a, b)| (a as u8, b as u8)).collect();
        let basin = poset.basins().iter().fold(0u64, |m, &x| m | 1 << x);
        Ok(Engine { n, above, covers, basin })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Fills `inv` from `lab`.
    #[inline]
    pub fn invert(&self, lab: &[u8], inv: &mut [u8]) {
        for (e, &l) in lab.iter().enumerate() {
            inv[l as usize] = e as u8;
        }
    }

    #[inline]
    pub fn is_natural(&self, lab: &[u8]) -> bool {
        self.covers.iter().all(|&(a, b)| lab[a as usize] < lab[b as usize])
    }

    #[inline]
    pub fn is_basin(&self, e: usize) -> bool {
        (self.basin >> e) & 1 == 1
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        (self.above[a] >> b) & 1 == 1
    }

    /// One promotion in place.
    #[inline]
    pub fn promote(&self, lab: &mut [u8], inv: &mut [u8]) {
        let n = self.n;
        let mut x = inv[1] as usize;
        let mut floor = 1usize;
        loop {
            let row = self.above[x];
            if row == 0 {
                break;
            }
            let mut l = floor + 1;
            while (row >> inv[l]) & 1 == 0 {
                l += 1;
            }
            let y = inv[l] as usize;
            lab[x] = l as u8;
            inv[l] = x as u8;
            x = y;
            floor = l;
        }
        lab[x] = n as u8 + 1;
        for e in 0..n {
            lab[e] -= 1;
            inv[lab[e] as usize] = e as u8;
        }
    }

    /// Sorting time of `lab`, which is consumed as scratch along with `inv`.
    #[inline]
    pub fn order_in_place(&self, lab: &mut [u8], inv: &mut [u8]) -> Result<usize> {
        self.invert(lab, inv);
        for k in 0..self.n {
            if self.is_natural(lab) {
                return Ok(k);
            }
            self.promote(lab, inv);
        }
        Err(Error::Internal(format!("labeling not sorted after {} promotions", self.n - 1)))
    }

    /// Tangledness of `lab` (consumed as scratch), given the element
    /// labeled `n` is `top`.
    #[inline]
    pub fn is_tangled_in_place(&self, lab: &mut [u8], inv: &mut [u8]) -> bool {
        let n = self.n;
        if n < 2 {
            return false;
        }
        self.invert(lab, inv);
        let top = inv[n] as usize;
        if !self.is_basin(top) {
            return false;
        }
        for _ in 0..n - 2 {
            self.promote(lab, inv);
        }
        self.lt(top, inv[1] as usize)
    }
}
