//! Exhaustive enumeration over all `n!` labelings.
//!
//! The rank space `0..n!` is cut into contiguous ranges, one per worker.
//! Each worker unranks its first permutation and then steps with
//! `next_permutation`, keeping machine-integer counts that are merged into
//! big integers at the end, so results do not depend on the thread count.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::decimal_vec;
use crate::perm::{factorial, factorial_u64, next_permutation, unrank};
use crate::poset::Poset;
use crate::promotion::Engine;

/// Default largest `n` enumerated without an explicit override.
pub const DEFAULT_MAX_N: usize = 9;

/// Largest `n` whose `n!` ranks fit in 64 bits.
pub const HARD_MAX_N: usize = 20;

/// Worker count and size budget for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub threads: usize,
    pub max_n: usize,
    pub force: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            max_n: DEFAULT_MAX_N,
            force: false,
        }
    }
}

impl EnumConfig {
    pub fn single() -> Self {
        EnumConfig { threads: 1, ..Self::default() }
    }

    pub fn with_threads(threads: usize) -> Self {
        EnumConfig { threads: threads.max(1), ..Self::default() }
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > HARD_MAX_N {
            return Err(Error::Param(format!("cannot enumerate labelings of {n} elements")));
        }
        if n > self.max_n && !self.force {
            return Err(Error::Budget { n, cap: self.max_n });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenFunKind {
    /// Coefficient `i` counts labelings of order exactly `i`.
    Sorting,
    /// Coefficient `i` counts labelings of order at most `i`.
    Cumulative,
}

/// Coefficients `a_0..a_{n-1}` of a sorting or cumulative generating
/// function, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFun {
    pub kind: GenFunKind,
    #[serde(with = "decimal_vec")]
    pub coeffs: Vec<BigUint>,
}

impl GenFun {
    pub fn sorting(coeffs: Vec<BigUint>) -> Self {
        GenFun { kind: GenFunKind::Sorting, coeffs }
    }

    pub fn cumulative(coeffs: Vec<BigUint>) -> Self {
        GenFun { kind: GenFunKind::Cumulative, coeffs }
    }

    pub fn from_u64(kind: GenFunKind, coeffs: &[u64]) -> Self {
        GenFun { kind, coeffs: coeffs.iter().map(|&c| BigUint::from(c)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Running sums of a sorting function.
    pub fn to_cumulative(&self) -> Result<GenFun> {
        self.expect(GenFunKind::Sorting)?;
        let mut acc = BigUint::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect();
        Ok(GenFun::cumulative(coeffs))
    }

    /// First differences of a cumulative function.
    pub fn to_sorting(&self) -> Result<GenFun> {
        self.expect(GenFunKind::Cumulative)?;
        let mut prev = BigUint::zero();
        let mut coeffs = Vec::with_capacity(self.len());
        for c in &self.coeffs {
            if c < &prev {
                return Err(Error::Mode("cumulative coefficients decrease".into()));
            }
            coeffs.push(c - &prev);
            prev = c.clone();
        }
        Ok(GenFun::sorting(coeffs))
    }

    pub fn expect(&self, kind: GenFunKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Mode(format!("expected a {kind:?} function, got {:?}", self.kind)));
        }
        Ok(())
    }

    /// Checks the totals an `n`-element poset forces: a sorting function sums
    /// to `n!`, a cumulative one is nondecreasing and ends at `n!`.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if n == 0 {
            return Err(Error::Mode("empty coefficient vector".into()));
        }
        let total = factorial(n);
        match self.kind {
            GenFunKind::Sorting => {
                let sum: BigUint = self.coeffs.iter().sum();
                if sum != total {
                    return Err(Error::Mode(format!("coefficients sum to {sum}, expected {total}")));
                }
            }
            GenFunKind::Cumulative => {
                self.to_sorting()?;
                if self.coeffs[n - 1] != total {
                    return Err(Error::Mode(format!("last coefficient is not {total}")));
                }
            }
        }
        Ok(())
    }

    /// Coefficients with trailing zeros removed (at least one kept).
    pub fn trimmed(&self) -> &[BigUint] {
        let end = self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1);
        &self.coeffs[..end.min(self.coeffs.len())]
    }

    /// Space-separated decimal coefficients.
    pub fn to_text(&self) -> String {
        crate::io::join_decimal(&self.coeffs)
    }
}

/// Runs `visit` on every labeling of `n` elements (as 1-based `u8` labels,
/// position `e` holding the label of `e`) and returns the per-worker states
/// in rank order.
pub fn fold_labelings<S, M, V>(n: usize, threads: usize, make: M, visit: V) -> Vec<S>
where
    S: Send,
    M: Fn() -> S + Sync,
    V: Fn(&mut S, &[u8]) + Sync,
{
    let total = factorial_u64(n).expect("n checked against the hard cap");
    let workers = (threads.max(1) as u64).min(total) as usize;
    let chunk = total.div_ceil(workers as u64);
    let run = |start: u64, end: u64| {
        let mut state = make();
        let mut perm: Vec<u8> = unrank(n, start).into_iter().map(|x| x as u8 + 1).collect();
        let mut rank = start;
        while rank < end {
            visit(&mut state, &perm);
            rank += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        state
    };
    if workers == 1 {
        return vec![run(0, total)];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                let run = &run;
                scope.spawn(move || run(start, end))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn merge_counts(parts: Vec<Vec<u64>>, len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for part in parts {
        for (o, c) in out.iter_mut().zip(part) {
            *o += c;
        }
    }
    out
}

struct Scratch {
    counts: Vec<u64>,
    lab: Vec<u8>,
    inv: Vec<u8>,
    failed: bool,
}

/// Number of labelings of each order `0..n`.
pub fn order_counts(poset: &Poset, config: &EnumConfig) -> Result<Vec<BigUint>> {
    let n = poset.len();
    config.check(n)?;
    let engine = Engine::new(poset)?;
    let parts = fold_labelings(
        n,
        config.threads,
        || Scratch { counts: vec![0; n], lab: vec![0; n], inv: vec![0; n + 1], failed: false },
        |s, perm| {
            s.lab.copy_from_slice(perm);
            match engine.order_in_place(&mut s.lab, &mut s.inv) {
                Ok(k) => s.counts[k] += 1,
                Err(_) => s.failed = true,
            }
        },
    );
    if parts.iter().any(|s| s.failed) {
        return Err(Error::Internal(format!("a labeling needed more than {} promotions", n - 1)));
    }
    Ok(merge_counts(parts.into_iter().map(|s| s.counts).collect(), n))
}

pub fn sorting_gf(poset: &Poset, config: &EnumConfig) -> Result<GenFun> {
    Ok(GenFun::sorting(order_counts(poset, config)?))
}

pub fn cumulative_gf(poset: &Poset, config: &EnumConfig) -> Result<GenFun> {
    sorting_gf(poset, config)?.to_cumulative()
}

/// Tangled labelings, in total and split by the element labeled `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleReport {
    #[serde(with = "crate::io::decimal")]
    pub total: BigUint,
    /// Indexed by element.
    #[serde(with = "decimal_vec")]
    pub by_element: Vec<BigUint>,
}

pub fn tangled_report(poset: &Poset, config: &EnumConfig) -> Result<TangleReport> {
    let n = poset.len();
    if n < 2 {
        return Err(Error::Param("tangled labelings need at least two elements".into()));
    }
    config.check(n)?;
    let engine = Engine::new(poset)?;
    let label_n = n as u8;
    let label_prev = n as u8 - 1;
    let parts = fold_labelings(
        n,
        config.threads,
        || Scratch { counts: vec![0; n], lab: vec![0; n], inv: vec![0; n + 1], failed: false },
        |s, perm| {
            // Only labelings putting n on a basin can be tangled.
            let top = perm.iter().position(|&l| l == label_n).expect("label n present");
            if !engine.is_basin(top) {
                return;
            }
            let second = perm.iter().position(|&l| l == label_prev).expect("label n-1 present");
            s.lab.copy_from_slice(perm);
            if engine.is_tangled_in_place(&mut s.lab, &mut s.inv) {
                s.counts[second] += 1;
            }
        },
    );
    let by_element = merge_counts(parts.into_iter().map(|s| s.counts).collect(), n);
    let total = by_element.iter().sum();
    Ok(TangleReport { total, by_element })
}

/// Counts of `k`-sorted (order `k`) and `k`-tangled (order `n - k - 1`)
/// labelings for `k = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassCounts {
    #[serde(with = "decimal_vec")]
    pub k_sorted: Vec<BigUint>,
    #[serde(with = "decimal_vec")]
    pub k_tangled: Vec<BigUint>,
}

pub fn k_class_counts(poset: &Poset, config: &EnumConfig) -> Result<KClassCounts> {
    let k_sorted = order_counts(poset, config)?;
    let k_tangled = k_sorted.iter().rev().cloned().collect();
    Ok(KClassCounts { k_sorted, k_tangled })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceShape {
    pub unimodal: bool,
    pub log_concave: bool,
}

/// Unimodality (weakly rising then weakly falling) and log-concavity
/// (`a_i^2 >= a_{i-1} a_{i+1}` at interior indices).
pub fn sequence_shape(v: &[BigUint]) -> SequenceShape {
    let mut i = 0;
    while i + 1 < v.len() && v[i] <= v[i + 1] {
        i += 1;
    }
    while i + 1 < v.len() && v[i] >= v[i + 1] {
        i += 1;
    }
    let unimodal = i + 1 >= v.len();
    let log_concave = v.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2]);
    SequenceShape { unimodal, log_concave }
}
