//! Canonical forms of small posets.
//!
//! Elements are first split into classes by iterated refinement of
//! (height, number below, number above) with the multisets of classes below
//! and above. The canonical form is the lexicographically least relation
//! bit string over all orderings that list the classes in order, found by
//! backtracking with prefix pruning. Elements with the same strict down-set
//! and up-set are interchangeable, so only one of them is tried per slot.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest poset accepted by [`canonicalize`].
pub const MAX_CANON_N: usize = 10;

/// Canonical code of a poset together with the ordering that realises it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canonical {
    /// First byte `n`, then the relation bits packed most significant first.
    pub code: Vec<u8>,
    /// `order[p]` is the element placed at canonical position `p`.
    pub order: Vec<usize>,
}

impl Canonical {
    /// The poset relabeled so element `p` is canonical position `p`.
    pub fn relabel(&self, poset: &Poset) -> Poset {
        let mut perm = vec![0; self.order.len()];
        for (p, &e) in self.order.iter().enumerate() {
            perm[e] = p;
        }
        poset.permuted(&perm).expect("canonical order is a permutation")
    }

    pub fn hex(&self) -> String {
        hex_code(&self.code)
    }
}

pub fn hex_code(code: &[u8]) -> String {
    code.iter().map(|b| format!("{b:02x}")).collect()
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

/// Stable element classes from iterated refinement, numbered by sorted
/// signature so that isomorphic posets get the same numbering.
pub fn refine_classes(poset: &Poset) -> Vec<usize> {
    let n = poset.len();
    let rank = |keys: &[Vec<usize>]| -> Vec<usize> {
        let mut sorted: Vec<&Vec<usize>> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let ids: BTreeMap<&Vec<usize>, usize> = sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        keys.iter().map(|k| ids[k]).collect()
    };
    let initial: Vec<Vec<usize>> = (0..n)
        .map(|x| vec![poset.height(x), poset.down_degree(x), poset.up_degree(x)])
        .collect();
    let mut colors = rank(&initial);
    loop {
        let count = colors.iter().max().map_or(0, |m| m + 1);
        let keys: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = poset.strict_down(x).map(|y| colors[y]).collect();
                let mut above: Vec<usize> = poset.strict_up(x).map(|y| colors[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                let mut key = vec![colors[x], below.len()];
                key.extend(below);
                key.push(usize::MAX);
                key.extend(above);
                key
            })
            .collect();
        let next = rank(&keys);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        colors = next;
        if next_count == count {
            return colors;
        }
    }
}

struct Search<'a> {
    poset: &'a Poset,
    n: usize,
    /// Required class at each position.
    slot_class: Vec<usize>,
    class: Vec<usize>,
    /// Representative of each element's twin class.
    twin: Vec<usize>,
    used: Vec<bool>,
    order: Vec<usize>,
    bits: Vec<bool>,
    best_bits: Option<Vec<bool>>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    /// Whether the current prefix is strictly greater than the incumbent's.
    fn beaten(&self) -> bool {
        match &self.best_bits {
            Some(best) => self.bits.as_slice() > &best[..self.bits.len()],
            None => false,
        }
    }

    fn run(&mut self, pos: usize) {
        if pos == self.n {
            if self.best_bits.as_ref().is_none_or(|best| self.bits < *best) {
                self.best_bits = Some(self.bits.clone());
                self.best_order = self.order.clone();
            }
            return;
        }
        let start = self.bits.len();
        let mut tried: Vec<usize> = Vec::new();
        for e in 0..self.n {
            if self.used[e] || self.class[e] != self.slot_class[pos] || tried.contains(&self.twin[e]) {
                continue;
            }
            tried.push(self.twin[e]);
            for q in 0..pos {
                let other = self.order[q];
                self.bits.push(self.poset.lt(other, e));
                self.bits.push(self.poset.lt(e, other));
            }
            if !self.beaten() {
                self.used[e] = true;
                self.order.push(e);
                self.run(pos + 1);
                self.order.pop();
                self.used[e] = false;
            }
            self.bits.truncate(start);
        }
    }
}

pub fn canonicalize(poset: &Poset) -> Result<Canonical> {
    let n = poset.len();
    if n > MAX_CANON_N {
        return Err(Error::Budget { n, cap: MAX_CANON_N });
    }
    let class = refine_classes(poset);
    let mut slot_class = class.clone();
    slot_class.sort_unstable();
    let signature = |x: usize| {
        (poset.strict_down(x).collect::<Vec<_>>(), poset.strict_up(x).collect::<Vec<_>>())
    };
    let sigs: Vec<_> = (0..n).map(signature).collect();
    let twin: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| sigs[y] == sigs[x]).expect("x itself")).collect();
    let mut search = Search {
        poset,
        n,
        slot_class,
        class,
        twin,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n),
        best_bits: None,
        best_order: Vec::new(),
    };
    search.run(0);
    let bits = search.best_bits.expect("at least one ordering exists");
    let mut code = vec![n as u8];
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> i;
            }
        }
        code.push(byte);
    }
    Ok(Canonical { code, order: search.best_order })
}

/// Canonical code as a hex string.
pub fn canonical_string(poset: &Poset) -> Result<String> {
    Ok(canonicalize(poset)?.hex())
}
