//! Finite posets on dense indices `0..n`.
//!
//! The strict order is stored transitively closed as packed bit rows, one
//! row of strict successors and one of strict predecessors per element. All
//! derived data (covers, extremal elements, heights, funnels) is computed
//! once at construction; a [`Poset`] never changes afterwards.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[inline]
fn bit(row: &[u64], i: usize) -> bool {
    (row[i / WORD] >> (i % WORD)) & 1 == 1
}

#[inline]
fn set_bit(row: &mut [u64], i: usize) {
    row[i / WORD] |= 1u64 << (i % WORD);
}

fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let tz = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * WORD + tz)
        })
    })
}

/// A finite strict partial order.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    words: usize,
    above: Vec<u64>,
    below: Vec<u64>,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    minimal: Vec<bool>,
    maximal: Vec<bool>,
    heights: Vec<usize>,
    funnels: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl PartialEq for Poset {
    /// Equality of the labelled relation; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.above == other.above
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from generating pairs `(i, j)` meaning `i < j`.
    ///
    /// The pairs need not be covers: the transitive closure is taken and the
    /// cover relation is recomputed, so redundant pairs are dropped.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let words = words_for(n);
        let mut above = vec![0u64; n * words];
        for &(a, b) in pairs {
            for idx in [a, b] {
                if idx >= n {
                    return Err(Error::Index { index: idx, n });
                }
            }
            if a == b {
                return Err(Error::Cycle(a));
            }
            set_bit(&mut above[a * words..(a + 1) * words], b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k: Vec<u64> = above[k * words..(k + 1) * words].to_vec();
            for i in 0..n {
                if bit(&above[i * words..(i + 1) * words], k) {
                    for (dst, src) in above[i * words..(i + 1) * words].iter_mut().zip(&row_k) {
                        *dst |= *src;
                    }
                }
            }
        }
        for i in 0..n {
            if bit(&above[i * words..(i + 1) * words], i) {
                return Err(Error::Cycle(i));
            }
        }
        Ok(Self::from_closed(n, above))
    }

    /// Builds a poset from a strict-order predicate; the predicate is closed
    /// transitively before use.
    pub fn from_predicate(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_covers(n, &pairs)
    }

    fn from_closed(n: usize, above: Vec<u64>) -> Self {
        let words = words_for(n);
        let mut below = vec![0u64; n * words];
        for a in 0..n {
            for b in iter_bits(&above[a * words..(a + 1) * words]) {
                set_bit(&mut below[b * words..(b + 1) * words], a);
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            let up_a = &above[a * words..(a + 1) * words];
            for b in iter_bits(up_a) {
                let down_b = &below[b * words..(b + 1) * words];
                if up_a.iter().zip(down_b).all(|(x, y)| x & y == 0) {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for &(a, b) in &covers {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }
        let minimal: Vec<bool> = (0..n).map(|x| lower_covers[x].is_empty()).collect();
        let maximal: Vec<bool> = (0..n).map(|x| upper_covers[x].is_empty()).collect();

        // Longest chain ending at each element, in a topological order given
        // by the size of the strict down-set.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| below[x * words..(x + 1) * words].iter().map(|w| w.count_ones()).sum::<u32>());
        let mut heights = vec![0usize; n];
        for &x in &order {
            heights[x] = lower_covers[x].iter().map(|&y| heights[y] + 1).max().unwrap_or(0);
        }

        let mut funnels = vec![Vec::new(); n];
        for y in 0..n {
            if minimal[y] {
                continue;
            }
            let mut mins = iter_bits(&below[y * words..(y + 1) * words]).filter(|&z| minimal[z]);
            if let (Some(only), None) = (mins.next(), mins.next()) {
                funnels[only].push(y);
            }
        }

        Poset {
            n,
            words,
            above,
            below,
            covers,
            upper_covers,
            lower_covers,
            minimal,
            maximal,
            heights,
            funnels,
            names: None,
        }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers)
    }

    /// The antichain on `n` elements.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_covers(n, &[])
    }

    /// Attaches element names; the count must match.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Malformed(format!(
                "{} names supplied for {} elements",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Index of the element carrying `name`, if names are present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|s| s == name)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn above_row(&self, x: usize) -> &[u64] {
        &self.above[x * self.words..(x + 1) * self.words]
    }

    #[inline]
    fn below_row(&self, x: usize) -> &[u64] {
        &self.below[x * self.words..(x + 1) * self.words]
    }

    /// `a < b` in the poset.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        bit(self.above_row(a), b)
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// Cover pairs `(a, b)` with `a ⋖ b`, sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    #[inline]
    pub fn is_minimal(&self, x: usize) -> bool {
        self.minimal[x]
    }

    #[inline]
    pub fn is_maximal(&self, x: usize) -> bool {
        self.maximal[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.minimal[x]).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.maximal[x]).collect()
    }

    /// Elements strictly above `x`, ascending.
    pub fn strict_up(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.above_row(x))
    }

    /// Elements strictly below `x`, ascending.
    pub fn strict_down(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.below_row(x))
    }

    /// The principal lower order ideal `↓x` (including `x`).
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.strict_down(x).collect();
        v.push(x);
        v.sort_unstable();
        v
    }

    pub fn up_degree(&self, x: usize) -> usize {
        self.above_row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn down_degree(&self, x: usize) -> usize {
        self.below_row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Length of the longest chain ending at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    /// Minimal elements strictly below `x`.
    pub fn minimals_below(&self, x: usize) -> Vec<usize> {
        self.strict_down(x).filter(|&z| self.minimal[z]).collect()
    }

    /// Whether exactly one minimal element lies strictly below `x`.
    pub fn has_unique_minimal_below(&self, x: usize) -> bool {
        let mut it = self.strict_down(x).filter(|&z| self.minimal[z]);
        it.next().is_some() && it.next().is_none()
    }

    /// `funnel(x)` for a minimal `x`; empty for non-minimal elements.
    pub fn funnel(&self, x: usize) -> &[usize] {
        &self.funnels[x]
    }

    #[inline]
    pub fn is_basin(&self, x: usize) -> bool {
        !self.funnels[x].is_empty()
    }

    pub fn basins(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_basin(x)).collect()
    }

    /// Funnel of every minimal element; basins are the keys with nonempty
    /// values.
    pub fn funnel_and_basins(&self) -> BTreeMap<usize, Vec<usize>> {
        (0..self.n)
            .filter(|&x| self.minimal[x])
            .map(|x| (x, self.funnels[x].clone()))
            .collect()
    }

    /// Whether every element comparable to something in `↓x` is comparable
    /// to `x`.
    pub fn is_loi_complete(&self, x: usize) -> bool {
        let down = self.down_set(x);
        (0..self.n).all(|z| self.comparable(z, x) || !down.iter().any(|&d| self.comparable(z, d)))
    }

    /// Whether `set` (indicator by element) is an upper order ideal.
    pub fn is_upper_ideal(&self, set: &[bool]) -> bool {
        (0..self.n).filter(|&x| set[x]).all(|x| self.strict_up(x).all(|y| set[y]))
    }

    /// Whether `set` (indicator by element) is a lower order ideal.
    pub fn is_lower_ideal(&self, set: &[bool]) -> bool {
        (0..self.n).filter(|&x| set[x]).all(|x| self.strict_down(x).all(|y| set[y]))
    }

    /// Connected components of the Hasse diagram, each sorted, ordered by
    /// smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for &y in self.upper_covers[x].iter().chain(&self.lower_covers[x]) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Every element of `self` below every element of `other`; `other`'s
    /// elements are shifted by `self.len()`.
    pub fn ordinal_sum(&self, other: &Poset) -> Poset {
        let shift = self.n;
        let mut pairs: Vec<(usize, usize)> = self.covers.clone();
        pairs.extend(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)));
        for &top in &self.maximal_elements() {
            for &bottom in &other.minimal_elements() {
                pairs.push((top, bottom + shift));
            }
        }
        Self::from_covers(self.n + other.n, &pairs).expect("ordinal sum of posets is a poset")
    }

    /// Side-by-side union; `other`'s elements are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let shift = self.n;
        let mut pairs: Vec<(usize, usize)> = self.covers.clone();
        pairs.extend(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)));
        Self::from_covers(self.n + other.n, &pairs).expect("disjoint union of posets is a poset")
    }

    /// Induced subposet on `elements`; element `elements[i]` becomes `i`.
    pub fn induced(&self, elements: &[usize]) -> Result<Poset> {
        for &e in elements {
            if e >= self.n {
                return Err(Error::Index { index: e, n: self.n });
            }
        }
        Self::from_predicate(elements.len(), |i, j| self.lt(elements[i], elements[j]))
    }

    /// The isomorphic poset in which element `x` is renamed `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Poset> {
        if perm.len() != self.n {
            return Err(Error::Malformed("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Malformed("not a permutation".into()));
            }
        }
        let pairs: Vec<_> = self.covers.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let out = Self::from_covers(self.n, &pairs)?;
        match &self.names {
            Some(names) => {
                let mut renamed = vec![String::new(); self.n];
                for (x, name) in names.iter().enumerate() {
                    renamed[perm[x]] = name.clone();
                }
                out.with_names(renamed)
            }
            None => Ok(out),
        }
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            n: self.n,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
            names: self.names.clone(),
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Poset> {
        let pairs: Vec<_> = file.covers.iter().map(|c| (c[0], c[1])).collect();
        let p = Self::from_covers(file.n, &pairs)?;
        match &file.names {
            Some(names) => p.with_names(names.clone()),
            None => Ok(p),
        }
    }

    /// Compact single-line JSON, covers sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("poset file serializes")
    }

    pub fn from_json(text: &str) -> Result<Poset> {
        let file: PosetFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Poset> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// On-disk form: `{"n": .., "covers": [[i, j], ..], "names": [..]?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda() -> Poset {
        Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap()
    }

    /// The nine-element poset with basins g and i.
    fn funnel_poset() -> Poset {
        let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];
        let id = |s: &str| names.iter().position(|&t| t == s).unwrap();
        let covers = [
            ("g", "d"),
            ("g", "e"),
            ("h", "e"),
            ("i", "e"),
            ("i", "f"),
            ("e", "b"),
            ("d", "b"),
            ("b", "a"),
            ("f", "c"),
            ("c", "a"),
        ];
        let pairs: Vec<_> = covers.iter().map(|&(x, y)| (id(x), id(y))).collect();
        Poset::from_covers(9, &pairs)
            .unwrap()
            .with_names(names.iter().map(|s| s.to_string()).collect())
            .unwrap()
    }

    #[test]
    fn lambda_structure() {
        let p = lambda();
        assert_eq!(p.minimal_elements(), vec![0, 1]);
        assert_eq!(p.maximal_elements(), vec![2]);
        assert_eq!(p.covers(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn single_element() {
        let p = Poset::from_covers(1, &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.is_minimal(0) && p.is_maximal(0));
    }

    #[test]
    fn redundant_covers_dropped() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.lt(0, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Poset::from_covers(0, &[]), Err(Error::Empty)));
        assert!(matches!(Poset::from_covers(2, &[(0, 2)]), Err(Error::Index { index: 2, n: 2 })));
        assert!(matches!(Poset::from_covers(2, &[(0, 1), (1, 0)]), Err(Error::Cycle(_))));
        assert!(matches!(Poset::from_covers(2, &[(1, 1)]), Err(Error::Cycle(1))));
    }

    #[test]
    fn ordinal_sums() {
        let a2 = Poset::antichain(2).unwrap();
        let a1 = Poset::antichain(1).unwrap();
        assert_eq!(a2.ordinal_sum(&a1), lambda());
        let c1 = Poset::chain(1).unwrap();
        assert_eq!(c1.ordinal_sum(&c1), Poset::chain(2).unwrap());
        let t = a2.ordinal_sum(&a2.ordinal_sum(&a2));
        assert_eq!(t.len(), 6);
        assert_eq!(t.covers().len(), 8);
        assert!(t.lt(0, 5) && !t.lt(0, 1));
    }

    #[test]
    fn funnels_with_two_basins() {
        let p = funnel_poset();
        let id = |s| p.index_of(s).unwrap();
        let fb = p.funnel_and_basins();
        assert_eq!(fb[&id("g")], vec![id("d")]);
        let mut fi = fb[&id("i")].clone();
        fi.sort();
        let mut expect = vec![id("f"), id("c")];
        expect.sort();
        assert_eq!(fi, expect);
        assert!(fb[&id("h")].is_empty());
        let mut basins = p.basins();
        basins.sort();
        let mut expect_b = vec![id("g"), id("i")];
        expect_b.sort();
        assert_eq!(basins, expect_b);
    }

    #[test]
    fn funnels_trivial_cases() {
        let l = lambda();
        assert!(l.basins().is_empty());
        let c3 = Poset::chain(3).unwrap();
        assert_eq!(c3.funnel(0), &[1, 2]);
        assert_eq!(c3.basins(), vec![0]);
    }

    #[test]
    fn loi_complete_elements() {
        let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
        let id = |s: &str| names.iter().position(|&t| t == s).unwrap();
        let covers = [
            ("c", "a"),
            ("c", "b"),
            ("d", "c"),
            ("e", "c"),
            ("g", "d"),
            ("g", "e"),
            ("f", "c"),
            ("i", "f"),
            ("h", "f"),
            ("j", "i"),
            ("j", "h"),
        ];
        let pairs: Vec<_> = covers.iter().map(|&(x, y)| (id(x), id(y))).collect();
        let p = Poset::from_covers(10, &pairs).unwrap();
        for s in ["c", "f", "g", "j"] {
            assert!(p.is_loi_complete(id(s)), "{s}");
        }
        for s in ["a", "b", "d", "e", "h", "i"] {
            assert!(!p.is_loi_complete(id(s)), "{s}");
        }
    }

    #[test]
    fn loi_trivial_cases() {
        let c4 = Poset::chain(4).unwrap();
        assert!(c4.is_loi_complete(3));
        let l = lambda();
        assert!(l.is_loi_complete(0) && l.is_loi_complete(1));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = funnel_poset();
        let text = p.to_json();
        let q = Poset::from_json(&text).unwrap();
        assert_eq!(q.to_json(), text);
        assert_eq!(q, p);
        assert!(text.starts_with("{\"n\":9,\"covers\":[["));
    }

    #[test]
    fn closure_is_idempotent() {
        let p = funnel_poset();
        let again = Poset::from_covers(p.len(), p.covers()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn components_and_connectivity() {
        let p = Poset::from_covers(5, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(p.components(), vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert!(!p.is_connected());
        assert!(funnel_poset().is_connected());
    }

    #[test]
    fn wide_posets_use_multiword_rows() {
        let c = Poset::chain(130).unwrap();
        assert!(c.lt(0, 129) && c.lt(64, 65) && !c.lt(100, 3));
        assert_eq!(c.covers().len(), 129);
        assert_eq!(c.height(129), 129);
    }
}
