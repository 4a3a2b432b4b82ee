//! Isomorphism-free generation of small posets.
//!
//! Every poset on `n` elements arises from one on `n - 1` elements by adding
//! a new maximal element above some lower order ideal. Candidates are
//! canonicalized and deduplicated level by level.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::canon::{canonicalize, Canonical};
use crate::poset::{Poset, PosetFile};

/// Default largest `n` generated without an explicit override.
pub const DEFAULT_MAX_GEN_N: usize = 8;

/// One representative per isomorphism class, sorted by canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetCatalog {
    pub n: usize,
    pub connected_only: bool,
    pub entries: Vec<Poset>,
}

impl PosetCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One JSON cover-list record per line.
    pub fn write_ndjson<W: Write>(&self, mut out: W) -> Result<()> {
        for p in &self.entries {
            writeln!(out, "{}", p.to_json())?;
        }
        Ok(())
    }

    pub fn read_ndjson<R: BufRead>(input: R, connected_only: bool) -> Result<Self> {
        let mut entries = Vec::new();
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let file: PosetFile = serde_json::from_str(&line)?;
            entries.push(Poset::from_file(&file)?);
        }
        let n = entries.first().map_or(0, Poset::len);
        if entries.iter().any(|p| p.len() != n) {
            return Err(Error::Parse("catalog mixes poset sizes".into()));
        }
        Ok(PosetCatalog { n, connected_only, entries })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_ndjson(std::io::BufWriter::new(file))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let cat = Self::read_ndjson(std::io::BufReader::new(file), false)?;
        let connected_only = cat.entries.iter().all(Poset::is_connected);
        Ok(PosetCatalog { connected_only, ..cat })
    }
}

/// Lower order ideals of `poset` as element lists.
pub fn lower_ideals(poset: &Poset) -> Vec<Vec<usize>> {
    let n = poset.len();
    let below: Vec<u32> = (0..n).map(|x| poset.strict_down(x).fold(0u32, |m, y| m | 1 << y)).collect();
    (0u32..1 << n)
        .filter(|&set| (0..n).filter(|&x| set >> x & 1 == 1).all(|x| below[x] & !set == 0))
        .map(|set| (0..n).filter(|&x| set >> x & 1 == 1).collect())
        .collect()
}

/// All one-element extensions of `poset` by a new maximal element.
fn extensions(poset: &Poset) -> Vec<Poset> {
    let n = poset.len();
    let base: Vec<(usize, usize)> = poset.covers().to_vec();
    lower_ideals(poset)
        .into_iter()
        .map(|ideal| {
            let mut pairs = base.clone();
            pairs.extend(ideal.into_iter().map(|d| (d, n)));
            Poset::from_covers(n + 1, &pairs).expect("adding a maximal element keeps the order acyclic")
        })
        .collect()
}

fn canonical_all(candidates: &[Poset], threads: usize) -> Result<Vec<Canonical>> {
    let threads = threads.max(1).min(candidates.len().max(1));
    if threads == 1 {
        return candidates.iter().map(canonicalize).collect();
    }
    let chunk = candidates.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = candidates
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(canonicalize).collect::<Result<Vec<_>>>()))
            .collect();
        let mut out = Vec::with_capacity(candidates.len());
        for h in handles {
            out.extend(h.join().expect("canonicalization worker panicked")?);
        }
        Ok(out)
    })
}

/// All posets on `n` elements up to isomorphism; `threads` only spreads the
/// canonicalization work.
pub fn generate_all_levels(n: usize, threads: usize) -> Result<Vec<Vec<Poset>>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut levels = vec![vec![Poset::chain(1)?]];
    for _ in 1..n {
        let prev = levels.last().expect("at least one level");
        let candidates: Vec<Poset> = prev.iter().flat_map(extensions).collect();
        let canon = canonical_all(&candidates, threads)?;
        let mut unique: BTreeMap<Vec<u8>, Poset> = BTreeMap::new();
        for (cand, c) in candidates.iter().zip(canon) {
            unique.entry(c.code.clone()).or_insert_with(|| c.relabel(cand));
        }
        levels.push(unique.into_values().collect());
    }
    Ok(levels)
}

pub fn generate_posets(n: usize, connected: bool, threads: usize, force: bool) -> Result<PosetCatalog> {
    if n > DEFAULT_MAX_GEN_N && !force {
        return Err(Error::Budget { n, cap: DEFAULT_MAX_GEN_N });
    }
    if n > crate::harness::canon::MAX_CANON_N - 1 {
        return Err(Error::Param(format!("generation supports at most {} elements", crate::harness::canon::MAX_CANON_N - 1)));
    }
    let mut entries = generate_all_levels(n, threads)?.pop().expect("n levels");
    if connected {
        entries.retain(Poset::is_connected);
    }
    Ok(PosetCatalog { n, connected_only: connected, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let all = [1, 2, 5, 16, 63, 318];
        let connected = [1, 1, 3, 10, 44, 238];
        let levels = generate_all_levels(6, 2).unwrap();
        for n in 1..=6 {
            let level = &levels[n - 1];
            assert_eq!(level.len(), all[n - 1], "all posets on {n}");
            assert_eq!(level.iter().filter(|p| p.is_connected()).count(), connected[n - 1], "connected on {n}");
        }
    }

    #[test]
    fn three_element_connected() {
        let cat = generate_posets(3, true, 1, false).unwrap();
        assert_eq!(cat.len(), 3);
        assert!(cat.connected_only);
    }

    #[test]
    fn catalog_round_trip() {
        let cat = generate_posets(4, false, 1, false).unwrap();
        let mut buf = Vec::new();
        cat.write_ndjson(&mut buf).unwrap();
        let back = PosetCatalog::read_ndjson(buf.as_slice(), false).unwrap();
        assert_eq!(back.entries, cat.entries);
    }

    #[test]
    fn ideals_of_lambda() {
        let p = Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(lower_ideals(&p).len(), 5);
    }

    #[test]
    fn budget() {
        assert!(matches!(generate_posets(9, false, 1, false), Err(Error::Budget { .. })));
    }
}
