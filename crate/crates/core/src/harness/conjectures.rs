//! Checks of the open tangled-count bounds on individual posets and whole
//! catalogs. A failed bound is recorded in the report, never raised.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumeration::{sequence_shape, sorting_gf, tangled_report, EnumConfig};
use crate::error::Result;
use crate::harness::canon::canonical_string;
use crate::harness::generate::PosetCatalog;
use crate::io::decimal_vec;
use crate::perm::factorial;
use crate::poset::Poset;

/// Per-element evidence for the `(n-2)!` bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCheck {
    pub element: usize,
    #[serde(with = "crate::io::decimal")]
    pub count: BigUint,
    /// Exactly one minimal element lies strictly below.
    pub predicted_equal: bool,
    pub observed_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub id: String,
    pub n: usize,
    pub minimal_count: usize,
    pub covers: Vec<[usize; 2]>,
    pub elements: Vec<ElementCheck>,
    #[serde(with = "crate::io::decimal")]
    pub total: BigUint,
    /// `(n-2)!`
    #[serde(with = "crate::io::decimal")]
    pub element_bound: BigUint,
    /// `(n-m)(n-2)!` with `m` minimal elements.
    #[serde(with = "crate::io::decimal")]
    pub hodges_bound: BigUint,
    /// `(n-1)!`
    #[serde(with = "crate::io::decimal")]
    pub total_bound: BigUint,
    pub element_bound_ok: bool,
    pub equality_ok: bool,
    pub hodges_ok: bool,
    pub total_bound_ok: bool,
    /// A tangled labeling exists exactly when some minimal element is a
    /// basin.
    pub basin_ok: bool,
}

impl ConjectureReport {
    pub fn pass(&self) -> bool {
        self.element_bound_ok && self.equality_ok && self.hodges_ok && self.total_bound_ok && self.basin_ok
    }

    /// Elements exceeding `(n-2)!` or breaking the equality description.
    pub fn offending(&self) -> Vec<&ElementCheck> {
        self.elements
            .iter()
            .filter(|e| e.count > self.element_bound || e.predicted_equal != e.observed_equal)
            .collect()
    }
}

pub fn check_conjectures(poset: &Poset, config: &EnumConfig) -> Result<ConjectureReport> {
    let n = poset.len();
    let report = tangled_report(poset, config)?;
    let element_bound = factorial(n - 2);
    let elements: Vec<ElementCheck> = report
        .by_element
        .iter()
        .enumerate()
        .map(|(x, c)| ElementCheck {
            element: x,
            count: c.clone(),
            predicted_equal: poset.has_unique_minimal_below(x),
            observed_equal: *c == element_bound,
        })
        .collect();
    let m = poset.minimal_elements().len();
    let hodges_bound = &element_bound * (n - m);
    let total_bound = factorial(n - 1);
    let id = canonical_string(poset).unwrap_or_else(|_| format!("n{n}"));
    let has_basin = !poset.basins().is_empty();
    Ok(ConjectureReport {
        id,
        n,
        minimal_count: m,
        covers: poset.covers().iter().map(|&(a, b)| [a, b]).collect(),
        element_bound_ok: elements.iter().all(|e| e.count <= element_bound),
        equality_ok: elements.iter().all(|e| e.predicted_equal == e.observed_equal),
        hodges_ok: report.total <= hodges_bound,
        total_bound_ok: report.total <= total_bound,
        basin_ok: has_basin == (report.total > BigUint::from(0u32)),
        elements,
        total: report.total,
        element_bound,
        hodges_bound,
        total_bound,
    })
}

/// Which properties a catalog scan evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanChecks {
    pub bounds: bool,
    pub unimodality: bool,
}

impl Default for ScanChecks {
    fn default() -> Self {
        ScanChecks { bounds: true, unimodality: false }
    }
}

/// A poset whose sorting coefficients are not unimodal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUnimodal {
    pub covers: Vec<[usize; 2]>,
    #[serde(with = "decimal_vec")]
    pub sorting: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub n: usize,
    pub connected_only: bool,
    pub posets: usize,
    /// Full reports of posets failing any bound.
    pub counterexamples: Vec<ConjectureReport>,
    pub element_bound_failures: usize,
    pub equality_failures: usize,
    pub hodges_failures: usize,
    pub total_bound_failures: usize,
    pub basin_failures: usize,
    pub non_unimodal: Vec<NonUnimodal>,
}

impl ScanSummary {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

enum Outcome {
    Report(Box<ConjectureReport>),
    NonUnimodal(NonUnimodal),
}

fn scan_one(poset: &Poset, checks: ScanChecks, inner: &EnumConfig) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    if checks.bounds && poset.len() >= 2 {
        out.push(Outcome::Report(Box::new(check_conjectures(poset, inner)?)));
    }
    if checks.unimodality {
        let f = sorting_gf(poset, inner)?;
        if !sequence_shape(&f.coeffs).unimodal {
            let covers = poset.covers().iter().map(|&(a, b)| [a, b]).collect();
            out.push(Outcome::NonUnimodal(NonUnimodal { covers, sorting: f.coeffs }));
        }
    }
    Ok(out)
}

/// Runs the selected checks on every catalog entry. Workers take posets in
/// turn and enumerate each one single-threaded; results are gathered in
/// catalog order.
pub fn scan_catalog(catalog: &PosetCatalog, checks: ScanChecks, config: &EnumConfig) -> Result<ScanSummary> {
    let inner = EnumConfig { threads: 1, ..*config };
    let threads = config.threads.max(1).min(catalog.entries.len().max(1));
    let per_poset: Vec<Result<Vec<Outcome>>> = if threads == 1 {
        catalog.entries.iter().map(|p| scan_one(p, checks, &inner)).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let mut slots: Vec<Option<Result<Vec<Outcome>>>> = Vec::new();
        slots.resize_with(catalog.entries.len(), || None);
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|_| {
                    let next = &next;
                    let inner = &inner;
                    scope.spawn(move || {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                            if i >= catalog.entries.len() {
                                break;
                            }
                            done.push((i, scan_one(&catalog.entries[i], checks, inner)));
                        }
                        done
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect::<Vec<_>>()
        });
        for (i, r) in results {
            slots[i] = Some(r);
        }
        slots.into_iter().map(|s| s.expect("every poset scanned")).collect()
    };

    let mut summary = ScanSummary {
        n: catalog.n,
        connected_only: catalog.connected_only,
        posets: catalog.entries.len(),
        counterexamples: Vec::new(),
        element_bound_failures: 0,
        equality_failures: 0,
        hodges_failures: 0,
        total_bound_failures: 0,
        basin_failures: 0,
        non_unimodal: Vec::new(),
    };
    for outcomes in per_poset {
        for outcome in outcomes? {
            match outcome {
                Outcome::Report(r) => {
                    summary.element_bound_failures += usize::from(!r.element_bound_ok);
                    summary.equality_failures += usize::from(!r.equality_ok);
                    summary.hodges_failures += usize::from(!r.hodges_ok);
                    summary.total_bound_failures += usize::from(!r.total_bound_ok);
                    summary.basin_failures += usize::from(!r.basin_ok);
                    if !r.pass() {
                        summary.counterexamples.push(*r);
                    }
                }
                Outcome::NonUnimodal(u) => summary.non_unimodal.push(u),
            }
        }
    }
    Ok(summary)
}
