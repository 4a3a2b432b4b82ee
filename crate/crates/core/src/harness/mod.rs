//! Generation of small posets and sweeps checking the open bounds on them.

pub mod canon;
pub mod conjectures;
pub mod generate;

pub use canon::{canonical_string, canonicalize, Canonical};
pub use conjectures::{check_conjectures, scan_catalog, ConjectureReport, ScanChecks, ScanSummary};
pub use generate::{generate_posets, PosetCatalog};
