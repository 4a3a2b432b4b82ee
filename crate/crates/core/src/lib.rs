//! Exact combinatorics of extended promotion on labelings of finite posets.
//!
//! The crate builds posets and the special families with closed forms for
//! promotion, runs promotion on individual labelings, enumerates all
//! labelings to obtain sorting and cumulative generating functions and
//! tangled counts, evaluates the known closed forms, and sweeps catalogs of
//! small posets for counterexamples to the open bounds.

pub mod closed_forms;
pub mod dot;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod harness;
pub mod io;
pub mod perm;
pub mod poset;
pub mod promotion;

pub use enumeration::{EnumConfig, GenFun, GenFunKind, KClassCounts, SequenceShape, TangleReport};
pub use error::{Error, Result};
pub use families::{InflationSpec, ShoelacePair, ShoelaceSpec, WParams};
pub use poset::Poset;
pub use promotion::{Labeling, PromotionStep};
