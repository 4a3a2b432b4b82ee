//! Exact closed forms, each checked against enumeration in the tests.

pub mod attach;
pub mod irf;
pub mod ordinal;
pub mod weak_order;
pub mod wposet;

pub use attach::{
    attach_antichain, composition_matrices, pedestal_coeffs, quasi_plus_tangled_formula, CompositionMatrices, PedestalCoeffs,
};
pub use irf::{irf_bound, irf_bound_limit, irf_evaluate, irf_tangled_by_element, IrfEvaluation, TreeRoute};
pub use ordinal::{broom_coeff, broom_f, broom_poset, composition_poset, ordinal_sum_antichains_g};
pub use weak_order::{weak_order_family, CoeffFamily, Refinement};
pub use wposet::{w_poset_tangled, w_poset_tangled_at_y};
