//! Edge collapsing, spanning trees, vertex counts and lower bounds.

mod bounds;
mod count;
mod map;
mod trees;

pub use bounds::{general_lower_bound, lower_bound_dipole, lower_bound_rose};
pub use count::{
    kappa, kappa_tilde, CountEngine, CountReport, Counter, KappaTilde, MemoStore, COUNT_VERSION,
    DD_VARIABLE_LIMIT,
};
pub use map::{collapse, collapse_with, collapsed_edge_count, is_collapsed, CollapseMap};
pub use trees::{bareiss_determinant, spanning_tree_count};
