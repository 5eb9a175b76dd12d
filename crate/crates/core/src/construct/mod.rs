//! Constructions on graphs with boundary: the two-tree split, balanced
//! boundary subsets and their Steklov test functions, tree planting on
//! cubic graphs, loop adding, and expander families with a prescribed
//! boundary-to-genus ratio.

mod family;
mod named;
mod planting;
mod split;
mod subset;

pub use family::{
    expander_family, BaseGraph, BaseProvider, FamilyMember, FamilySpec, StandardBaseProvider,
    MIN_BASE_CHEEGER,
};
pub use named::{heawood, k33, k4, petersen, theta_graph};
pub use planting::{add_loops, build_tk, plant_trees, planted_cheeger_bound};
pub use split::{two_tree_split, TreeSplit};
pub use subset::{balanced_boundary_subset, steklov_test_function, BalancedSubset};
