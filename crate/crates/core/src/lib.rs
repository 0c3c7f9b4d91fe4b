//! Deterministic fringe reductions of rooted plane trees.
//!
//! Trees, the four reductions, exact generating-function tables and moment
//! series, enumeration and uniform sampling, and the comparisons of exact
//! values against asymptotic expansions.

pub mod analysis;
pub mod combinatorics;
pub mod ensemble;
pub mod error;
pub mod exec;
pub mod reduction;
pub mod series;
pub mod tree;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use reduction::{reduce_iter, reduce_once, ReductionMode, ReductionOutcome};
pub use tree::{parse_tree, serialize_tree, tree_metrics, PlaneTree, TreeMetrics, Variant};
