//! Exact truncated power series and the generating-function machinery.

pub mod bivariate;
pub mod extract;
pub mod gf;
pub mod identities;
pub mod moments;
pub mod operators;
pub mod ring;
pub mod univariate;

pub use bivariate::TSeries2;
pub use extract::{u_extract, u_extract_all};
pub use gf::{gf_row, gf_table, GfTable, SizePolynomial};
pub use moments::{
    explicit_expectation, moment_table, moment_value, old_path_segments_expectation_table,
    total_paths_expectation_table,
};
pub use operators::expansion_operator;
pub use ring::Ring;
pub use univariate::{IntSeries, Series, USeries};
