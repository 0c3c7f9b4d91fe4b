//! Exact distributions, moment reports, asymptotic predictions and CLT checks.

pub mod asymptotic;
pub mod clt;
pub mod constants;
pub mod distribution;
pub mod report;

pub use asymptotic::{asymptotic_prediction, clt_parameters, error_exponent, Statistic};
pub use clt::{clt_experiment, clt_exploratory, CLTReport};
pub use constants::{constant_alpha, total_asymptotics, TotalKind};
pub use distribution::{brute_census, brute_distribution, gf_distribution, Census, Distribution};
pub use report::{comparison_report, exact_statistic, exact_statistics, total_report, MomentReport, Quantity};
