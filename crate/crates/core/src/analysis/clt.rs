use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::asymptotic::{clt_parameters, old_paths_linear_parameters};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ensemble::sample_map;
use crate::reduction::{final_size, ReductionMode};

#[derive(Clone, Debug, Serialize)]
pub struct CLTReport {
    pub mode: ReductionMode,
    pub n: usize,
    pub rounds: usize,
    pub samples: usize,
    pub seed: u64,
    pub mu: f64,
    pub sigma2: f64,
    /// False for the exploratory experiment without a limit theorem.
    pub theorem: bool,
    pub standardized_mean: f64,
    pub standardized_variance: f64,
    pub ks_distance: f64,
}

/// Kolmogorov-Smirnov distance between the empirical law of `xs` and N(0, 1).
pub fn ks_distance(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let phi = Normal::standard();
    let m = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = phi.cdf(x);
            ((i + 1) as f64 / m - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max)
}

fn run(
    mode: ReductionMode,
    n: usize,
    r: usize,
    samples: usize,
    seed: u64,
    (mu, sigma2): (f64, f64),
    theorem: bool,
    exec: Exec,
) -> Result<CLTReport> {
    if sigma2 <= 0.0 {
        return Err(Error::InvalidArgument("limiting variance is zero; at least one round is needed".into()));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("at least two samples are needed".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    let nf = n as f64;
    let (centre, scale) = (mu * nf, (sigma2 * nf).sqrt());
    let mut xs = sample_map(n, samples, seed, exec, |t| (final_size(&t, mode, r) as f64 - centre) / scale);
    let m = samples as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let variance = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let ks = ks_distance(&mut xs);
    Ok(CLTReport {
        mode,
        n,
        rounds: r,
        samples,
        seed,
        mu,
        sigma2,
        theorem,
        standardized_mean: mean,
        standardized_variance: variance,
        ks_distance: ks,
    })
}

/// Samples trees, reduces them and standardizes the final sizes with the
/// limiting constants of the central limit theorem.
pub fn clt_experiment(mode: ReductionMode, n: usize, r: usize, samples: usize, seed: u64, exec: Exec) -> Result<CLTReport> {
    let params = clt_parameters(mode, r)?;
    run(mode, n, r, samples, seed, params, true, exec)
}

/// Same experiment for old-path reduction, which has no proven limit law;
/// the report is flagged accordingly.
pub fn clt_exploratory(n: usize, r: usize, samples: usize, seed: u64, exec: Exec) -> Result<CLTReport> {
    run(ReductionMode::OldPaths, n, r, samples, seed, old_paths_linear_parameters(r), false, exec)
}
