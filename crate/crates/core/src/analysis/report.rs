use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::asymptotic::{asymptotic_prediction, error_exponent, Statistic};
use super::constants::{total_asymptotics, TotalKind};
use crate::combinatorics::{catalan, falling};
use crate::error::{Error, Result};
use crate::reduction::ReductionMode;
use crate::series::gf::gf_row;
use crate::series::moments::{moment_series, old_path_segments_expectation_table, total_paths_expectation_table};
use crate::tree::Variant;

/// Exact rational as "p/q" (or "p" when integral).
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}

pub fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational_string))
}

/// Nearest double.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// What a report row measures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Quantity {
    Moment { mode: ReductionMode, variant: Variant, statistic: Statistic, rounds: usize },
    Total { total: TotalKind },
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Moment { mode, variant, statistic, rounds } => {
                write!(f, "{statistic} of {variant} under {mode}, r = {rounds}")
            }
            Quantity::Total { total } => write!(f, "expected total {total}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub n: usize,
    pub quantity: Quantity,
    #[serde(serialize_with = "ser_rational")]
    pub exact_value: BigRational,
    pub exact_float: f64,
    pub asymptotic_value: f64,
    pub residual: f64,
    /// residual / n^e where O(n^e) is the remainder of the expansion.
    pub residual_scaled: f64,
}

impl MomentReport {
    fn new(n: usize, quantity: Quantity, exact: BigRational, asymptotic: f64, exponent: f64) -> Self {
        let exact_float = to_f64(&exact);
        let residual = exact_float - asymptotic;
        MomentReport {
            n,
            quantity,
            exact_value: exact,
            exact_float,
            asymptotic_value: asymptotic,
            residual,
            residual_scaled: residual / (n as f64).powf(exponent),
        }
    }
}

fn row_factorial_moment(mode: ReductionMode, variant: Variant, d: usize, r: usize, n: usize) -> Result<BigRational> {
    let row = gf_row(mode, variant, r, n)?;
    let sum: BigInt = row.coeffs().iter().enumerate().map(|(k, c)| c * falling(k as i64, d)).sum();
    Ok(BigRational::new(sum, catalan(n - 1)))
}

/// E of the d-th falling factorial from the generating-function row of size n.
pub fn gf_factorial_moment(mode: ReductionMode, variant: Variant, d: usize, r: usize, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    row_factorial_moment(mode, variant, d, r, n)
}

/// Exact factorial moments for each size: closed moment series where one
/// exists, generating-function rows otherwise.
pub fn exact_factorial_moments(
    mode: ReductionMode,
    variant: Variant,
    d: usize,
    r: usize,
    sizes: &[usize],
) -> Result<Vec<BigRational>> {
    let max = sizes.iter().copied().max().unwrap_or(0);
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    if d == 0 {
        return Ok(sizes.iter().map(|_| BigRational::from_integer(1.into())).collect());
    }
    let closed = if max >= 2 {
        match moment_series(mode, variant, d, r, max) {
            Ok(g) => Some(g),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    sizes
        .iter()
        .map(|&n| match &closed {
            Some(g) if n >= 2 => Ok(g.coefficient(n)? / BigRational::from_integer(catalan(n - 1))),
            _ => row_factorial_moment(mode, variant, d, r, n),
        })
        .collect()
}

pub fn exact_factorial_moment(mode: ReductionMode, variant: Variant, d: usize, r: usize, n: usize) -> Result<BigRational> {
    Ok(exact_factorial_moments(mode, variant, d, r, &[n])?.remove(0))
}

/// Exact mean, variance or factorial moment for each size.
pub fn exact_statistics(
    mode: ReductionMode,
    variant: Variant,
    stat: Statistic,
    r: usize,
    sizes: &[usize],
) -> Result<Vec<BigRational>> {
    match stat {
        Statistic::Mean => exact_factorial_moments(mode, variant, 1, r, sizes),
        Statistic::Factorial(d) => exact_factorial_moments(mode, variant, d, r, sizes),
        Statistic::Variance => {
            let m1 = exact_factorial_moments(mode, variant, 1, r, sizes)?;
            let m2 = exact_factorial_moments(mode, variant, 2, r, sizes)?;
            Ok(m1.iter().zip(&m2).map(|(a, b)| b + a - a * a).collect())
        }
    }
}

pub fn exact_statistic(mode: ReductionMode, variant: Variant, stat: Statistic, r: usize, n: usize) -> Result<BigRational> {
    Ok(exact_statistics(mode, variant, stat, r, &[n])?.remove(0))
}

/// Exact values against the asymptotic expansion at each size.
pub fn comparison_report(
    mode: ReductionMode,
    variant: Variant,
    stat: Statistic,
    r: usize,
    sizes: &[usize],
) -> Result<Vec<MomentReport>> {
    // fail early on unsupported expansions
    asymptotic_prediction(mode, variant, stat, 2.0, r)?;
    let exact = exact_statistics(mode, variant, stat, r, sizes)?;
    let e = error_exponent(mode, variant, stat);
    let quantity = Quantity::Moment { mode, variant, statistic: stat, rounds: r };
    sizes
        .iter()
        .zip(exact)
        .map(|(&n, x)| {
            let a = asymptotic_prediction(mode, variant, stat, n as f64, r)?;
            Ok(MomentReport::new(n, quantity, x, a, e))
        })
        .collect()
}

/// Exact expected totals for n = 2..=max_n.
pub fn total_expectation_table(kind: TotalKind, max_n: usize) -> Vec<BigRational> {
    match kind {
        TotalKind::Paths => total_paths_expectation_table(max_n),
        TotalKind::OldPathSegments => old_path_segments_expectation_table(max_n),
    }
}

/// Exact expected totals against their expansions.
pub fn total_report(kind: TotalKind, sizes: &[usize]) -> Result<Vec<MomentReport>> {
    if sizes.iter().any(|&n| n < 2) {
        return Err(Error::InvalidArgument("total expectations start at n = 2".into()));
    }
    let max = sizes.iter().copied().max().unwrap_or(2);
    let table = total_expectation_table(kind, max);
    let quantity = Quantity::Total { total: kind };
    Ok(sizes
        .iter()
        .map(|&n| {
            let x = table[n - 2].clone();
            MomentReport::new(n, quantity, x, total_asymptotics(kind, n as f64), kind.error_exponent())
        })
        .collect())
}

/// Mass at zero vanishes for the modes whose trees always survive.
pub fn zero_mass_ok(mode: ReductionMode, masses: &[BigRational]) -> bool {
    !mode.always_survives() || masses.first().is_none_or(|m| m.is_zero())
}
