use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::combinatorics::binary_height_derivs_at_quarter;
use crate::error::{Error, Result};
use crate::reduction::ReductionMode;
use crate::series::gf::paths_equivalent_rounds;
use crate::tree::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    Mean,
    Variance,
    /// d-th factorial moment E[X(X-1)...(X-d+1)].
    Factorial(usize),
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Mean => f.write_str("mean"),
            Statistic::Variance => f.write_str("variance"),
            Statistic::Factorial(d) => write!(f, "factorial({d})"),
        }
    }
}

impl FromStr for Statistic {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mean" => Ok(Statistic::Mean),
            "variance" => Ok(Statistic::Variance),
            _ => s
                .strip_prefix("factorial(")
                .and_then(|t| t.strip_suffix(')'))
                .and_then(|t| t.parse().ok())
                .filter(|&d| d >= 1)
                .map(Statistic::Factorial)
                .ok_or_else(|| format!("unknown statistic `{s}`")),
        }
    }
}

impl Serialize for Statistic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Statistic {
    /// Mean is the first factorial moment.
    fn normalized(self) -> Self {
        match self {
            Statistic::Factorial(1) => Statistic::Mean,
            s => s,
        }
    }
}

fn unsupported(mode: ReductionMode, variant: Variant, stat: Statistic) -> Error {
    Error::Unsupported(format!("no asymptotic expansion of the {stat} of {variant} under {mode}"))
}

fn binom_f(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

// Leaf-cutting size after r rounds.
fn leaves_size(stat: Statistic, n: f64, r: f64) -> f64 {
    match stat {
        Statistic::Mean => n / (r + 1.0) - r * (r - 1.0) / (6.0 * (r + 1.0)),
        Statistic::Variance => r * (r + 2.0) * n / (6.0 * (r + 1.0).powi(2)),
        Statistic::Factorial(d) => {
            let df = d as f64;
            let p = (r + 1.0).powi(d as i32);
            n.powi(d as i32) / p
                + df * (df * r * r - 4.0 * df * r - 3.0 * r * r - 6.0 * df + 6.0 * r + 6.0) / (12.0 * p)
                    * n.powi(d as i32 - 1)
        }
    }
}

/// (B, B', B'') of the binary-height polynomial at 1/4.
fn quarter_values(r: usize) -> (f64, f64, f64) {
    let [b, b1, b2] = binary_height_derivs_at_quarter(r);
    (b.to_f64(), b1.to_f64(), b2.to_f64())
}

fn old_leaves_size(stat: Statistic, n: f64, r: usize) -> Option<f64> {
    let (b, b1, b2) = quarter_values(r);
    Some(match stat {
        Statistic::Mean => (2.0 - b) * n - b1 / 8.0,
        Statistic::Variance => (b - b * b + (2.0 - b) * b1 / 2.0) * n,
        Statistic::Factorial(2) => {
            (2.0 - b).powi(2) * n * n + (2.0 * b - b * b - 2.0 + (2.0 - b) * b1 / 4.0) * n + (2.0 - b) * b2 / 64.0
                - b1 * b1 / 64.0
                - b * b1 / 8.0
        }
        Statistic::Factorial(_) => return None,
    })
}

fn old_paths_size(stat: Statistic, n: f64, r: f64) -> f64 {
    let mean = 2.0 * n / (r + 2.0) - r * (r + 1.0) / (3.0 * (r + 2.0));
    let var = 2.0 * r * (r + 1.0) * n / (3.0 * (r + 2.0).powi(2));
    match stat {
        Statistic::Mean => mean,
        Statistic::Variance => var,
        Statistic::Factorial(2) => var + mean * mean - mean,
        Statistic::Factorial(d) => {
            let df = d as f64;
            let di = d as i64;
            let lead = 2f64.powi(d as i32 - 1) * df / ((2.0 * df - 3.0) * (r + 2.0).powi(d as i32)) * n.powi(d as i32);
            let second = binom_f(2 * di - 5, di - 2) * (r * std::f64::consts::PI).sqrt() * df
                / (2f64.powi(d as i32 - 3) * (r + 2.0).powf(df - 0.5))
                * n.powf(df - 0.5);
            lead + second
        }
    }
}

fn old_paths_old_leaves(stat: Statistic, n: f64, r: f64) -> f64 {
    match stat {
        Statistic::Mean => n / (r + 2.0).powi(2) + (r + 3.0) * (r + 1.0) / (6.0 * (r + 2.0).powi(2)),
        Statistic::Variance => (r + 3.0) * (r + 1.0) * n / (3.0 * (r + 2.0).powi(4)),
        Statistic::Factorial(d) => n.powi(d as i32) / (r + 2.0).powi(2 * d as i32),
    }
}

fn old_paths_neither(stat: Statistic, n: f64, r: f64) -> f64 {
    match stat {
        Statistic::Mean => {
            2.0 * (r + 1.0) * n / (r + 2.0).powi(2) - (r * r + 3.0 * r + 3.0) * (r + 1.0) / (3.0 * (r + 2.0).powi(2))
        }
        Statistic::Variance => {
            2.0 * (r.powi(3) + 4.0 * r * r + 6.0 * r + 6.0) * (r + 1.0) * n / (3.0 * (r + 2.0).powi(4))
        }
        Statistic::Factorial(d) => {
            2f64.powi(d as i32) * (r + 1.0).powi(d as i32) * n.powi(d as i32) / (r + 2.0).powi(2 * d as i32)
        }
    }
}

/// Asymptotic expansion of a moment of the reduced tree, error term dropped.
pub fn asymptotic_prediction(mode: ReductionMode, variant: Variant, stat: Statistic, n: f64, r: usize) -> Result<f64> {
    let stat = stat.normalized();
    if stat == Statistic::Factorial(0) {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    let none = || unsupported(mode, variant, stat);
    match mode {
        ReductionMode::Leaves | ReductionMode::Paths => {
            let rr = if mode == ReductionMode::Paths { paths_equivalent_rounds(r) } else { r } as f64;
            match variant {
                Variant::Size => Ok(leaves_size(stat, n, rr)),
                Variant::InnerI => Ok(leaves_size(stat, n, rr + 1.0)),
                Variant::LeavesL if stat == Statistic::Mean => {
                    Ok(leaves_size(stat, n, rr) - leaves_size(stat, n, rr + 1.0))
                }
                _ => Err(none()),
            }
        }
        ReductionMode::OldLeaves => match variant {
            Variant::Size => old_leaves_size(stat, n, r).ok_or_else(none),
            _ => Err(none()),
        },
        ReductionMode::OldPaths => {
            let rr = r as f64;
            match variant {
                Variant::Size => Ok(old_paths_size(stat, n, rr)),
                Variant::OldLeafCount => Ok(old_paths_old_leaves(stat, n, rr)),
                Variant::NeitherCount => Ok(old_paths_neither(stat, n, rr)),
                _ => Err(none()),
            }
        }
    }
}

/// Exponent e of the dropped remainder O(n^e).
pub fn error_exponent(mode: ReductionMode, variant: Variant, stat: Statistic) -> f64 {
    match stat.normalized() {
        Statistic::Mean => -1.0,
        Statistic::Variance => 0.0,
        Statistic::Factorial(d) => {
            let d = d as f64;
            match (mode, variant) {
                (ReductionMode::Leaves | ReductionMode::Paths, _) => d - 1.5,
                (ReductionMode::OldLeaves, _) => -1.0,
                (ReductionMode::OldPaths, Variant::Size) if d == 2.0 => 0.0,
                _ => d - 1.0,
            }
        }
    }
}

/// (μ, σ²) with E X ~ μ n and Var X ~ σ² n, for modes with a central limit theorem.
pub fn clt_parameters(mode: ReductionMode, r: usize) -> Result<(f64, f64)> {
    match mode {
        ReductionMode::Leaves | ReductionMode::Paths => {
            let rr = if mode == ReductionMode::Paths { paths_equivalent_rounds(r) } else { r } as f64;
            Ok((1.0 / (rr + 1.0), rr * (rr + 2.0) / (6.0 * (rr + 1.0).powi(2))))
        }
        ReductionMode::OldLeaves => {
            let (b, b1, _) = quarter_values(r);
            Ok((2.0 - b, b - b * b + (2.0 - b) * b1 / 2.0))
        }
        ReductionMode::OldPaths => Err(Error::Unsupported(
            "no central limit theorem is known for old-path reduction sizes".into(),
        )),
    }
}

/// Leading mean and variance coefficients for old-path reduction sizes, used
/// only by the exploratory experiment.
pub fn old_paths_linear_parameters(r: usize) -> (f64, f64) {
    let r = r as f64;
    (2.0 / (r + 2.0), 2.0 * r * (r + 1.0) / (3.0 * (r + 2.0).powi(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = asymptotic_prediction(ReductionMode::Leaves, Variant::Size, Statistic::Mean, 300.0, 2).unwrap();
        assert!((v - (100.0 - 1.0 / 9.0)).abs() < 1e-12);
        let v = asymptotic_prediction(ReductionMode::OldPaths, Variant::Size, Statistic::Mean, 30.0, 1).unwrap();
        assert!((v - (20.0 - 2.0 / 9.0)).abs() < 1e-12);
        let v = asymptotic_prediction(ReductionMode::OldLeaves, Variant::Size, Statistic::Mean, 40.0, 1).unwrap();
        assert!((v - (30.0 - 0.125)).abs() < 1e-12);
        assert!(asymptotic_prediction(ReductionMode::OldLeaves, Variant::Size, Statistic::Factorial(3), 40.0, 1).is_err());
        assert!(clt_parameters(ReductionMode::OldPaths, 1).is_err());
    }

    #[test]
    fn factorial_one_is_mean() {
        for m in ReductionMode::ALL {
            let a = asymptotic_prediction(m, Variant::Size, Statistic::Factorial(1), 50.0, 2).unwrap();
            let b = asymptotic_prediction(m, Variant::Size, Statistic::Mean, 50.0, 2).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn parse_statistic() {
        assert_eq!("factorial(3)".parse::<Statistic>().unwrap(), Statistic::Factorial(3));
        assert_eq!("mean".parse::<Statistic>().unwrap(), Statistic::Mean);
        assert!("factorial(0)".parse::<Statistic>().is_err());
    }
}
