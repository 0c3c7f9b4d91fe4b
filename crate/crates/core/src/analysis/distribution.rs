use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{catalan, falling};
use crate::ensemble::enumerate_trees;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::reduction::{reduction_trace, ReductionMode};
use crate::series::gf::{gf_row, SizePolynomial};
use crate::tree::{PlaneTree, Variant};

/// Exact law of a statistic of the reduced tree; non-survivors sit at 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution {
    pub n: usize,
    pub rounds: usize,
    pub mode: ReductionMode,
    pub variant: Variant,
    #[serde(serialize_with = "crate::analysis::report::ser_rationals")]
    pub masses: Vec<BigRational>,
}

impl Distribution {
    fn from_counts(mode: ReductionMode, n: usize, rounds: usize, variant: Variant, counts: &[BigInt]) -> Self {
        let total = catalan(n - 1);
        let mut masses = vec![BigRational::zero(); n + 1];
        for (k, c) in counts.iter().enumerate() {
            masses[k] = BigRational::new(c.clone(), total.clone());
        }
        Distribution { n, rounds, mode, variant, masses }
    }

    pub fn total(&self) -> BigRational {
        self.masses.iter().sum()
    }

    pub fn factorial_moment(&self, d: usize) -> BigRational {
        self.masses
            .iter()
            .enumerate()
            .map(|(k, p)| p * BigRational::from_integer(falling(k as i64, d)))
            .sum()
    }

    pub fn mean(&self) -> BigRational {
        self.factorial_moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        self.factorial_moment(2) + &m - &m * &m
    }

    /// Nonzero masses as (value, mass).
    pub fn support(&self) -> Vec<(usize, &BigRational)> {
        self.masses.iter().enumerate().filter(|(_, p)| !p.is_zero()).collect()
    }
}

/// Statistics after every round up to `max_rounds`, over all trees of size n.
#[derive(Clone, Debug)]
pub struct Census {
    pub mode: ReductionMode,
    pub n: usize,
    pub max_rounds: usize,
    // counts[r][variant][value]; non-survivors are counted at value 0
    counts: Vec<Vec<Vec<u64>>>,
}

impl Census {
    fn empty(mode: ReductionMode, n: usize, max_rounds: usize) -> Self {
        Census { mode, n, max_rounds, counts: vec![vec![vec![0; n + 1]; Variant::ALL.len()]; max_rounds + 1] }
    }

    fn record(&mut self, tree: &PlaneTree) {
        for (r, m) in reduction_trace(tree, self.mode, self.max_rounds).iter().enumerate() {
            for (vi, v) in Variant::ALL.iter().enumerate() {
                let value = m.as_ref().map_or(0, |m| v.of(m));
                self.counts[r][vi][value] += 1;
            }
        }
    }

    fn merge(mut self, other: Census) -> Census {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                for (p, q) in x.iter_mut().zip(y) {
                    *p += q;
                }
            }
        }
        self
    }

    pub fn counts(&self, rounds: usize, variant: Variant) -> &[u64] {
        let vi = Variant::ALL.iter().position(|v| *v == variant).unwrap();
        &self.counts[rounds][vi]
    }

    pub fn distribution(&self, rounds: usize, variant: Variant) -> Distribution {
        let c: Vec<BigInt> = self.counts(rounds, variant).iter().map(|&x| BigInt::from(x)).collect();
        Distribution::from_counts(self.mode, self.n, rounds, variant, &c)
    }
}

/// Exhaustive census of one mode at one size.
pub fn brute_census(mode: ReductionMode, n: usize, max_rounds: usize, exec: Exec) -> Result<Census> {
    let trees: Vec<PlaneTree> = enumerate_trees(n)?.collect();
    Ok(exec.fold(
        &trees,
        || Census::empty(mode, n, max_rounds),
        |mut acc, t| {
            acc.record(t);
            acc
        },
        Census::merge,
    ))
}

pub fn brute_distribution(mode: ReductionMode, n: usize, rounds: usize, variant: Variant) -> Result<Distribution> {
    Ok(brute_census(mode, n, rounds, Exec::default())?.distribution(rounds, variant))
}

/// Distribution from a generating-function row; non-survivors from
/// C_{n-1} minus the row sum.
pub fn distribution_from_row(
    mode: ReductionMode,
    n: usize,
    rounds: usize,
    variant: Variant,
    row: &SizePolynomial,
) -> Distribution {
    let mut counts: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for (k, c) in row.coeffs().iter().enumerate() {
        counts[k] += c;
    }
    counts[0] += catalan(n - 1) - row.sum_coeffs();
    Distribution::from_counts(mode, n, rounds, variant, &counts)
}

pub fn gf_distribution(mode: ReductionMode, n: usize, rounds: usize, variant: Variant) -> Result<Distribution> {
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    let row = gf_row(mode, variant, rounds, n)?;
    Ok(distribution_from_row(mode, n, rounds, variant, &row))
}

/// Sum of masses is one by construction; exposed for checks.
pub fn is_normalized(d: &Distribution) -> bool {
    d.total().is_one()
}
