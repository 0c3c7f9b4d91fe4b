//! Closed-form factorial moment series and expectation formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::extract::{extraction_weights, extract_with};
use super::gf::paths_equivalent_rounds;
use super::univariate::{sparse, IntSeries, Sparse, USeries};
use crate::combinatorics::{binary_height_poly, binomial, catalan, factorial, falling, narayana_assoc_poly};
use crate::error::{Error, Result};
use crate::reduction::ReductionMode;
use crate::tree::Variant;

fn one_minus(k: usize) -> Sparse<BigRational> {
    sparse(&[(0, 1), (k, -1)])
}

fn one_plus(k: usize) -> Sparse<BigRational> {
    sparse(&[(0, 1), (k, 1)])
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn div_pow(s: USeries, p: &Sparse<BigRational>, e: usize) -> USeries {
    (0..e).fold(s, |acc, _| acc.div_sparse(p).expect("unit constant term"))
}

fn mul_pow(s: USeries, p: &Sparse<BigRational>, e: usize) -> USeries {
    (0..e).fold(s, |acc, _| acc.mul_sparse(p))
}

/// Leaves, size after r rounds:
/// u^d d! Ñ_{d-1}(u^r) / ((1+u)(1-u^{r+1})^d (1-u)^{d-1}).
pub fn leaves_size_series(d: usize, r: usize, order: usize) -> USeries {
    let n = USeries::poly_at_monomial(order, &narayana_assoc_poly(d - 1), r)
        .shift_up(d)
        .scale(&rat(factorial(d)));
    let s = div_pow(n, &one_plus(1), 1);
    let s = div_pow(s, &one_minus(r + 1), d);
    div_pow(s, &one_minus(1), d - 1)
}

/// Leaves, number of leaves after r rounds:
/// u^{d(r+1)} (1-u) d! R_d(u) / ((1+u)(1-u^{r+2})^d (1-u^{r+1})^d),
/// where R_d(u) = u^d Ñ_{d-1}(1/u).
pub fn leaves_fringe_series(d: usize, r: usize, order: usize) -> USeries {
    let rev = narayana_assoc_poly(d - 1).reversed(d);
    let s = USeries::from_poly(order, &rev).shift_up(d * (r + 1)).mul_sparse(&one_minus(1)).scale(&rat(factorial(d)));
    let s = div_pow(s, &one_plus(1), 1);
    let s = div_pow(s, &one_minus(r + 2), d);
    div_pow(s, &one_minus(r + 1), d)
}

/// Δ = (1-u)/(1+u)
fn delta(order: usize) -> USeries {
    USeries::one(order).mul_sparse(&one_minus(1)).div_sparse(&one_plus(1)).unwrap()
}

/// OldPaths size after r rounds, d-th factorial moment.
pub fn old_paths_size_series(d: usize, r: usize, order: usize) -> USeries {
    if d == 1 {
        let s = USeries::monomial(order, BigRational::one(), 1).mul_sparse(&one_plus(r + 1));
        let s = div_pow(s, &one_plus(1), 1);
        return div_pow(s, &one_minus(r + 2), 1);
    }
    // A = u(1+u^{r+1})/((1-u)(1-u^{r+2})), W = u S/(1-u), S = sqrt((1-u^r)/(1-u^{r+2}))
    let u = USeries::monomial(order, BigRational::one(), 1);
    let a = div_pow(div_pow(u.mul_sparse(&one_plus(r + 1)), &one_minus(1), 1), &one_minus(r + 2), 1);
    let w = if r == 0 {
        USeries::zero(order)
    } else {
        let ratio = div_pow(USeries::one(order).mul_sparse(&one_minus(r)), &one_minus(r + 2), 1);
        div_pow(ratio.sqrt().expect("constant term 1").shift_up(1), &one_minus(1), 1)
    };
    let alpha = a.add(&w);
    let beta = a.sub(&w);
    let ap = alpha.powers(d);
    let bp = beta.powers(d);
    let nt = narayana_assoc_poly(d - 1);
    let mut acc = USeries::zero(order);
    for (j, c) in nt.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&ap[d - j].mul(&bp[j]).scale(&rat(c.clone())));
        }
    }
    acc.mul(&delta(order)).scale(&rat(factorial(d)))
}

/// OldPaths second factorial moment in the short form
/// 2(1+u)u^{r+2}/((1-u)(1-u^{r+2})^2).
pub fn old_paths_size_second(r: usize, order: usize) -> USeries {
    let s = USeries::monomial(order, BigRational::from_integer(2.into()), r + 2).mul_sparse(&one_plus(1));
    let s = div_pow(s, &one_minus(1), 1);
    div_pow(s, &one_minus(r + 2), 2)
}

/// OldPaths old-leaf count: (2d-2)_{d-1} Δ u^{d(r+2)} / (1-u^{r+2})^{2d}.
pub fn old_paths_old_leaf_series(d: usize, r: usize, order: usize) -> USeries {
    let c = falling(2 * d as i64 - 2, d - 1);
    let s = delta(order).shift_up(d * (r + 2)).scale(&rat(c));
    div_pow(s, &one_minus(r + 2), 2 * d)
}

/// OldPaths count of nodes neither old leaves nor their parents.
pub fn old_paths_neither_series(d: usize, r: usize, order: usize) -> USeries {
    if d == 1 {
        let s = USeries::monomial(order, BigRational::one(), 1).mul_sparse(&one_minus(r + 1)).mul_sparse(&one_plus(r + 2));
        let s = div_pow(s, &one_plus(1), 1);
        return div_pow(s, &one_minus(r + 2), 2);
    }
    let c = (BigInt::one() << d) * factorial(d);
    let s = USeries::poly_at_monomial(order, &narayana_assoc_poly(d - 1), r + 2).shift_up(d).scale(&rat(c));
    let s = mul_pow(s, &one_minus(r + 1), d);
    let s = div_pow(s, &one_minus(1), d - 1);
    let s = div_pow(s, &one_plus(1), 1);
    div_pow(s, &one_minus(r + 2), 2 * d)
}

/// Σ_k C(2k, k) z^k = (1-4z)^{-1/2}, and (1-4z)^{-3/2} = Σ (2k+1) C(2k,k) z^k.
fn central_series(order: usize, three_halves: bool) -> IntSeries {
    IntSeries::from_coeffs(
        order,
        (0..=order)
            .map(|k| {
                let c = binomial(2 * k as i64, k as i64);
                if three_halves {
                    c * BigInt::from(2 * k + 1)
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// OldLeaves size, d in {1, 2}, as a z-series with integer coefficients.
pub fn old_leaves_size_zseries(d: usize, r: usize, order: usize) -> Result<IntSeries> {
    let b = IntSeries::from_poly(order, &binary_height_poly(r));
    let two = IntSeries::monomial(order, BigInt::from(2), 0);
    let two_minus_b = two.sub(&b);
    match d {
        1 => Ok(two_minus_b.shift_up(1).mul(&central_series(order, false))),
        2 => {
            let first = two_minus_b.mul(&two_minus_b).shift_up(2).scale(&BigInt::from(2)).mul(&central_series(order, true));
            let one_minus_b = IntSeries::one(order).sub(&b);
            let second = one_minus_b.shift_up(1).scale(&BigInt::from(2)).mul(&central_series(order, false));
            Ok(first.add(&second))
        }
        _ => Err(Error::Unsupported(format!(
            "no closed form for the order-{d} factorial moment of old-leaf reduction sizes"
        ))),
    }
}

/// How a closed form is turned into coefficients.
pub enum ClosedForm {
    /// Series in u, extracted with z = u/(1+u)^2.
    U(USeries),
    /// Plain z-series.
    Z(IntSeries),
}

impl ClosedForm {
    /// [z^n]
    pub fn coefficient(&self, n: usize) -> Result<BigRational> {
        match self {
            ClosedForm::U(g) => super::extract::u_extract(g, n),
            ClosedForm::Z(g) => {
                if g.order() < n {
                    return Err(Error::InsufficientOrder { have: g.order(), need: n });
                }
                Ok(rat(g.coeff(n).clone()))
            }
        }
    }
}

/// Series whose [z^n] is C_{n-1} times E of the d-th falling factorial.
pub fn moment_series(mode: ReductionMode, variant: Variant, d: usize, r: usize, order: usize) -> Result<ClosedForm> {
    if d == 0 {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    let unsupported = || Error::Unsupported(format!("no closed moment form for {variant} under {mode}"));
    match mode {
        ReductionMode::Leaves | ReductionMode::Paths => {
            let r = if mode == ReductionMode::Paths { paths_equivalent_rounds(r) } else { r };
            match variant {
                Variant::Size => Ok(ClosedForm::U(leaves_size_series(d, r, order))),
                Variant::InnerI => Ok(ClosedForm::U(leaves_size_series(d, r + 1, order))),
                Variant::LeavesL => Ok(ClosedForm::U(leaves_fringe_series(d, r, order))),
                _ => Err(unsupported()),
            }
        }
        ReductionMode::OldPaths => match variant {
            Variant::Size => Ok(ClosedForm::U(old_paths_size_series(d, r, order))),
            Variant::OldLeafCount => Ok(ClosedForm::U(old_paths_old_leaf_series(d, r, order))),
            Variant::NeitherCount => Ok(ClosedForm::U(old_paths_neither_series(d, r, order))),
            _ => Err(unsupported()),
        },
        ReductionMode::OldLeaves => match variant {
            Variant::Size => Ok(ClosedForm::Z(old_leaves_size_zseries(d, r, order)?)),
            _ => Err(unsupported()),
        },
    }
}

/// E of the d-th falling factorial for n = 2..=max_n (index 0 is n = 2).
pub fn moment_table(mode: ReductionMode, variant: Variant, d: usize, r: usize, max_n: usize) -> Result<Vec<BigRational>> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("moment tables start at n = 2".into()));
    }
    let g = moment_series(mode, variant, d, r, max_n)?;
    (2..=max_n).map(|n| Ok(g.coefficient(n)? / rat(catalan(n - 1)))).collect()
}

/// One entry of the moment table.
pub fn moment_value(mode: ReductionMode, variant: Variant, d: usize, r: usize, n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument("closed moment forms start at n = 2".into()));
    }
    let g = moment_series(mode, variant, d, r, n)?;
    Ok(g.coefficient(n)? / rat(catalan(n - 1)))
}

/// Expected size after r rounds from the explicit binomial sums
/// (Leaves and OldPaths only).
pub fn explicit_expectation(mode: ReductionMode, n: usize, r: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    let m = (n - 1) as i64;
    let b = |k: i64| binomial(2 * m, k);
    let total = match mode {
        ReductionMode::Leaves => {
            let step = (r + 1) as i64;
            let mut acc = BigInt::zero();
            let mut l = 1;
            while m + 1 - l * step >= 0 {
                acc += b(m + 1 - l * step) - b(m - l * step);
                l += 1;
            }
            acc
        }
        ReductionMode::OldPaths => {
            let step = (r + 2) as i64;
            let mut acc = b(m);
            let mut j = 0;
            while m - j * step - 1 >= 0 || m - (j + 1) * step + 1 >= 0 {
                acc += b(m - (j + 1) * step + 1) - b(m - j * step - 1);
                j += 1;
            }
            acc
        }
        _ => return Err(Error::Unsupported(format!("no explicit binomial expectation for {mode}"))),
    };
    Ok(BigRational::new(total, catalan(n - 1)))
}

/// [z^n] for n = 2..=max_n of an integral u-series, divided by C_{n-1}.
fn normalized_extractions(g: &IntSeries, max_n: usize) -> Vec<BigRational> {
    (2..=max_n)
        .map(|n| BigRational::new(extract_with(g, &extraction_weights(n)), catalan(n - 1)))
        .collect()
}

/// Series for the expected total number of paths, times C_{n-1}:
/// (1-u)/(1+u) Σ_{r≥1} u^{2^r - 1}/((1-u^{2^r})(1-u^{2^r - 1})).
pub fn total_paths_series(order: usize) -> IntSeries {
    let mut acc = IntSeries::zero(order);
    let mut q = 2usize;
    while q - 1 <= order {
        let t = IntSeries::monomial(order, BigInt::one(), q - 1)
            .div_sparse(&sparse(&[(0, 1), (q, -1)]))
            .and_then(|s| s.div_sparse(&sparse(&[(0, 1), (q - 1, -1)])))
            .expect("unit");
        acc = acc.add(&t);
        q *= 2;
    }
    acc.mul_sparse(&sparse(&[(0, 1), (1, -1)])).div_sparse(&sparse(&[(0, 1), (1, 1)])).expect("unit")
}

/// E P_n for n = 2..=max_n.
pub fn total_paths_expectation_table(max_n: usize) -> Vec<BigRational> {
    normalized_extractions(&total_paths_series(max_n), max_n)
}

/// Series for the expected number of old-path segments, times C_{n-1}:
/// (1-u)/(1+u) Σ_{r≥0} u^{r+2}/(1-u^{r+2})^2.
pub fn old_path_segments_series(order: usize) -> IntSeries {
    let mut acc = IntSeries::zero(order);
    for q in 2..=order {
        let den = sparse(&[(0, 1), (q, -1)]);
        let t = IntSeries::monomial(order, BigInt::one(), q)
            .div_sparse(&den)
            .and_then(|s| s.div_sparse(&den))
            .expect("unit");
        acc = acc.add(&t);
    }
    acc.mul_sparse(&sparse(&[(0, 1), (1, -1)])).div_sparse(&sparse(&[(0, 1), (1, 1)])).expect("unit")
}

/// E S_n for n = 2..=max_n.
pub fn old_path_segments_expectation_table(max_n: usize) -> Vec<BigRational> {
    normalized_extractions(&old_path_segments_series(max_n), max_n)
}

/// Single entries without building the whole table.
pub fn total_paths_expectation(n: usize) -> BigRational {
    BigRational::new(extract_with(&total_paths_series(n), &extraction_weights(n)), catalan(n - 1))
}

pub fn old_path_segments_expectation(n: usize) -> BigRational {
    BigRational::new(extract_with(&old_path_segments_series(n), &extraction_weights(n)), catalan(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment_value(ReductionMode::Leaves, Variant::Size, 1, 1, 3).unwrap(), q(3, 2));
        assert_eq!(moment_value(ReductionMode::OldPaths, Variant::Size, 1, 1, 4).unwrap(), q(11, 5));
        assert_eq!(moment_value(ReductionMode::OldPaths, Variant::OldLeafCount, 1, 0, 3).unwrap(), q(1, 1));
        assert_eq!(moment_value(ReductionMode::OldLeaves, Variant::Size, 1, 1, 3).unwrap(), q(2, 1));
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(explicit_expectation(ReductionMode::Leaves, 3, 1).unwrap(), q(3, 2));
        assert_eq!(explicit_expectation(ReductionMode::OldPaths, 3, 1).unwrap(), q(3, 2));
        assert_eq!(explicit_expectation(ReductionMode::Leaves, 2, 0).unwrap(), q(2, 1));
        assert!(explicit_expectation(ReductionMode::Paths, 3, 1).is_err());
    }

    #[test]
    fn totals_examples() {
        let p = total_paths_expectation_table(4);
        assert_eq!(p, vec![q(1, 1), q(2, 1), q(14, 5)]);
        let s = old_path_segments_expectation_table(3);
        assert_eq!(s, vec![q(1, 1), q(3, 2)]);
    }

    #[test]
    fn second_moment_forms_agree() {
        for r in 0..4 {
            assert_eq!(old_paths_size_series(2, r, 30), old_paths_size_second(r, 30), "r = {r}");
        }
    }
}
