//! Power-series identities in u with polynomial coefficients in a formal x.
//! Each function returns (left side, right side) truncated at `order`.

use num_bigint::BigInt;
use num_traits::One;

use super::ring::Ring;
use super::univariate::Series;
use crate::combinatorics::{binomial, catalan, factorial, falling, narayana_assoc_poly, IntPoly};
use crate::error::Result;

/// Series in u whose coefficients are integer polynomials in x.
pub type PolySeries = Series<IntPoly>;

fn c(n: i64) -> IntPoly {
    IntPoly::constant(BigInt::from(n))
}

fn xpow(k: usize) -> IntPoly {
    IntPoly::monomial(BigInt::one(), k)
}

/// 1 + a u^k as a sparse polynomial in u.
fn binomial_factor(a: IntPoly, k: usize) -> Vec<(usize, IntPoly)> {
    vec![(0, IntPoly::unit()), (k, a)]
}

struct Factors {
    one_minus_u: Vec<PolySeries>,
    one_minus_ux: Vec<PolySeries>,
}

impl Factors {
    fn new(order: usize, max: usize) -> Self {
        let a = PolySeries::from_sparse(order, &binomial_factor(c(-1), 1));
        let b = PolySeries::from_sparse(order, &binomial_factor(-&IntPoly::x(), 1));
        Factors { one_minus_u: a.powers(max), one_minus_ux: b.powers(max) }
    }
}

/// Σ_k p_k x^k (1-u)^{2k} (1-ux)^{e-2k}, i.e. p(x(1-u)²/(1-ux)²)·(1-ux)^e.
fn substituted(p: &IntPoly, e: usize, f: &Factors, order: usize) -> PolySeries {
    let mut acc = PolySeries::zero(order);
    for (k, pk) in p.coeffs().iter().enumerate() {
        if pk.is_nil() {
            continue;
        }
        assert!(2 * k <= e, "substitution exponent too small");
        let t = f.one_minus_u[2 * k].mul(&f.one_minus_ux[e - 2 * k]).scale(&xpow(k).scale(pk));
        acc = acc.add(&t);
    }
    acc
}

fn inverse_powers(order: usize, max: usize) -> Result<Vec<PolySeries>> {
    let inv = PolySeries::one(order).div_sparse(&binomial_factor(-&IntPoly::x(), 2))?;
    Ok(inv.powers(max))
}

/// Leaf-cutting identity for the d-th factorial moment:
/// Σ_n binom(n, d) u^{n-d} (1-ux)^{2n+d-1} (1-u)^{d-1} / (1-u²x)^{2n-1} Ñ_{n-1}(y) = Ñ_{d-1}(x),
/// y = x(1-u)²/(1-ux)².
pub fn leaves_moment_identity(d: usize, order: usize) -> Result<(PolySeries, PolySeries)> {
    assert!(d >= 1);
    let top = d + order;
    let f = Factors::new(order, 3 * top + d);
    let inv = inverse_powers(order, 2 * top)?;
    let mut lhs = PolySeries::zero(order);
    for n in d..=top {
        let s = substituted(&narayana_assoc_poly(n - 1), 2 * n + d - 1, &f, order)
            .mul(&f.one_minus_u[d - 1])
            .mul(&inv[2 * n - 1])
            .scale(&IntPoly::constant(binomial(n as i64, d as i64)))
            .shift_up(n - d);
        lhs = lhs.add(&s);
    }
    let rhs = PolySeries::monomial(order, narayana_assoc_poly(d - 1), 0);
    Ok((lhs, rhs))
}

/// Derivative form, both sides multiplied by u^{2d}:
/// Σ_n u^n (1-ux)^{2n-d-1} (1-u)^{2d-1} / ((1-u²x)^{2n-d-1} d!) Ñ_{n-1}^{(d)}(y) = u^{2d} Ñ_{d-1}(1/u).
pub fn leaves_derivative_identity(d: usize, order: usize) -> Result<(PolySeries, PolySeries)> {
    assert!(d >= 1);
    let f = Factors::new(order, 3 * order + 2 * d);
    let inv = inverse_powers(order, 2 * order)?;
    let dfact = factorial(d);
    let mut lhs = PolySeries::zero(order);
    for n in 1..=order {
        let mut p = narayana_assoc_poly(n - 1);
        for _ in 0..d {
            p = p.derivative();
        }
        if p.is_zero() {
            continue;
        }
        let p = p.div_exact(&dfact).expect("derivative divisible by d!");
        let e = 2 * n - d - 1;
        let s = substituted(&p, e, &f, order).mul(&f.one_minus_u[2 * d - 1]).mul(&inv[e]).shift_up(n);
        lhs = lhs.add(&s);
    }
    let nd = narayana_assoc_poly(d - 1);
    let terms: Vec<(usize, IntPoly)> =
        nd.coeffs().iter().enumerate().map(|(k, ck)| (2 * d - k, IntPoly::constant(ck.clone()))).collect();
    Ok((lhs, PolySeries::from_sparse(order, &terms)))
}

/// Shared left side of the old-path identities with weight w(n, k).
fn old_paths_lhs(order: usize, weight: impl Fn(usize, usize) -> BigInt) -> Result<PolySeries> {
    let one_plus_u = binomial_factor(c(1), 1);
    let one_minus_ux = binomial_factor(-&IntPoly::x(), 1);
    let dd = PolySeries::one(order).div_sparse(&one_plus_u)?.div_sparse(&one_minus_ux)?;
    let dpow = dd.powers(3 * order);
    let one_minus_u = PolySeries::from_sparse(order, &binomial_factor(c(-1), 1)).powers(2 * order);
    let one_minus_x = IntPoly::from_i64s(&[1, -1]);
    let mut lhs = PolySeries::zero(order);
    for k in 1..=order {
        for n in 0..=order - k {
            let w = weight(n, k);
            if w == BigInt::from(0) {
                continue;
            }
            let coef = (&xpow(k) * &one_minus_x.pow(n as u32)).scale(&w);
            let s = one_minus_u[2 * k].mul(&dpow[n + 2 * k]).scale(&coef).shift_up(n + k);
            lhs = lhs.add(&s);
        }
    }
    Ok(lhs)
}

fn count_weight(n: usize, k: usize) -> BigInt {
    catalan(k - 1) * binomial((n + 2 * k - 2) as i64, n as i64) * (BigInt::one() << n)
}

/// Old-path identity weighted by the falling factorial of k.
pub fn old_paths_leaf_identity(d: usize, order: usize) -> Result<(PolySeries, PolySeries)> {
    assert!(d >= 1);
    let lhs = old_paths_lhs(order, |n, k| count_weight(n, k) * falling(k as i64, d))?;
    let lead = falling(2 * d as i64 - 2, d - 1);
    let rhs = PolySeries::monomial(order, xpow(d).scale(&lead), d)
        .mul_sparse(&binomial_factor(c(-1), 1))
        .div_sparse(&binomial_factor(c(1), 1))?;
    let mut rhs = rhs;
    for _ in 0..2 * d {
        rhs = rhs.div_sparse(&binomial_factor(-&IntPoly::x(), 1))?;
    }
    Ok((lhs, rhs))
}

/// Old-path identity weighted by the falling factorial of n.
pub fn old_paths_rest_identity(d: usize, order: usize) -> Result<(PolySeries, PolySeries)> {
    assert!(d >= 1);
    let lhs = old_paths_lhs(order, |n, k| count_weight(n, k) * falling(n as i64, d))?;
    let nd = narayana_assoc_poly(d - 1);
    // Ñ_{d-1}(ux)
    let terms: Vec<(usize, IntPoly)> =
        nd.coeffs().iter().enumerate().map(|(k, ck)| (k, xpow(k).scale(ck))).collect();
    let scale = IntPoly::from_i64s(&[1, -1]).pow(d as u32).scale(&((BigInt::one() << d) * factorial(d)));
    let mut rhs = PolySeries::from_sparse(order, &terms).scale(&scale).shift_up(d);
    rhs = rhs.div_sparse(&binomial_factor(c(1), 1))?;
    for _ in 0..d - 1 {
        rhs = rhs.div_sparse(&binomial_factor(c(-1), 1))?;
    }
    for _ in 0..2 * d {
        rhs = rhs.div_sparse(&binomial_factor(-&IntPoly::x(), 1))?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_low_order() {
        for d in 1..=2 {
            let (a, b) = leaves_moment_identity(d, 6).unwrap();
            assert_eq!(a, b, "leaves d = {d}");
            let (a, b) = leaves_derivative_identity(d, 6).unwrap();
            assert_eq!(a, b, "derivative d = {d}");
            let (a, b) = old_paths_leaf_identity(d, 6).unwrap();
            assert_eq!(a, b, "old paths leaves d = {d}");
            let (a, b) = old_paths_rest_identity(d, 6).unwrap();
            assert_eq!(a, b, "old paths rest d = {d}");
        }
    }
}
