//! Catalan and Narayana numbers, Fibonacci and binary-height polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::series::Ring;

/// Polynomial with arbitrary-precision integer coefficients, index = degree.
/// Trailing zeros are never stored; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    /// p(-x)
    pub fn negate_arg(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// x^deg * p(1/x); `deg` must be at least the degree.
    pub fn reversed(&self, deg: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[deg - k] = c.clone();
        }
        IntPoly::new(v)
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly { coeffs: out })
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// p(q) by Horner.
    pub fn compose(&self, q: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::default(), |acc, c| &(&acc * q) + &IntPoly::constant(c.clone()))
    }

    pub fn sum_coeffs(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl<'a> std::ops::Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> std::ops::Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> std::ops::Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::default();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Ring for IntPoly {
    fn nil() -> Self {
        IntPoly::default()
    }
    fn unit() -> Self {
        IntPoly::constant(BigInt::one())
    }
    fn is_nil(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_bigint(n: BigInt) -> Self {
        IntPoly::constant(n)
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()).then(|| self.clone())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// binom(n, k), zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row n of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// (n)_k = n (n-1) ... (n-k+1)
pub fn falling(n: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |a, i| a * BigInt::from(n - i))
}

/// N_{n,k}: plane trees with n edges and k leaves.
pub fn narayana_number(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if k == 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as i64, k as i64);
    binomial(n, k - 1) * binomial(n, k) / BigInt::from(n)
}

/// Ñ_0..=Ñ_max via the three-term recurrence.
pub fn narayana_assoc_table(max: usize) -> Vec<IntPoly> {
    let t = IntPoly::x();
    let mut out = vec![t.clone()];
    if max >= 1 {
        out.push(t.clone());
    }
    let t_plus = IntPoly::from_i64s(&[1, 1]);
    let t_minus_sq = IntPoly::from_i64s(&[1, -2, 1]);
    for m in 2..=max {
        let n = (m - 2) as i64;
        let a = (&t_plus * &out[m - 1]).scale(&BigInt::from(2 * n + 3));
        let b = (&t_minus_sq * &out[m - 2]).scale(&BigInt::from(n));
        let next = (&a - &b).div_exact(&BigInt::from(n + 3)).expect("Narayana recurrence must stay integral");
        out.push(next);
    }
    out
}

/// Ñ_n(t) = Σ_k N_{n,k} t^k, with Ñ_0 = t.
pub fn narayana_assoc_poly(n: usize) -> IntPoly {
    narayana_assoc_table(n).pop().unwrap()
}

/// Ñ_n from the defining binomial formula.
pub fn narayana_assoc_direct(n: usize) -> IntPoly {
    if n == 0 {
        return IntPoly::x();
    }
    IntPoly::new((0..=n).map(|k| narayana_number(n, k)).collect())
}

/// Ñ_n^{(d)}(1) = Σ_k N_{n,k} k (k-1) ... (k-d+1).
pub fn narayana_derivative_at_one(n: usize, d: usize) -> BigInt {
    (1..=n).map(|k| narayana_number(n, k) * falling(k as i64, d)).sum()
}

/// Plane trees of size n with k old leaves.
pub fn old_leaf_count_number(n: usize, k: usize) -> BigInt {
    if n == 1 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if k == 0 || 2 * k > n {
        return BigInt::zero();
    }
    catalan(k - 1) * binomial(n as i64 - 2, (n - 2 * k) as i64) * BigInt::from(2).pow((n - 2 * k) as u32)
}

pub fn fibonacci_poly(r: usize) -> IntPoly {
    fibonacci_table(r).pop().unwrap()
}

/// F_0..=F_max.
pub fn fibonacci_table(max: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::default(), IntPoly::from_i64s(&[1])];
    let z = IntPoly::x();
    for r in 2..=max.max(1) {
        let next = &out[r - 1] + &(&z * &out[r - 2]);
        out.push(next);
    }
    out.truncate(max + 1);
    out
}

pub fn binary_height_poly(r: usize) -> IntPoly {
    let z = IntPoly::x();
    let mut b = IntPoly::from_i64s(&[1]);
    for _ in 0..r {
        b = &IntPoly::from_i64s(&[1]) + &(&z * &(&b * &b));
    }
    b
}

/// A rational m / 2^e, used for B_r(1/4) whose denominators grow like 4^(2^r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub numer: BigInt,
    pub log2_denom: u64,
}

impl Dyadic {
    pub fn integer(n: i64) -> Self {
        Dyadic { numer: BigInt::from(n), log2_denom: 0 }
    }

    fn aligned(&self, o: &Dyadic) -> (BigInt, BigInt, u64) {
        let e = self.log2_denom.max(o.log2_denom);
        (&self.numer << (e - self.log2_denom), &o.numer << (e - o.log2_denom), e)
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(o);
        Dyadic { numer: a + b, log2_denom: e }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(o);
        Dyadic { numer: a - b, log2_denom: e }
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic { numer: &self.numer * &o.numer, log2_denom: self.log2_denom + o.log2_denom }
    }

    /// self / 2^k
    pub fn halve(&self, k: u64) -> Dyadic {
        Dyadic { numer: self.numer.clone(), log2_denom: self.log2_denom + k }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numer.clone(), BigInt::one() << self.log2_denom)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.numer.bits();
        let drop = bits.saturating_sub(62);
        let top = (&self.numer >> drop).to_f64().unwrap();
        let exp = drop as i64 - self.log2_denom as i64;
        top * 2f64.powi(exp.clamp(-2000, 2000) as i32)
    }

    pub fn cmp_value(&self, o: &Dyadic) -> std::cmp::Ordering {
        let (a, b, _) = self.aligned(o);
        a.cmp(&b)
    }
}

/// B_r(1/4) and B'_r(1/4), exactly.
pub fn binary_height_at_quarter(r: usize) -> (Dyadic, Dyadic) {
    let [b, db, _] = binary_height_derivs_at_quarter(r);
    (b, db)
}

/// B_r, B'_r, B''_r at 1/4.
pub fn binary_height_derivs_at_quarter(r: usize) -> [Dyadic; 3] {
    let mut b = Dyadic::integer(1);
    let mut db = Dyadic::integer(0);
    let mut d2b = Dyadic::integer(0);
    for _ in 0..r {
        // B = 1 + z P^2, B' = P^2 + 2z P P', B'' = 4 P P' + 2z (P'^2 + P P''), z = 1/4
        let pp = b.mul(&db);
        let nd2b = pp.halve(0).add(&pp).add(&pp).add(&pp).add(&db.mul(&db).add(&b.mul(&d2b)).halve(1));
        let ndb = b.mul(&b).add(&pp.halve(1));
        b = Dyadic::integer(1).add(&b.mul(&b).halve(2));
        db = ndb;
        d2b = nd2b;
    }
    [b, db, d2b]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigInt::from(1));
        assert_eq!(catalan(5), BigInt::from(42));
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana_number(0, 0), BigInt::from(1));
        assert_eq!(narayana_number(4, 2), BigInt::from(6));
        assert_eq!(narayana_number(3, 5), BigInt::from(0));
        assert_eq!(narayana_assoc_poly(0), IntPoly::x());
        assert_eq!(narayana_assoc_poly(3), IntPoly::from_i64s(&[0, 1, 3, 1]));
        assert_eq!(narayana_derivative_at_one(4, 1), BigInt::from(35));
        assert_eq!(narayana_derivative_at_one(4, 2), BigInt::from(60));
        assert_eq!(narayana_derivative_at_one(6, 0), catalan(6));
    }

    #[test]
    fn recurrence_matches_formula() {
        for (n, p) in narayana_assoc_table(30).iter().enumerate() {
            assert_eq!(*p, narayana_assoc_direct(n), "n = {n}");
        }
    }

    #[test]
    fn fibonacci_and_height() {
        assert_eq!(fibonacci_poly(1), IntPoly::from_i64s(&[1]));
        assert_eq!(fibonacci_poly(5), IntPoly::from_i64s(&[1, 3, 1]));
        assert!(fibonacci_poly(0).is_zero());
        assert_eq!(binary_height_poly(0), IntPoly::from_i64s(&[1]));
        assert_eq!(binary_height_poly(2), IntPoly::from_i64s(&[1, 1, 2, 1]));
        assert_eq!(binary_height_poly(3).eval_int(&BigInt::from(1)), BigInt::from(26));
    }

    #[test]
    fn quarter_values() {
        let (b, db) = binary_height_at_quarter(1);
        assert_eq!(b.to_rational(), BigRational::new(5.into(), 4.into()));
        assert_eq!(db.to_rational(), BigRational::from_integer(1.into()));
        for r in 0..6 {
            let p = binary_height_poly(r);
            let q = BigRational::new(1.into(), 4.into());
            let (b, db) = binary_height_at_quarter(r);
            assert_eq!(b.to_rational(), p.eval(&q));
            assert_eq!(db.to_rational(), p.derivative().eval(&q));
            let d2 = &binary_height_derivs_at_quarter(r)[2];
            assert_eq!(d2.to_rational(), p.derivative().derivative().eval(&q));
        }
    }
}
