use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ring::Ring;
use crate::combinatorics::IntPoly;
use crate::error::{Error, Result};

/// Power series truncated after the term of degree `order`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Series in u with exact rational coefficients.
pub type USeries = Series<BigRational>;
/// Series with integer coefficients (z-series and integral u-series).
pub type IntSeries = Series<BigInt>;

/// Sparse polynomial given by (exponent, coefficient) pairs.
pub type Sparse<C> = Vec<(usize, C)>;

/// Builds a sparse polynomial from small integer terms.
pub fn sparse<C: Ring>(terms: &[(usize, i64)]) -> Sparse<C> {
    terms.iter().filter(|t| t.1 != 0).map(|&(k, c)| (k, C::from_i64(c))).collect()
}

impl<C: Ring> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::nil(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, C::unit(), 0)
    }

    /// c u^k (zero if k exceeds the order).
    pub fn monomial(order: usize, c: C, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::nil());
        Series { coeffs }
    }

    pub fn from_sparse(order: usize, terms: &[(usize, C)]) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            if *k <= order {
                s.coeffs[*k] = s.coeffs[*k].add_ref(c);
            }
        }
        s
    }

    pub fn from_poly(order: usize, p: &IntPoly) -> Self {
        Self::from_coeffs(order, p.coeffs().iter().take(order + 1).map(|c| C::from_bigint(c.clone())).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.neg_ref()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order(), o.order(), "truncation orders differ");
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.order();
        let mut out = vec![C::nil(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if !b.is_nil() {
                    out[i + j].add_product(a, b);
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiply by a sparse polynomial.
    pub fn mul_sparse(&self, p: &[(usize, C)]) -> Self {
        let n = self.order();
        let mut out = vec![C::nil(); n + 1];
        for (k, c) in p {
            if *k > n {
                continue;
            }
            for i in 0..=n - k {
                if !self.coeffs[i].is_nil() {
                    out[i + k].add_product(&self.coeffs[i], c);
                }
            }
        }
        Series { coeffs: out }
    }

    /// Divide by a sparse polynomial whose constant term is a unit.
    pub fn div_sparse(&self, p: &[(usize, C)]) -> Result<Self> {
        let c0 = p.iter().filter(|t| t.0 == 0).fold(C::nil(), |a, t| a.add_ref(&t.1));
        let inv = c0.unit_inverse().ok_or(Error::NonUnitConstant)?;
        let rest: Vec<&(usize, C)> = p.iter().filter(|t| t.0 > 0 && !t.1.is_nil()).collect();
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for (k, c) in &rest {
                if *k <= i {
                    acc.sub_product(c, &out[i - k]);
                }
            }
            out.push(acc.mul_ref(&inv));
        }
        Ok(Series { coeffs: out })
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o);
        let inv = o.coeffs[0].unit_inverse().ok_or(Error::NonUnitConstant)?;
        let n = self.order();
        let support: Vec<usize> = (1..=n).filter(|&k| !o.coeffs[k].is_nil()).collect();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for &k in &support {
                if k > i {
                    break;
                }
                acc.sub_product(&o.coeffs[k], &out[i - k]);
            }
            out.push(acc.mul_ref(&inv));
        }
        Ok(Series { coeffs: out })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Successive powers s^0, s^1, ..., s^max.
    pub fn powers(&self, max: usize) -> Vec<Self> {
        let mut out = vec![Self::one(self.order())];
        for k in 1..=max {
            let next = out[k - 1].mul(self);
            out.push(next);
        }
        out
    }

    /// Multiply by u^k.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![C::nil(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        Series { coeffs: out }
    }

    /// Exact quotient by u^k; the result is known only to order - k.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InsufficientOrder { have: self.order(), need: k });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_nil()) {
            return Err(Error::InexactQuotient);
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    /// p(s) for an integer polynomial p.
    pub fn eval_poly(p: &IntPoly, s: &Self) -> Self {
        let n = s.order();
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(n), |acc, c| acc.mul(s).add(&Self::monomial(n, C::from_bigint(c.clone()), 0)))
    }

    /// p(c u^k) for an integer polynomial p, as a series.
    pub fn poly_at_monomial(order: usize, p: &IntPoly, k: usize) -> Self {
        let mut s = Self::zero(order);
        for (j, c) in p.coeffs().iter().enumerate() {
            let e = j * k;
            if e <= order {
                s.coeffs[e] = s.coeffs[e].add_ref(&C::from_bigint(c.clone()));
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_nil())
    }
}

impl Series<BigRational> {
    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstant);
        }
        let n = self.order();
        let half = BigRational::new(1.into(), 2.into());
        let mut out: Vec<BigRational> = vec![BigRational::one()];
        for i in 1..=n {
            let mut acc = self.coeffs[i].clone();
            for k in 1..i {
                acc.sub_product(&out[k], &out[i - k]);
            }
            out.push(acc * &half);
        }
        Ok(Series { coeffs: out })
    }
}

impl Series<BigInt> {
    pub fn to_rational(&self) -> USeries {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(order: usize, c: &[i64]) -> IntSeries {
        IntSeries::from_coeffs(order, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn geometric() {
        let g = IntSeries::one(6).div_sparse(&sparse(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(g, int(6, &[1, 1, 1, 1, 1, 1, 1]));
        let back = g.mul_sparse(&sparse(&[(0, 1), (1, -1)]));
        assert_eq!(back, IntSeries::one(6));
    }

    #[test]
    fn inverse_and_division() {
        let s = int(8, &[1, 2, 3]);
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), IntSeries::one(8));
        assert!(int(4, &[2, 1]).inverse().is_err());
        let r = int(4, &[2, 1]).to_rational();
        assert_eq!(r.mul(&r.inverse().unwrap()), USeries::one(4));
    }

    #[test]
    fn square_root() {
        // sqrt(1 - 4u) has coefficients -2 C_{k-1}
        let s = int(10, &[1, -4]).to_rational().sqrt().unwrap();
        let expect: Vec<i64> = vec![1, -2, -2, -4, -10, -28, -84, -264, -858, -2860, -9724];
        assert_eq!(s, int(10, &expect).to_rational());
        assert!(int(3, &[4, 1]).to_rational().sqrt().is_err());
    }

    #[test]
    fn shifts_and_powers() {
        let s = int(5, &[0, 0, 1, 1]);
        assert_eq!(s.shift_down(2).unwrap(), int(3, &[1, 1]));
        assert_eq!(s.shift_down(3), Err(Error::InexactQuotient));
        assert_eq!(int(5, &[1, 1]).pow(3), int(5, &[1, 3, 3, 1]));
        assert_eq!(int(5, &[1, 1]).shift_up(2), int(5, &[0, 0, 1, 1]));
    }
}
