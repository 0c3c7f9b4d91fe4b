use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::Ring;
use crate::error::{Error, Result};

/// Bivariate series in (x, y) truncated at total degree `order`.
#[derive(Clone, PartialEq, Debug)]
pub struct TSeries2 {
    order: usize,
    // c[i][j] is the coefficient of x^i y^j, i + j <= order
    c: Vec<Vec<BigRational>>,
}

impl TSeries2 {
    pub fn zero(order: usize) -> Self {
        TSeries2 { order, c: (0..=order).map(|i| vec![BigRational::zero(); order - i + 1]).collect() }
    }

    pub fn monomial(order: usize, coeff: BigRational, i: usize, j: usize) -> Self {
        let mut s = Self::zero(order);
        if i + j <= order {
            s.c[i][j] = coeff;
        }
        s
    }

    pub fn constant(order: usize, coeff: BigRational) -> Self {
        Self::monomial(order, coeff, 0, 0)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(order, BigRational::one(), 1, 0)
    }

    pub fn y(order: usize) -> Self {
        Self::monomial(order, BigRational::one(), 0, 1)
    }

    pub fn from_terms(order: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut s = Self::zero(order);
        for &(i, j, c) in terms {
            if i + j <= order {
                s.c[i][j] += BigRational::from_integer(c.into());
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.c[i][j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: BigRational) {
        self.c[i][j] = v;
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        assert_eq!(self.order, o.order);
        TSeries2 {
            order: self.order,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.iter().zip(b).map(|(p, q)| f(p, q)).collect()).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TSeries2 { order: self.order, c: self.c.iter().map(|r| r.iter().map(|a| a * k).collect()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        let n = self.order;
        let mut out = Self::zero(n);
        for i1 in 0..=n {
            for j1 in 0..=n - i1 {
                let a = &self.c[i1][j1];
                if a.is_nil() {
                    continue;
                }
                for i2 in 0..=n - i1 - j1 {
                    for j2 in 0..=n - i1 - j1 - i2 {
                        let b = &o.c[i2][j2];
                        if !b.is_nil() {
                            out.c[i1 + i2][j1 + j2].add_product(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    fn degree_parts(&self) -> Vec<Self> {
        (0..=self.order)
            .map(|d| {
                let mut s = Self::zero(self.order);
                for i in 0..=d {
                    s.c[i][d - i] = self.c[i][d - i].clone();
                }
                s
            })
            .collect()
    }

    /// 1 / self, constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.c[0][0].clone();
        if c0.is_nil() {
            return Err(Error::NonUnitConstant);
        }
        // 1/(c0 (1 + h)) = (1/c0) Σ (-h)^k, h without constant term
        let mut h = self.scale(&c0.recip());
        h.c[0][0] = BigRational::zero();
        let neg_h = h.scale(&-BigRational::one());
        let mut acc = Self::one(self.order);
        let mut term = Self::one(self.order);
        for _ in 0..self.order {
            term = term.mul(&neg_h);
            acc = acc.add(&term);
        }
        Ok(acc.scale(&c0.recip()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.c[0][0].is_one() {
            return Err(Error::SqrtConstant);
        }
        // s = 1 + s_1 + s_2 + ... by homogeneous degree: 2 s_d = g_d - Σ_{0<k<d} s_k s_{d-k}
        let g = self.degree_parts();
        let mut parts = vec![Self::one(self.order)];
        let half = BigRational::new(1.into(), 2.into());
        for d in 1..=self.order {
            let mut acc = g[d].clone();
            for k in 1..d {
                acc = acc.sub(&parts[k].mul(&parts[d - k]));
            }
            parts.push(acc.scale(&half));
        }
        Ok(parts.iter().skip(1).fold(parts[0].clone(), |a, p| a.add(p)))
    }

    /// self(X, Y) for series X, Y without constant term.
    pub fn compose(&self, x: &Self, y: &Self) -> Result<Self> {
        if !x.c[0][0].is_nil() || !y.c[0][0].is_nil() {
            return Err(Error::InvalidArgument("substituted series must vanish at the origin".into()));
        }
        let n = self.order;
        let xp = powers(x, n);
        let yp = powers(y, n);
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let c = &self.c[i][j];
                if !c.is_nil() {
                    out = out.add(&xp[i].mul(&yp[j]).scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Set y = x and collect by total degree: coefficients of x^0..x^order.
    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..=self.order).map(|d| (0..=d).map(|i| self.c[i][d - i].clone()).sum()).collect()
    }
}

fn powers(s: &TSeries2, max: usize) -> Vec<TSeries2> {
    let mut out = vec![TSeries2::one(s.order)];
    for k in 1..=max {
        out.push(out[k - 1].mul(s));
    }
    out
}
