//! Coefficient tables [z^n] G_r(z, v): reduced-tree statistics of all
//! size-n trees surviving r rounds, as polynomials in v.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::extract::extraction_weights;
use super::univariate::{sparse, IntSeries};
use crate::combinatorics::{binary_height_poly, binomial, binomial_row, catalan, fibonacci_poly, narayana_number, IntPoly};
use crate::error::{Error, Result};
use crate::reduction::ReductionMode;
use crate::tree::Variant;

/// Polynomial in v with nonnegative integer coefficients.
pub type SizePolynomial = IntPoly;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GfTable {
    pub mode: ReductionMode,
    pub variant: Variant,
    pub rounds: usize,
    /// rows[n - 1] is the coefficient of z^n.
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<SizePolynomial>,
}

fn ser_rows<S: serde::Serializer>(rows: &[SizePolynomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let v: Vec<String> = r.coeffs().iter().map(|c| c.to_string()).collect();
        seq.serialize_element(&v)?;
    }
    seq.end()
}

impl GfTable {
    pub fn row(&self, n: usize) -> &SizePolynomial {
        &self.rows[n - 1]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }
}

/// Variants with a generating function for the mode.
pub fn variant_supported(mode: ReductionMode, variant: Variant) -> bool {
    match mode {
        ReductionMode::Leaves | ReductionMode::Paths => {
            matches!(variant, Variant::Size | Variant::InnerI | Variant::LeavesL)
        }
        ReductionMode::OldLeaves | ReductionMode::OldPaths => {
            matches!(variant, Variant::Size | Variant::OldLeafCount | Variant::NeitherCount)
        }
    }
}

/// Which construction to use. `Alternate` is an independent route used for
/// cross-checks: Paths through the Leaves kernel at 2^(r+1) - 2 rounds, and
/// OldLeaves Size through the old-leaf composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Default,
    Alternate,
}

pub fn paths_equivalent_rounds(r: usize) -> usize {
    (1usize << (r + 1)) - 2
}

pub fn gf_table(mode: ReductionMode, variant: Variant, rounds: usize, max_n: usize) -> Result<GfTable> {
    gf_table_with(mode, variant, rounds, max_n, Route::Default)
}

pub fn gf_table_with(mode: ReductionMode, variant: Variant, rounds: usize, max_n: usize, route: Route) -> Result<GfTable> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("table order must be at least 1".into()));
    }
    let b = Builder::new(mode, variant, rounds, max_n, route)?;
    let rows = (1..=max_n).map(|n| b.row(n)).collect();
    Ok(GfTable { mode, variant, rounds, rows })
}

/// Row n alone; cheaper than the full table for large n.
pub fn gf_row(mode: ReductionMode, variant: Variant, rounds: usize, n: usize) -> Result<SizePolynomial> {
    gf_row_with(mode, variant, rounds, n, Route::Default)
}

pub fn gf_row_with(mode: ReductionMode, variant: Variant, rounds: usize, n: usize, route: Route) -> Result<SizePolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    Ok(Builder::new(mode, variant, rounds, n, route)?.row(n))
}

enum Builder {
    Kernel(KernelRows),
    UForm(UFormRows),
    Composed(ComposedRows),
    OldLeavesClosed(OldLeavesRows),
}

impl Builder {
    fn new(mode: ReductionMode, variant: Variant, r: usize, max_n: usize, route: Route) -> Result<Self> {
        if !variant_supported(mode, variant) {
            return Err(Error::Unsupported(format!("no generating function for {variant} under {mode}")));
        }
        Ok(match (mode, route) {
            (ReductionMode::Leaves, _) => Builder::Kernel(KernelRows::new(r, variant, max_n)),
            (ReductionMode::Paths, Route::Default) => Builder::UForm(UFormRows::new(paths_equivalent_rounds(r), variant, max_n)),
            (ReductionMode::Paths, Route::Alternate) => {
                Builder::Kernel(KernelRows::new(paths_equivalent_rounds(r), variant, max_n))
            }
            (ReductionMode::OldPaths, _) => Builder::Composed(ComposedRows::old_paths(r, variant, max_n)),
            (ReductionMode::OldLeaves, route) => {
                if variant == Variant::Size && route == Route::Default {
                    Builder::OldLeavesClosed(OldLeavesRows::new(r, max_n))
                } else {
                    Builder::Composed(ComposedRows::old_leaves(r, variant, max_n))
                }
            }
        })
    }

    fn row(&self, n: usize) -> SizePolynomial {
        match self {
            Builder::Kernel(b) => b.row(n),
            Builder::UForm(b) => b.row(n),
            Builder::Composed(b) => b.row(n),
            Builder::OldLeavesClosed(b) => b.row(n),
        }
    }
}

/// Trees with `inner` inner nodes and `leaves` leaves.
fn profile_count(inner: usize, leaves: usize) -> BigInt {
    if inner == 0 {
        return if leaves == 1 { BigInt::one() } else { BigInt::zero() };
    }
    narayana_number(inner + leaves - 1, leaves)
}

fn exponent(variant: Variant, inner: usize, leaves: usize) -> usize {
    match variant {
        Variant::InnerI => inner,
        Variant::LeavesL => leaves,
        _ => inner + leaves,
    }
}

fn dot(a: &IntSeries, b: &IntSeries, m: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=m {
        let x = a.coeff(i);
        if !x.is_zero() {
            let y = b.coeff(m - i);
            if !y.is_zero() {
                acc += x * y;
            }
        }
    }
    acc
}

fn add_to(acc: &mut Vec<BigInt>, e: usize, c: BigInt) {
    if acc.len() <= e {
        acc.resize(e + 1, BigInt::zero());
    }
    acc[e] += c;
}

/// Leaves: Φ^r(z^a t^k)|_{t=z} = z^{a+k(r+1)} P^a Q^k F_{r+2}/F_{r+1},
/// P = F_{r+1}^2/F_{r+2}^2, Q = 1/F_{r+2}^2, all at -z.
struct KernelRows {
    r: usize,
    variant: Variant,
    p_pow: Vec<IntSeries>,
    qb: Vec<IntSeries>,
}

impl KernelRows {
    fn new(r: usize, variant: Variant, max_n: usize) -> Self {
        let n = max_n;
        let f1 = IntSeries::from_poly(n, &fibonacci_poly(r + 1).negate_arg());
        let f2 = IntSeries::from_poly(n, &fibonacci_poly(r + 2).negate_arg());
        let f2sq = f2.mul(&f2);
        let p = f1.mul(&f1).div(&f2sq).expect("F(-z) has constant term 1");
        let q = f2sq.inverse().expect("F(-z) has constant term 1");
        let base = f2.div(&f1).expect("F(-z) has constant term 1");
        let max_a = n;
        let max_k = n / (r + 1);
        let p_pow = p.powers(max_a);
        let mut qb = vec![base];
        for k in 1..=max_k {
            let next = qb[k - 1].mul(&q);
            qb.push(next);
        }
        KernelRows { r, variant, p_pow, qb }
    }

    fn row(&self, n: usize) -> SizePolynomial {
        let mut acc = Vec::new();
        for k in 1..self.qb.len() {
            let lead = k * (self.r + 1);
            if lead > n {
                break;
            }
            for a in 0..=(n - lead) {
                let w = profile_count(a, k);
                if w.is_zero() {
                    continue;
                }
                let c = dot(&self.p_pow[a], &self.qb[k], n - lead - a);
                if !c.is_zero() {
                    add_to(&mut acc, exponent(self.variant, a, k), w * c);
                }
            }
        }
        IntPoly::new(acc)
    }
}

/// Paths: G = c T(a v_I, b v_L) in u, with s = 2^(r+1) - 2,
/// a = u(1-u^{s+1})^2/(1-u^{s+2})^2, b = u^{s+1}(1-u)^2/(1-u^{s+2})^2,
/// c = (1-u^{s+2})/((1-u^{s+1})(1+u)).
struct UFormRows {
    s: usize,
    variant: Variant,
    a_pow: Vec<IntSeries>,
    cb: Vec<IntSeries>,
}

impl UFormRows {
    fn new(s: usize, variant: Variant, max_n: usize) -> Self {
        let n = max_n;
        let den: Vec<(usize, BigInt)> = sparse(&[(0, 1), (s + 2, -1)]);
        let a = IntSeries::monomial(n, BigInt::one(), 1)
            .mul_sparse(&sparse(&[(0, 1), (s + 1, -1)]))
            .mul_sparse(&sparse(&[(0, 1), (s + 1, -1)]))
            .div_sparse(&den)
            .and_then(|x| x.div_sparse(&den))
            .expect("unit denominators");
        let b = IntSeries::monomial(n, BigInt::one(), s + 1)
            .mul_sparse(&sparse(&[(0, 1), (1, -2), (2, 1)]))
            .div_sparse(&den)
            .and_then(|x| x.div_sparse(&den))
            .expect("unit denominators");
        let c = IntSeries::one(n)
            .mul_sparse(&den)
            .div_sparse(&sparse(&[(0, 1), (s + 1, -1)]))
            .and_then(|x| x.div_sparse(&sparse(&[(0, 1), (1, 1)])))
            .expect("unit denominators");
        let a_pow = a.powers(n);
        let mut cb = vec![c];
        for k in 1..=n / (s + 1) {
            let next = cb[k - 1].mul(&b);
            cb.push(next);
        }
        UFormRows { s, variant, a_pow, cb }
    }

    fn row(&self, n: usize) -> SizePolynomial {
        let w = extraction_weights(n);
        let mut acc = Vec::new();
        for k in 1..self.cb.len() {
            let lead = k * (self.s + 1);
            if lead > n {
                break;
            }
            // omega[i] = Σ_l cb_k[l] w[n - i - l]
            let omega: Vec<BigInt> = (0..=n - lead)
                .map(|i| (lead..=n - i).map(|l| self.cb[k].coeff(l) * &w[n - i - l]).sum())
                .collect();
            for p in 0..=(n - lead) {
                let cnt = profile_count(p, k);
                if cnt.is_zero() {
                    continue;
                }
                let c: BigInt = (p..=n - lead).map(|i| self.a_pow[p].coeff(i) * &omega[i]).sum();
                if !c.is_zero() {
                    add_to(&mut acc, exponent(self.variant, p, k), cnt * c);
                }
            }
        }
        IntPoly::new(acc)
    }
}

/// G = L(f v_o, g v_s) with the explicit old-leaf expansion
/// L(x, y) = x + Σ_{k≥1, m≥0} C_{k-1} binom(m+2k-2, m) 2^m y^k x^m.
struct ComposedRows {
    variant: Variant,
    f_pow: Vec<IntSeries>,
    g_pow: Vec<IntSeries>,
    g_val: usize,
}

impl ComposedRows {
    fn old_paths(r: usize, variant: Variant, max_n: usize) -> Self {
        let n = max_n;
        let f1 = IntSeries::from_poly(n, &fibonacci_poly(r + 1).negate_arg());
        let f2 = IntSeries::from_poly(n, &fibonacci_poly(r + 2).negate_arg());
        let f = f1.shift_up(1).div(&f2).expect("unit");
        let g = IntSeries::monomial(n, BigInt::one(), r + 2).div(&f2.mul(&f2)).expect("unit");
        Self::build(variant, f, g, r + 2, n)
    }

    fn old_leaves(r: usize, variant: Variant, max_n: usize) -> Self {
        let n = max_n;
        let b0 = binary_height_poly(r);
        let b1 = binary_height_poly(r + 1);
        let f = IntSeries::from_poly(n, &b0.shift(1));
        let g = IntSeries::from_poly(n, &(&b1 - &b0).shift(1));
        Self::build(variant, f, g, 2, n)
    }

    fn build(variant: Variant, f: IntSeries, g: IntSeries, g_val: usize, n: usize) -> Self {
        ComposedRows { variant, f_pow: f.powers(n), g_pow: g.powers(n / g_val), g_val }
    }

    fn row(&self, n: usize) -> SizePolynomial {
        let mut acc = Vec::new();
        let e = |m: usize, k: usize| match self.variant {
            Variant::OldLeafCount => k,
            Variant::NeitherCount => m,
            _ => m + 2 * k,
        };
        add_to(&mut acc, e(1, 0), self.f_pow[1].coeff(n).clone());
        for k in 1..self.g_pow.len() {
            let lead = k * self.g_val;
            if lead > n {
                break;
            }
            let ck = catalan(k - 1);
            for m in 0..=(n - lead) {
                let c = dot(&self.f_pow[m], &self.g_pow[k], n);
                if c.is_zero() {
                    continue;
                }
                let w = &ck * binomial((m + 2 * k - 2) as i64, m as i64) * (BigInt::one() << m);
                add_to(&mut acc, e(m, k), w * c);
            }
        }
        IntPoly::new(acc)
    }
}

/// OldLeaves sizes: G_r = Σ_{k≥1} C_{k-1} (z v)^k (B_r (1 - v) + v)^k.
struct OldLeavesRows {
    b_pow: Vec<IntSeries>,
}

impl OldLeavesRows {
    fn new(r: usize, max_n: usize) -> Self {
        let b = binary_height_poly(r);
        let sp: Vec<(usize, BigInt)> = b.coeffs().iter().cloned().enumerate().collect();
        let mut b_pow = vec![IntSeries::one(max_n)];
        for j in 1..=max_n {
            let next = b_pow[j - 1].mul_sparse(&sp);
            b_pow.push(next);
        }
        OldLeavesRows { b_pow }
    }

    fn row(&self, n: usize) -> SizePolynomial {
        let mut acc = vec![BigInt::zero(); 2 * n + 1];
        for k in 1..=n {
            let m = n - k;
            let ck = catalan(k - 1);
            let bk = binomial_row(k);
            for j in 0..=k {
                let beta = self.b_pow[j].coeff(m);
                if beta.is_zero() {
                    continue;
                }
                let base = &ck * &bk[j] * beta;
                // (1 - v)^j v^(2k - j)
                let bj = binomial_row(j);
                for (i, c) in bj.iter().enumerate() {
                    let t = &base * c;
                    if i % 2 == 0 {
                        acc[2 * k - j + i] += t;
                    } else {
                        acc[2 * k - j + i] -= t;
                    }
                }
            }
        }
        IntPoly::new(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn leaves_rows() {
        let t = gf_table(ReductionMode::Leaves, Variant::Size, 1, 4).unwrap();
        assert!(t.row(1).is_zero());
        assert_eq!(*t.row(2), p(&[0, 1]));
        assert_eq!(*t.row(3), p(&[0, 1, 1]));
        assert_eq!(*t.row(4), p(&[0, 1, 3, 1]));
        let t = gf_table(ReductionMode::Leaves, Variant::Size, 3, 7).unwrap();
        assert_eq!(*t.row(7), p(&[0, 57, 33, 9, 1]));
    }

    #[test]
    fn old_paths_row() {
        let t = gf_table(ReductionMode::OldPaths, Variant::Size, 1, 4).unwrap();
        assert_eq!(*t.row(4), p(&[0, 1, 2, 2]));
    }

    #[test]
    fn routes_agree() {
        for r in 0..3 {
            for v in [Variant::Size, Variant::InnerI, Variant::LeavesL] {
                let a = gf_table_with(ReductionMode::Paths, v, r, 14, Route::Default).unwrap();
                let b = gf_table_with(ReductionMode::Paths, v, r, 14, Route::Alternate).unwrap();
                assert_eq!(a, b, "paths r={r} {v}");
            }
            let a = gf_table_with(ReductionMode::OldLeaves, Variant::Size, r, 14, Route::Default).unwrap();
            let b = gf_table_with(ReductionMode::OldLeaves, Variant::Size, r, 14, Route::Alternate).unwrap();
            assert_eq!(a, b, "old leaves r={r}");
        }
    }

    #[test]
    fn unsupported_variant() {
        assert!(gf_table(ReductionMode::Leaves, Variant::OldLeafCount, 1, 4).is_err());
    }
}
