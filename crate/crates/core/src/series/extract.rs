use num_bigint::BigInt;

use super::ring::Ring;
use super::univariate::Series;
use crate::combinatorics::binomial_row;
use crate::error::{Error, Result};

/// Coefficients of u^0..u^n in (1-u)(1+u)^(2n-1).
pub fn extraction_weights(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    let row = binomial_row(2 * n - 1);
    (0..=n).map(|j| if j == 0 { row[0].clone() } else { &row[j] - &row[j - 1] }).collect()
}

/// [z^n] g(u(z)) where z = u/(1+u)^2, computed as [u^n] g(u)(1-u)(1+u)^(2n-1).
pub fn u_extract<C: Ring>(g: &Series<C>, n: usize) -> Result<C> {
    if g.order() < n {
        return Err(Error::InsufficientOrder { have: g.order(), need: n });
    }
    let w = extraction_weights(n);
    Ok(extract_with(g, &w))
}

/// Same as `u_extract` with precomputed weights for index `w.len() - 1`.
pub fn extract_with<C: Ring>(g: &Series<C>, w: &[BigInt]) -> C {
    let n = w.len() - 1;
    let mut acc = C::nil();
    for k in 0..=n {
        let c = g.coeff(k);
        if !c.is_nil() {
            acc.add_product(c, &C::from_bigint(w[n - k].clone()));
        }
    }
    acc
}

/// [z^n] for every n in 0..=g.order().
pub fn u_extract_all<C: Ring>(g: &Series<C>) -> Vec<C> {
    (0..=g.order()).map(|n| extract_with(g, &extraction_weights(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::univariate::{sparse, IntSeries};

    #[test]
    fn extraction_examples() {
        // z = u/(1+u)^2
        let z = IntSeries::monomial(6, 1.into(), 1).div_sparse(&sparse(&[(0, 1), (1, 2), (2, 1)])).unwrap();
        assert_eq!(u_extract(&z, 1).unwrap(), 1.into());
        assert_eq!(u_extract(&z, 2).unwrap(), 0.into());
        assert_eq!(u_extract(&z, 3).unwrap(), 0.into());
        let cat = IntSeries::monomial(6, 1.into(), 1).div_sparse(&sparse(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(u_extract(&cat, 3).unwrap(), 2.into());
        let g = IntSeries::monomial(6, 1.into(), 2)
            .div_sparse(&sparse(&[(0, 1), (1, 1)]))
            .unwrap()
            .div_sparse(&sparse(&[(0, 1), (2, -1)]))
            .unwrap();
        assert_eq!(u_extract(&g, 3).unwrap(), 3.into());
        assert!(u_extract(&g, 7).is_err());
    }
}
