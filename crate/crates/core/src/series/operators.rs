//! Expansion operators: the inverse images of one reduction round, acting on
//! bivariate generating functions.

use num_rational::BigRational;
use num_traits::One;

use super::bivariate::TSeries2;
use crate::error::Result;
use crate::reduction::ReductionMode;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Φ(f) for the given mode. Leaves/Paths act on f(z, t) (inner nodes, leaves);
/// the old-leaf modes act on f(z, w) as in the old-leaf decomposition.
pub fn expansion_operator(mode: ReductionMode, f: &TSeries2) -> Result<TSeries2> {
    let n = f.order();
    let one = TSeries2::one(n);
    let z = TSeries2::x(n);
    let t = TSeries2::y(n);
    match mode {
        ReductionMode::Leaves => {
            let q = one.sub(&t);
            let q2 = q.mul(&q);
            let x = z.div(&q2)?;
            let y = z.mul(&t).div(&q2)?;
            Ok(q.mul(&f.compose(&x, &y)?))
        }
        ReductionMode::Paths => {
            let p = t.div(&one.sub(&z))?;
            let q = one.sub(&p);
            let q2 = q.mul(&q);
            let x = z.div(&q2)?;
            let y = z.mul(&p).mul(&p).div(&q2)?;
            Ok(q.mul(&f.compose(&x, &y)?))
        }
        ReductionMode::OldLeaves => {
            let x = z.add(&t);
            let y = z.scale(&int(2)).add(&t).mul(&t);
            f.compose(&x, &y)
        }
        ReductionMode::OldPaths => {
            let p = t.div(&one.sub(&z))?;
            let x = z.add(&p);
            let y = z.mul(&p).add(&p.mul(&p));
            f.compose(&x, &y)
        }
    }
}

/// T(z, t): plane trees by inner nodes (z) and leaves (t).
pub fn tree_gf(order: usize) -> Result<TSeries2> {
    let one = TSeries2::one(order);
    let z = TSeries2::x(order);
    let t = TSeries2::y(order);
    let d = z.sub(&t);
    let disc = one.sub(&z.add(&t).scale(&int(2))).add(&d.mul(&d));
    let half = BigRational::new(1.into(), 2.into());
    Ok(one.sub(&d).sub(&disc.sqrt()?).scale(&half))
}

/// P(z, t) = t/(1 - z): paths by inner nodes and leaves.
pub fn path_gf(order: usize) -> Result<TSeries2> {
    TSeries2::y(order).div(&TSeries2::one(order).sub(&TSeries2::x(order)))
}

/// L(z, w): plane trees with z marking nodes that are neither old leaves nor
/// their parents, w marking (old leaf, parent) pairs.
pub fn old_leaf_gf(order: usize) -> Result<TSeries2> {
    let one = TSeries2::one(order);
    let z = TSeries2::x(order);
    let w = TSeries2::y(order);
    let disc = one.sub(&z.scale(&int(4))).sub(&w.scale(&int(4))).add(&z.mul(&z).scale(&int(4)));
    let half = BigRational::new(1.into(), 2.into());
    Ok(one.sub(&disc.sqrt()?).scale(&half))
}

/// Φ^r applied to x^a y^b.
pub fn iterate_on_monomial(mode: ReductionMode, a: usize, b: usize, r: usize, order: usize) -> Result<TSeries2> {
    let mut f = TSeries2::monomial(order, BigRational::one(), a, b);
    for _ in 0..r {
        f = expansion_operator(mode, &f)?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_examples() {
        let n = 8;
        let z = TSeries2::x(n);
        let w = TSeries2::y(n);
        assert_eq!(expansion_operator(ReductionMode::OldLeaves, &z).unwrap(), z.add(&w));
        assert_eq!(
            expansion_operator(ReductionMode::OldLeaves, &w).unwrap(),
            TSeries2::from_terms(n, &[(1, 1, 2), (0, 2, 1)])
        );
        let leaf = expansion_operator(ReductionMode::Leaves, &TSeries2::y(n)).unwrap();
        let terms: Vec<(usize, usize, i64)> = (1..n).map(|k| (1, k, 1)).collect();
        assert_eq!(leaf, TSeries2::from_terms(n, &terms));
    }
}
