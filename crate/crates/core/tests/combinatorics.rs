use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use treecut::combinatorics::{
    binary_height_at_quarter, binary_height_poly, binomial, catalan, fibonacci_poly, fibonacci_table,
    narayana_assoc_direct, narayana_assoc_poly, narayana_assoc_table, narayana_derivative_at_one, narayana_number,
    old_leaf_count_number, IntPoly,
};
use treecut::ensemble::enumerate_trees;
use treecut::series::bivariate::TSeries2;
use treecut::series::{expansion_operator, u_extract, USeries};
use treecut::{tree_metrics, Error, ReductionMode};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(big(n))
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

#[test]
fn catalan_values() {
    assert_eq!(catalan(0), big(1));
    assert_eq!(catalan(5), big(42));
    for n in 0..20 {
        assert_eq!(narayana_assoc_poly(n).sum_coeffs(), catalan(n));
    }
}

#[test]
fn narayana_values() {
    assert_eq!(narayana_number(0, 0), big(1));
    assert_eq!(narayana_number(4, 2), big(6));
    assert_eq!(narayana_number(3, 5), big(0));
    assert_eq!(narayana_number(3, 0), big(0));
}

#[test]
fn associated_narayana_polynomials() {
    assert_eq!(narayana_assoc_poly(0), poly(&[0, 1]));
    assert_eq!(narayana_assoc_poly(1), poly(&[0, 1]));
    assert_eq!(narayana_assoc_poly(3), poly(&[0, 1, 3, 1]));
    assert_eq!(narayana_assoc_poly(4), poly(&[0, 1, 6, 6, 1]));
    let table = narayana_assoc_table(25);
    for (n, p) in table.iter().enumerate() {
        assert_eq!(*p, narayana_assoc_direct(n), "n = {n}");
    }
}

#[test]
fn narayana_counts_trees_by_leaves() {
    for n in 2..=10 {
        let mut counts = vec![BigInt::zero(); n + 1];
        for t in enumerate_trees(n).unwrap() {
            counts[tree_metrics(&t).leaf_count] += 1;
        }
        assert_eq!(IntPoly::new(counts), narayana_assoc_poly(n - 1), "n = {n}");
    }
}

#[test]
fn narayana_derivatives_at_one() {
    assert_eq!(narayana_derivative_at_one(4, 1), big(35));
    assert_eq!(narayana_derivative_at_one(4, 2), big(60));
    for n in 1..=20i64 {
        let nu = n as usize;
        assert_eq!(narayana_derivative_at_one(nu, 0), catalan(nu));
        assert_eq!(narayana_derivative_at_one(nu, 1), binomial(2 * n, n) / 2);
        assert_eq!(narayana_derivative_at_one(nu, 2), big(n - 1) * binomial(2 * n - 2, n - 1));
    }
}

#[test]
fn old_leaf_counts_match_enumeration() {
    for n in 1..=10 {
        let mut counts = vec![BigInt::zero(); n + 1];
        for t in enumerate_trees(n).unwrap() {
            counts[tree_metrics(&t).old_leaf_count] += 1;
        }
        for (k, c) in counts.iter().enumerate() {
            assert_eq!(*c, old_leaf_count_number(n, k), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn fibonacci_polynomials() {
    assert_eq!(fibonacci_poly(0), IntPoly::default());
    assert_eq!(fibonacci_poly(1), poly(&[1]));
    assert_eq!(fibonacci_poly(5), poly(&[1, 3, 1]));
    let f = fibonacci_table(12);
    let z = IntPoly::x();
    for r in 2..=12 {
        assert_eq!(f[r], &f[r - 1] + &(&z * &f[r - 2]));
    }
}

#[test]
fn binary_height_polynomials() {
    assert_eq!(binary_height_poly(0), poly(&[1]));
    assert_eq!(binary_height_poly(2), poly(&[1, 1, 2, 1]));
    assert_eq!(binary_height_poly(3).sum_coeffs(), big(26));
    let quarter = BigRational::new(big(1), big(4));
    for r in 0..=5 {
        let b = binary_height_poly(r);
        let (v, d) = binary_height_at_quarter(r);
        assert_eq!(v.to_rational(), b.eval(&quarter));
        assert_eq!(d.to_rational(), b.derivative().eval(&quarter));
    }
    let (b1, d1) = binary_height_at_quarter(1);
    assert_eq!(b1.to_rational(), BigRational::new(big(5), big(4)));
    assert_eq!(d1.to_rational(), BigRational::one());
}

fn one_plus_u_pow(order: usize, e: u32) -> USeries {
    USeries::from_coeffs(order, vec![q(1), q(1)]).pow(e)
}

#[test]
fn u_extraction_examples() {
    let order = 6;
    let u = USeries::monomial(order, q(1), 1);
    let z = u.div(&one_plus_u_pow(order, 2)).unwrap();
    assert_eq!(u_extract(&z, 1).unwrap(), q(1));
    assert_eq!(u_extract(&z, 2).unwrap(), q(0));
    assert_eq!(u_extract(&z, 3).unwrap(), q(0));

    let catalan_gf = u.div(&one_plus_u_pow(order, 1)).unwrap();
    assert_eq!(u_extract(&catalan_gf, 3).unwrap(), q(2));
    for n in 1..=order {
        assert_eq!(u_extract(&catalan_gf, n).unwrap(), BigRational::from_integer(catalan(n - 1)));
    }

    let one_minus_u2 = USeries::from_coeffs(order, vec![q(1), q(0), q(-1)]);
    let leaves = u.mul(&u).div(&one_plus_u_pow(order, 1).mul(&one_minus_u2)).unwrap();
    assert_eq!(u_extract(&leaves, 3).unwrap(), q(3));

    assert!(matches!(u_extract(&z, 7), Err(Error::InsufficientOrder { have: 6, need: 7 })));
}

#[test]
fn expansion_operator_examples() {
    let order = 6;
    let z = TSeries2::x(order);
    let w = TSeries2::y(order);
    assert_eq!(expansion_operator(ReductionMode::OldLeaves, &z).unwrap(), z.add(&w));
    assert_eq!(
        expansion_operator(ReductionMode::OldLeaves, &w).unwrap(),
        TSeries2::from_terms(order, &[(1, 1, 2), (0, 2, 1)])
    );
    let leaf = expansion_operator(ReductionMode::Leaves, &w).unwrap();
    let terms: Vec<(usize, usize, i64)> = (1..order).map(|k| (1, k, 1)).collect();
    assert_eq!(leaf, TSeries2::from_terms(order, &terms));
}
