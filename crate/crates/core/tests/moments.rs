use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use treecut::analysis::constants::{paths_constant, ALPHA, PI};
use treecut::analysis::report::to_f64;
use treecut::analysis::{
    asymptotic_prediction, brute_distribution, clt_experiment, comparison_report, constant_alpha, error_exponent,
    gf_distribution, total_asymptotics, total_report, Statistic, TotalKind,
};
use treecut::ensemble::enumerate_trees;
use treecut::exec::Exec;
use treecut::reduction::{total_old_path_segments, total_paths};
use treecut::series::gf::{gf_row_with, Route};
use treecut::series::{
    explicit_expectation, gf_table, moment_table, moment_value, old_path_segments_expectation_table,
    total_paths_expectation_table,
};
use treecut::combinatorics::{catalan, IntPoly};
use treecut::{Error, ReductionMode, Variant};

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[test]
fn gf_row_examples() {
    let g1 = gf_table(ReductionMode::Leaves, Variant::Size, 1, 4).unwrap();
    assert_eq!(*g1.row(2), IntPoly::from_i64s(&[0, 1]));
    assert_eq!(*g1.row(3), IntPoly::from_i64s(&[0, 1, 1]));
    assert_eq!(*g1.row(4), IntPoly::from_i64s(&[0, 1, 3, 1]));
    let g3 = gf_table(ReductionMode::Leaves, Variant::Size, 3, 7).unwrap();
    assert_eq!(*g3.row(7), IntPoly::from_i64s(&[0, 57, 33, 9, 1]));
    let op = gf_table(ReductionMode::OldPaths, Variant::Size, 1, 4).unwrap();
    assert_eq!(*op.row(4), IntPoly::from_i64s(&[0, 1, 2, 2]));
}

#[test]
fn alternate_routes_agree() {
    for (mode, variant) in [(ReductionMode::Paths, Variant::Size), (ReductionMode::OldLeaves, Variant::Size)] {
        for rounds in 0..=3 {
            for n in [1, 5, 17, 30] {
                let a = gf_row_with(mode, variant, rounds, n, Route::Default).unwrap();
                let b = gf_row_with(mode, variant, rounds, n, Route::Alternate).unwrap();
                assert_eq!(a, b, "{mode} r = {rounds} n = {n}");
            }
        }
    }
}

#[test]
fn unsupported_variants_are_rejected() {
    assert!(matches!(gf_table(ReductionMode::Leaves, Variant::OldLeafCount, 1, 5), Err(Error::Unsupported(_))));
    assert!(matches!(gf_table(ReductionMode::OldPaths, Variant::InnerI, 1, 5), Err(Error::Unsupported(_))));
}

#[test]
fn distribution_examples() {
    for d in [
        brute_distribution(ReductionMode::Leaves, 3, 1, Variant::Size).unwrap(),
        gf_distribution(ReductionMode::Leaves, 3, 1, Variant::Size).unwrap(),
    ] {
        assert_eq!(d.masses, vec![r(0, 1), r(1, 2), r(1, 2), r(0, 1)]);
    }
    for n in 1..=7 {
        let d = gf_distribution(ReductionMode::Leaves, n, 0, Variant::Size).unwrap();
        assert!(d.masses[n].is_one());
        assert_eq!(d, brute_distribution(ReductionMode::Leaves, n, 0, Variant::Size).unwrap());
    }
    let d = brute_distribution(ReductionMode::OldPaths, 4, 1, Variant::Size).unwrap();
    assert_eq!(d.masses, vec![r(0, 1), r(1, 5), r(2, 5), r(2, 5), r(0, 1)]);
    assert_eq!(d, gf_distribution(ReductionMode::OldPaths, 4, 1, Variant::Size).unwrap());
}

#[test]
fn distributions_agree_on_larger_sizes() {
    for mode in ReductionMode::ALL {
        for v in Variant::ALL {
            let Ok(_) = gf_table(mode, v, 0, 1) else { continue };
            for n in [9, 10] {
                for rounds in [1, 3] {
                    assert_eq!(
                        brute_distribution(mode, n, rounds, v).unwrap(),
                        gf_distribution(mode, n, rounds, v).unwrap(),
                        "{mode} {v} n = {n} r = {rounds}"
                    );
                }
            }
        }
    }
}

#[test]
fn moment_examples() {
    assert_eq!(moment_value(ReductionMode::Leaves, Variant::Size, 1, 1, 3).unwrap(), r(3, 2));
    assert_eq!(moment_value(ReductionMode::OldPaths, Variant::Size, 1, 1, 4).unwrap(), r(11, 5));
    assert_eq!(moment_value(ReductionMode::OldPaths, Variant::OldLeafCount, 1, 0, 3).unwrap(), r(1, 1));
    assert_eq!(moment_value(ReductionMode::OldLeaves, Variant::Size, 1, 1, 3).unwrap(), r(2, 1));
}

#[test]
fn moment_tables_match_distributions() {
    for mode in ReductionMode::ALL {
        for v in Variant::ALL {
            for d in 1..=3 {
                let Ok(table) = moment_table(mode, v, d, 2, 9) else { continue };
                for n in 2..=9 {
                    let dist = brute_distribution(mode, n, 2, v).unwrap();
                    assert_eq!(table[n - 2], dist.factorial_moment(d), "{mode} {v} d = {d} n = {n}");
                }
            }
        }
    }
}

#[test]
fn explicit_expectation_examples() {
    assert_eq!(explicit_expectation(ReductionMode::Leaves, 3, 1).unwrap(), r(3, 2));
    assert_eq!(explicit_expectation(ReductionMode::OldPaths, 3, 1).unwrap(), r(3, 2));
    assert_eq!(explicit_expectation(ReductionMode::Leaves, 2, 0).unwrap(), r(2, 1));
    assert!(explicit_expectation(ReductionMode::Paths, 3, 1).is_err());
}

#[test]
fn totals_tables() {
    let p = total_paths_expectation_table(10);
    let s = old_path_segments_expectation_table(10);
    assert_eq!(p[0], r(1, 1));
    assert_eq!(p[1], r(2, 1));
    assert_eq!(s[0], r(1, 1));
    assert_eq!(s[1], r(3, 2));
    for n in 2..=10 {
        let c = BigRational::from_integer(catalan(n - 1));
        let (mut tp, mut ts) = (0usize, 0usize);
        for t in enumerate_trees(n).unwrap() {
            tp += total_paths(&t);
            ts += total_old_path_segments(&t);
        }
        assert_eq!(p[n - 2], BigRational::from_integer(tp.into()) / &c, "n = {n}");
        assert_eq!(s[n - 2], BigRational::from_integer(ts.into()) / &c, "n = {n}");
    }
}

#[test]
fn asymptotic_examples() {
    let v = asymptotic_prediction(ReductionMode::Leaves, Variant::Size, Statistic::Mean, 300.0, 2).unwrap();
    assert!((v - (100.0 - 1.0 / 9.0)).abs() < 1e-12);
    for n in [10.0, 1000.0] {
        let v = asymptotic_prediction(ReductionMode::OldPaths, Variant::Size, Statistic::Mean, n, 1).unwrap();
        assert!((v - (2.0 * n / 3.0 - 2.0 / 9.0)).abs() < 1e-9);
        let v = asymptotic_prediction(ReductionMode::OldLeaves, Variant::Size, Statistic::Mean, n, 1).unwrap();
        assert!((v - (0.75 * n - 0.125)).abs() < 1e-9);
    }
    let e = asymptotic_prediction(ReductionMode::OldLeaves, Variant::Size, Statistic::Factorial(3), 10.0, 1);
    assert!(matches!(e, Err(Error::Unsupported(_))));
    assert_eq!(error_exponent(ReductionMode::Leaves, Variant::Size, Statistic::Mean), -1.0);
}

#[test]
fn leaves_mean_residual_decays() {
    let rep = comparison_report(ReductionMode::Leaves, Variant::Size, Statistic::Mean, 1, &[200, 400]).unwrap();
    assert!(rep[1].residual.abs() <= 0.9 * rep[0].residual.abs());
    assert_eq!(rep[0].residual_scaled, rep[0].residual * 200.0);
}

#[test]
fn total_expansions() {
    let s3 = total_asymptotics(TotalKind::OldPathSegments, 3.0);
    assert!((s3 - 1.550).abs() < 5e-4);
    let lead = total_asymptotics(TotalKind::OldPathSegments, 2001.0) - total_asymptotics(TotalKind::OldPathSegments, 2000.0);
    assert!((lead - (PI * PI / 6.0 - 1.0)).abs() < 1e-6);
    let lead = total_asymptotics(TotalKind::Paths, 1e6 + 1.0) - total_asymptotics(TotalKind::Paths, 1e6);
    assert!((lead - (ALPHA - 1.0)).abs() < 1e-6);
    assert!((paths_constant() + 0.1181).abs() < 1e-3);
    assert!(total_report(TotalKind::Paths, &[1]).is_err());
}

#[test]
fn alpha_values() {
    assert_eq!(format!("{:.6}", constant_alpha(6)), "1.606695");
    assert_eq!(format!("{:.1}", constant_alpha(1)), "1.6");
    assert!(constant_alpha(12) - 1.0 > 0.60 && constant_alpha(12) - 1.0 < 0.61);
}

#[test]
fn clt_small_run() {
    let rep = clt_experiment(ReductionMode::Leaves, 500, 2, 4000, 3, Exec::Sequential).unwrap();
    assert!(rep.standardized_mean.abs() < 0.1);
    assert!((rep.standardized_variance - 1.0).abs() < 0.15);
    assert!(rep.ks_distance < 0.06);
    assert!(clt_experiment(ReductionMode::Leaves, 500, 0, 100, 3, Exec::Sequential).is_err());
    assert!(clt_experiment(ReductionMode::OldPaths, 500, 1, 100, 3, Exec::Sequential).is_err());
}

#[test]
fn clt_is_reproducible_across_strategies() {
    let a = clt_experiment(ReductionMode::Paths, 300, 1, 5000, 11, Exec::Sequential).unwrap();
    let b = clt_experiment(ReductionMode::Paths, 300, 1, 5000, 11, Exec::Parallel).unwrap();
    assert_eq!(a.standardized_mean, b.standardized_mean);
    assert_eq!(a.ks_distance, b.ks_distance);
}

#[test]
fn exact_means_are_close_to_leading_order() {
    let m = moment_value(ReductionMode::Leaves, Variant::Size, 1, 2, 100).unwrap();
    assert!((to_f64(&m) - 100.0 / 3.0).abs() < 1.0);
    assert!(!m.is_zero());
}
