//! Named cross-checks of every structural, combinatorial and series invariant.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analysis::distribution::{distribution_from_row, Census};
use crate::analysis::report::{rational_string, zero_mass_ok};
use crate::analysis::brute_census;
use crate::combinatorics::{
    binary_height_at_quarter, binomial, catalan, fibonacci_table, narayana_assoc_table, narayana_derivative_at_one,
    narayana_number, old_leaf_count_number, Dyadic, IntPoly,
};
use crate::ensemble::{enumerate_trees, sample_tree, RandomState};
use crate::exec::Exec;
use crate::reduction::{final_size, reduce_iter, reduce_once, total_old_path_segments, total_paths, ReductionMode};
use crate::series::gf::{gf_table, paths_equivalent_rounds, variant_supported};
use crate::series::identities::{
    leaves_derivative_identity, leaves_moment_identity, old_paths_leaf_identity, old_paths_rest_identity,
};
use crate::series::moments::{
    explicit_expectation, moment_table, old_path_segments_expectation_table, total_paths_expectation_table,
};
use crate::series::operators::{expansion_operator, old_leaf_gf, path_gf, tree_gf};
use crate::series::{IntSeries, TSeries2};
use crate::tree::{PlaneTree, Variant};

/// Size and order bounds for one verification run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Limits {
    /// Exhaustive enumeration up to this size.
    pub max_n: usize,
    pub max_rounds: usize,
    /// Bound for the survival check.
    pub survival_rounds: usize,
    pub correspondence_rounds: usize,
    /// Sizes for exact-table comparisons (explicit expectations, Paths/Leaves laws).
    pub table_n: usize,
    pub table_rounds: usize,
    pub correspondence_n: usize,
    pub inner_n: usize,
    pub inner_rounds: usize,
    pub operator_degree: usize,
    pub narayana_n: usize,
    pub convolution_n: usize,
    pub fibonacci_r: usize,
    /// B_r(1/4) is checked for r up to this bound; it has about 2^r bits.
    pub height_r: usize,
    pub docagne_s: usize,
    pub substitution_r: usize,
    pub substitution_order: usize,
    pub identity_order: usize,
    pub identity_d: usize,
}

impl Limits {
    pub fn full() -> Self {
        Limits {
            max_n: 12,
            max_rounds: 5,
            survival_rounds: 6,
            correspondence_rounds: 2,
            table_n: 60,
            table_rounds: 8,
            correspondence_n: 40,
            inner_n: 30,
            inner_rounds: 4,
            operator_degree: 12,
            narayana_n: 30,
            convolution_n: 15,
            fibonacci_r: 30,
            height_r: 22,
            docagne_s: 20,
            substitution_r: 15,
            substitution_order: 40,
            identity_order: 15,
            identity_d: 4,
        }
    }

    pub fn quick() -> Self {
        Limits {
            max_n: 8,
            max_rounds: 3,
            survival_rounds: 4,
            correspondence_rounds: 2,
            table_n: 20,
            table_rounds: 4,
            correspondence_n: 16,
            inner_n: 12,
            inner_rounds: 2,
            operator_degree: 8,
            narayana_n: 12,
            convolution_n: 8,
            fibonacci_r: 12,
            height_r: 20,
            docagne_s: 10,
            substitution_r: 8,
            substitution_order: 20,
            identity_order: 8,
            identity_d: 2,
        }
    }
}

type Outcome = Result<(), String>;

/// Shared state: limits, execution strategy and lazily built censuses.
pub struct Context {
    pub limits: Limits,
    pub exec: Exec,
    censuses: [OnceLock<Vec<Census>>; 4],
}

impl Context {
    pub fn new(limits: Limits, exec: Exec) -> Self {
        Context { limits, exec, censuses: Default::default() }
    }

    /// Censuses for sizes 1..=max_n (index n - 1), rounds 0..=max_rounds.
    pub fn censuses(&self, mode: ReductionMode) -> &[Census] {
        let i = ReductionMode::ALL.iter().position(|m| *m == mode).unwrap();
        self.censuses[i].get_or_init(|| {
            let rounds = self.limits.max_rounds.max(self.limits.correspondence_rounds);
            let rounds = rounds.max(paths_equivalent_rounds(self.limits.correspondence_rounds));
            (1..=self.limits.max_n)
                .map(|n| brute_census(mode, n, rounds, self.exec).expect("within cap"))
                .collect()
        })
    }

    fn trees(&self, n: usize) -> Vec<PlaneTree> {
        enumerate_trees(n).expect("within cap").collect()
    }

    /// Runs `f` on every tree of every size 1..=max_n.
    fn all_trees(&self, f: impl Fn(&PlaneTree) -> Outcome + Sync + Send) -> Outcome {
        for n in 1..=self.limits.max_n {
            let res = self.exec.map(&self.trees(n), &f);
            if let Some(e) = res.into_iter().find_map(Result::err) {
                return Err(e);
            }
        }
        Ok(())
    }
}

pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&Context) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

// ---- trees ----

fn metrics_consistency(cx: &Context) -> Outcome {
    cx.all_trees(|t| {
        let m = t.metrics();
        ensure(m.size == m.leaf_count + m.inner_count, || format!("{t}: size != leaves + inner"))?;
        let h = 1 + t.children().map(|c| c.to_tree().metrics().node_height).max().unwrap_or(0);
        ensure(m.node_height == h, || format!("{t}: height {} expected {h}", m.node_height))
    })
}

fn census_of(trees: &[PlaneTree], f: impl Fn(&PlaneTree) -> usize) -> BTreeMap<usize, BigInt> {
    let mut out = BTreeMap::new();
    for t in trees {
        *out.entry(f(t)).or_insert_with(BigInt::zero) += 1;
    }
    out
}

fn half_leaves(cx: &Context) -> Outcome {
    for n in 2..=cx.limits.max_n {
        let total: usize = cx.trees(n).iter().map(|t| t.metrics().leaf_count).sum();
        let expect = binomial(2 * n as i64 - 2, n as i64 - 1) / 2;
        ensure(BigInt::from(total) == expect, || format!("n = {n}: {total} leaves, expected {expect}"))?;
    }
    Ok(())
}

fn narayana_census(cx: &Context) -> Outcome {
    for n in 2..=cx.limits.max_n {
        let c = census_of(&cx.trees(n), |t| t.metrics().leaf_count);
        for k in 0..=n {
            let got = c.get(&k).cloned().unwrap_or_default();
            let expect = narayana_number(n - 1, k);
            ensure(got == expect, || format!("n = {n}, k = {k}: {got} trees, expected {expect}"))?;
        }
    }
    Ok(())
}

fn old_leaf_census(cx: &Context) -> Outcome {
    for n in 1..=cx.limits.max_n {
        let c = census_of(&cx.trees(n), |t| t.metrics().old_leaf_count);
        for k in 0..=n {
            let got = c.get(&k).cloned().unwrap_or_default();
            let expect = old_leaf_count_number(n, k);
            ensure(got == expect, || format!("n = {n}, k = {k}: {got} trees, expected {expect}"))?;
        }
    }
    Ok(())
}

// ---- reductions ----

fn leaves_height_drop(cx: &Context) -> Outcome {
    cx.all_trees(|t| {
        if t.size() < 2 {
            return Ok(());
        }
        let r = reduce_once(t, ReductionMode::Leaves).map_err(|e| format!("{t}: {e}"))?;
        ensure(r.metrics().node_height + 1 == t.metrics().node_height, || format!("{t}: height did not drop by one"))
    })
}

fn leaves_survival(cx: &Context) -> Outcome {
    let rounds = cx.limits.survival_rounds;
    cx.all_trees(|t| {
        let h = t.metrics().node_height;
        for r in 0..=rounds {
            let s = reduce_iter(t, ReductionMode::Leaves, r).survived;
            ensure(s == (h > r), || format!("{t}: survival after {r} rounds is {s}, height {h}"))?;
        }
        Ok(())
    })
}

fn size_decreases(cx: &Context) -> Outcome {
    cx.all_trees(|t| {
        for mode in ReductionMode::ALL {
            match reduce_once(t, mode) {
                Ok(r) if t.size() == 1 => {
                    ensure(mode.always_survives() && r.size() == 1, || format!("{t}: {mode} changed the single node"))?
                }
                Ok(r) => ensure(r.size() < t.size(), || format!("{t}: {mode} did not shrink"))?,
                Err(_) => ensure(!mode.always_survives(), || format!("{t}: {mode} undefined"))?,
            }
        }
        Ok(())
    })
}

fn old_path_split(cx: &Context) -> Outcome {
    let rounds = cx.limits.max_rounds;
    cx.all_trees(|t| {
        let out = reduce_iter(t, ReductionMode::OldPaths, rounds);
        for (r, m) in out.per_round.iter().enumerate() {
            ensure(m.size == 2 * m.old_leaf_count + m.neither_count, || format!("{t}: split fails after {r} rounds"))?;
        }
        Ok(())
    })
}

fn zero_rounds(cx: &Context) -> Outcome {
    cx.all_trees(|t| {
        for mode in ReductionMode::ALL {
            let out = reduce_iter(t, mode, 0);
            ensure(out.survived && out.final_size == t.size(), || format!("{t}: zero rounds changed {mode}"))?;
        }
        Ok(())
    })
}

fn paths_leaves_multisets(cx: &Context) -> Outcome {
    for n in 1..=cx.limits.max_n {
        let trees = cx.trees(n);
        for r in 0..=cx.limits.correspondence_rounds {
            let rr = paths_equivalent_rounds(r);
            let a = census_of(&trees, |t| final_size(t, ReductionMode::Paths, r));
            let b = census_of(&trees, |t| final_size(t, ReductionMode::Leaves, rr));
            ensure(a == b, || format!("n = {n}, r = {r}: final-size multisets differ"))?;
        }
    }
    Ok(())
}

// ---- combinatorics ----

fn narayana_reverse(cx: &Context) -> Outcome {
    for (n, p) in narayana_assoc_table(cx.limits.narayana_n).iter().enumerate() {
        let mut rhs = p.clone();
        if n == 0 {
            rhs = &rhs + &IntPoly::from_i64s(&[1, -1]);
        }
        ensure(p.reversed(n + 1) == rhs, || format!("reverse relation fails at n = {n}"))?;
    }
    Ok(())
}

fn narayana_convolution(cx: &Context) -> Outcome {
    let m = cx.limits.convolution_n;
    for n in 2..=m {
        for k in 1..=m {
            let rhs: BigInt = (1..=k)
                .map(|l| binomial((2 * n + k - l) as i64 - 2, (k - l) as i64) * narayana_number(n - 1, l))
                .sum();
            let lhs = narayana_number(n + k - 1, k);
            ensure(lhs == rhs, || format!("convolution fails at n = {n}, k = {k}"))?;
        }
    }
    Ok(())
}

fn narayana_derivatives(cx: &Context) -> Outcome {
    let table = narayana_assoc_table(cx.limits.narayana_n);
    for (n, p) in table.iter().enumerate().skip(1) {
        let one = BigInt::one();
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let ni = n as i64;
        let e1 = binomial(2 * ni, ni) / 2;
        let e2 = BigInt::from(ni - 1) * binomial(2 * ni - 2, ni - 1);
        ensure(d1.eval_int(&one) == e1 && narayana_derivative_at_one(n, 1) == e1, || format!("first derivative, n = {n}"))?;
        ensure(d2.eval_int(&one) == e2 && narayana_derivative_at_one(n, 2) == e2, || format!("second derivative, n = {n}"))?;
        ensure(p.eval_int(&one) == catalan(n), || format!("value at one, n = {n}"))?;
    }
    Ok(())
}

fn minus_z_pow(r: usize) -> IntPoly {
    IntPoly::monomial(if r % 2 == 0 { BigInt::one() } else { -BigInt::one() }, r)
}

fn fibonacci_docagne(cx: &Context) -> Outcome {
    let s_max = cx.limits.docagne_s.max(cx.limits.fibonacci_r);
    let f = fibonacci_table(s_max + 2);
    for r in 0..=cx.limits.fibonacci_r {
        let lhs = &(&f[r + 1] * &f[r + 1]) - &(&f[r] * &f[r + 2]);
        ensure(lhs == minus_z_pow(r), || format!("Cassini form fails at r = {r}"))?;
    }
    for s in 0..=cx.limits.docagne_s {
        for r in 0..=s {
            let lhs = &(&f[r + 1] * &f[s]) - &(&f[r] * &f[s + 1]);
            ensure(lhs == &minus_z_pow(r) * &f[s - r], || format!("d'Ocagne fails at r = {r}, s = {s}"))?;
        }
    }
    Ok(())
}

fn fibonacci_substitution(cx: &Context) -> Outcome {
    let order = cx.limits.substitution_order;
    let one_plus = vec![(0, BigInt::one()), (1, BigInt::one())];
    // w = -u/(1+u)^2
    let w = IntSeries::monomial(order, -BigInt::one(), 1).div_sparse(&one_plus).and_then(|s| s.div_sparse(&one_plus));
    let w = w.map_err(|e| e.to_string())?;
    let f = fibonacci_table(cx.limits.substitution_r);
    for r in 1..=cx.limits.substitution_r {
        let mut s = IntSeries::eval_poly(&f[r], &w).mul_sparse(&[(0, BigInt::one()), (1, -BigInt::one())]);
        for _ in 0..r - 1 {
            s = s.mul_sparse(&one_plus);
        }
        let expect = IntSeries::from_sparse(order, &[(0, BigInt::one()), (r, -BigInt::one())]);
        ensure(s == expect, || format!("substitution fails at r = {r}"))?;
    }
    Ok(())
}

fn binary_height_quarter(cx: &Context) -> Outcome {
    let two = Dyadic::integer(2);
    let mut prev: Option<Dyadic> = None;
    // B_0 = 1, B_r = 1 + B_{r-1}^2 / 4
    let mut b = Dyadic::integer(1);
    for r in 0..=cx.limits.height_r {
        if r > 0 {
            b = Dyadic::integer(1).add(&b.mul(&b).halve(2));
        }
        let gap = two.sub(&b);
        if let Some(p) = &prev {
            ensure(gap.cmp_value(p).is_lt(), || format!("2 - B_r(1/4) not decreasing at r = {r}"))?;
        }
        if r >= 20 {
            let ratio = gap.to_f64() * r as f64 / 4.0;
            ensure((0.75..=1.25).contains(&ratio), || format!("r = {r}: (2 - B_r(1/4)) r / 4 = {ratio}"))?;
        }
        prev = Some(gap);
    }
    let (exact, _) = binary_height_at_quarter(cx.limits.height_r.min(8));
    ensure(exact.to_f64() > 1.0, || "B_r(1/4) out of range".into())
}

// ---- series ----

fn functional_equations(cx: &Context) -> Outcome {
    let d = cx.limits.operator_degree;
    let err = |e: crate::Error| e.to_string();
    let t = tree_gf(d).map_err(err)?;
    let l = old_leaf_gf(d).map_err(err)?;
    let lhs = TSeries2::y(d).add(&expansion_operator(ReductionMode::Leaves, &t).map_err(err)?);
    ensure(lhs == t, || "T = t + leaf expansion of T fails".into())?;
    let lhs = path_gf(d).map_err(err)?.add(&expansion_operator(ReductionMode::Paths, &t).map_err(err)?);
    ensure(lhs == t, || "T = P + path expansion of T fails".into())?;
    ensure(expansion_operator(ReductionMode::OldLeaves, &l).map_err(err)? == l, || "old-leaf fixpoint fails".into())?;
    ensure(expansion_operator(ReductionMode::OldPaths, &l).map_err(err)? == l, || "old-path fixpoint fails".into())
}

fn leaves_survivors(cx: &Context) -> Outcome {
    let max_n = cx.limits.max_n;
    let rounds = cx.limits.survival_rounds;
    let f = fibonacci_table(rounds + 2);
    for r in 0..=rounds {
        // z F_r(-z) / F_{r+1}(-z)
        let num = IntSeries::from_poly(max_n, &f[r].negate_arg()).shift_up(1);
        let den: Vec<(usize, BigInt)> = f[r + 1].negate_arg().coeffs().iter().cloned().enumerate().collect();
        let q = num.div_sparse(&den).map_err(|e| e.to_string())?;
        let table = gf_table(ReductionMode::Leaves, Variant::Size, r, max_n).map_err(|e| e.to_string())?;
        for n in 1..=max_n {
            let dead = cx.trees(n).iter().filter(|t| t.metrics().node_height <= r).count();
            ensure(BigInt::from(dead) == *q.coeff(n), || format!("n = {n}, r = {r}: survivor series mismatch"))?;
            let sum = table.row(n).sum_coeffs();
            ensure(sum == catalan(n - 1) - dead, || format!("n = {n}, r = {r}: row sum mismatch"))?;
        }
    }
    Ok(())
}

fn gf_vs_brute(cx: &Context) -> Outcome {
    let max_n = cx.limits.max_n;
    for mode in ReductionMode::ALL {
        let census = cx.censuses(mode);
        for variant in Variant::ALL.into_iter().filter(|v| variant_supported(mode, *v)) {
            for r in 0..=cx.limits.max_rounds {
                let table = gf_table(mode, variant, r, max_n).map_err(|e| e.to_string())?;
                for n in 1..=max_n {
                    let brute = census[n - 1].distribution(r, variant);
                    let gf = distribution_from_row(mode, n, r, variant, table.row(n));
                    ensure(brute == gf, || format!("{mode} {variant} n = {n} r = {r}: distributions differ"))?;
                    ensure(gf.total().is_one(), || format!("{mode} {variant} n = {n} r = {r}: not normalized"))?;
                    if variant == Variant::Size {
                        ensure(zero_mass_ok(mode, &gf.masses), || format!("{mode} n = {n}: mass at zero"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn series_identities(cx: &Context) -> Outcome {
    let order = cx.limits.identity_order;
    type Id = fn(usize, usize) -> crate::Result<(crate::series::identities::PolySeries, crate::series::identities::PolySeries)>;
    let ids: [(&str, Id); 4] = [
        ("leaf moment", leaves_moment_identity),
        ("leaf derivative", leaves_derivative_identity),
        ("old-path leaves", old_paths_leaf_identity),
        ("old-path rest", old_paths_rest_identity),
    ];
    for d in 1..=cx.limits.identity_d {
        for (name, f) in ids {
            let (a, b) = f(d, order).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{name} identity fails for d = {d}"))?;
        }
    }
    Ok(())
}

fn explicit_expectations(cx: &Context) -> Outcome {
    for mode in [ReductionMode::Leaves, ReductionMode::OldPaths] {
        for r in 0..=cx.limits.table_rounds {
            let table = moment_table(mode, Variant::Size, 1, r, cx.limits.table_n).map_err(|e| e.to_string())?;
            for (i, v) in table.iter().enumerate() {
                let n = i + 2;
                let e = explicit_expectation(mode, n, r).map_err(|e| e.to_string())?;
                ensure(*v == e, || format!("{mode} n = {n} r = {r}: {} vs {}", rational_string(v), rational_string(&e)))?;
            }
        }
    }
    Ok(())
}

fn inner_equals_next_size(cx: &Context) -> Outcome {
    let n = cx.limits.inner_n;
    let err = |e: crate::Error| e.to_string();
    for r in 0..=cx.limits.inner_rounds {
        let inner = gf_table(ReductionMode::Leaves, Variant::InnerI, r, n).map_err(err)?;
        let size = gf_table(ReductionMode::Leaves, Variant::Size, r + 1, n).map_err(err)?;
        let leaves = gf_table(ReductionMode::Leaves, Variant::LeavesL, r, n).map_err(err)?;
        let size_r = gf_table(ReductionMode::Leaves, Variant::Size, r, n).map_err(err)?;
        for m in 1..=n {
            // the constant terms differ: a surviving single node has no inner
            // node, while one more round removes it
            let tail = |p: &IntPoly| p.coeffs().iter().skip(1).cloned().collect::<Vec<_>>();
            ensure(tail(inner.row(m)) == tail(size.row(m)), || format!("n = {m}, r = {r}: inner row differs"))?;
            let d = |p: &IntPoly| p.derivative().eval_int(&BigInt::one());
            ensure(d(size_r.row(m)) == d(inner.row(m)) + d(leaves.row(m)), || format!("n = {m}, r = {r}: X != I + L"))?;
        }
    }
    Ok(())
}

// ---- ensemble ----

fn enumeration_distinct(cx: &Context) -> Outcome {
    for n in 1..=cx.limits.max_n + 1 {
        let mut seen = HashSet::new();
        let mut count = 0usize;
        for t in enumerate_trees(n).map_err(|e| e.to_string())? {
            ensure(seen.insert(t.to_string()), || format!("n = {n}: duplicate {t}"))?;
            count += 1;
        }
        ensure(BigInt::from(count) == catalan(n - 1), || format!("n = {n}: {count} trees"))?;
    }
    Ok(())
}

fn sampler_determinism(cx: &Context) -> Outcome {
    let draw = |seed: u64| {
        let mut st = RandomState::new(seed);
        (0..50).map(|_| sample_tree(cx.limits.max_n, &mut st)).collect::<Vec<_>>()
    };
    let seeds: Vec<u64> = (0..4).collect();
    let a = cx.exec.map(&seeds, |&s| draw(s));
    let b: Vec<_> = seeds.iter().map(|&s| draw(s)).collect();
    ensure(a == b, || "sampling depends on scheduling".into())?;
    ensure(a[0] != a[1], || "distinct seeds gave identical streams".into())
}

// ---- analysis ----

fn moments_vs_distributions(cx: &Context) -> Outcome {
    let max_n = cx.limits.max_n;
    for mode in ReductionMode::ALL {
        let census = cx.censuses(mode);
        for variant in Variant::ALL {
            for r in 0..=cx.limits.max_rounds {
                for d in 1..=2 {
                    let table = match moment_table(mode, variant, d, r, max_n) {
                        Ok(t) => t,
                        Err(crate::Error::Unsupported(_)) => continue,
                        Err(e) => return Err(e.to_string()),
                    };
                    for n in 2..=max_n {
                        let got = census[n - 1].distribution(r, variant).factorial_moment(d);
                        ensure(got == table[n - 2], || format!("{mode} {variant} d = {d} n = {n} r = {r}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn paths_leaves_distributions(cx: &Context) -> Outcome {
    let n = cx.limits.correspondence_n;
    let err = |e: crate::Error| e.to_string();
    for r in 0..=cx.limits.correspondence_rounds {
        let a = gf_table(ReductionMode::Paths, Variant::Size, r, n).map_err(err)?;
        let b = gf_table(ReductionMode::Leaves, Variant::Size, paths_equivalent_rounds(r), n).map_err(err)?;
        for m in 1..=n {
            ensure(a.row(m) == b.row(m), || format!("n = {m}, r = {r}: path and leaf laws differ"))?;
        }
    }
    Ok(())
}

fn expectation_split(cx: &Context) -> Outcome {
    let n = cx.limits.table_n;
    let err = |e: crate::Error| e.to_string();
    for r in 0..=cx.limits.table_rounds {
        let size = moment_table(ReductionMode::OldPaths, Variant::Size, 1, r, n).map_err(err)?;
        let old = moment_table(ReductionMode::OldPaths, Variant::OldLeafCount, 1, r, n).map_err(err)?;
        let rest = moment_table(ReductionMode::OldPaths, Variant::NeitherCount, 1, r, n).map_err(err)?;
        for i in 0..size.len() {
            let rhs = &old[i] * BigRational::from_integer(2.into()) + &rest[i];
            ensure(size[i] == rhs, || format!("n = {}, r = {r}: split of expectations fails", i + 2))?;
        }
    }
    Ok(())
}

fn totals_consistency(cx: &Context) -> Outcome {
    let max_n = cx.limits.max_n;
    let s = old_path_segments_expectation_table(max_n);
    let p = total_paths_expectation_table(max_n);
    for n in 2..=max_n {
        let trees = cx.trees(n);
        let c = catalan(n - 1);
        let es = q(trees.iter().map(total_old_path_segments).sum::<usize>(), c.clone());
        let ep = q(trees.iter().map(total_paths).sum::<usize>(), c);
        ensure(es == s[n - 2], || format!("n = {n}: segments {} vs {}", rational_string(&es), rational_string(&s[n - 2])))?;
        ensure(ep == p[n - 2], || format!("n = {n}: paths {} vs {}", rational_string(&ep), rational_string(&p[n - 2])))?;
    }
    Ok(())
}

macro_rules! check {
    ($name:literal, $desc:literal, $f:ident) => {
        Check { name: $name, description: $desc, run: $f }
    };
}

pub const CHECKS: &[Check] = &[
    check!("metrics-consistency", "size = leaves + inner; height recursion", metrics_consistency),
    check!("half-leaves", "leaves make up half of all nodes over all trees", half_leaves),
    check!("narayana-census", "trees by leaf count follow the Narayana row", narayana_census),
    check!("old-leaf-census", "trees by old-leaf count follow the closed count", old_leaf_census),
    check!("leaves-height-drop", "leaf cutting lowers the height by one", leaves_height_drop),
    check!("leaves-survival", "a tree survives r leaf cuts iff its height exceeds r", leaves_survival),
    check!("size-decreases", "every defined round shrinks the tree except the fixpoint", size_decreases),
    check!("old-path-split", "size = 2 old leaves + other nodes after every old-path round", old_path_split),
    check!("zero-rounds", "zero rounds leave the tree unchanged", zero_rounds),
    check!("paths-leaves-multisets", "path cuts match 2^(r+1) - 2 leaf cuts as multisets", paths_leaves_multisets),
    check!("narayana-reverse", "reversal relation of associated Narayana polynomials", narayana_reverse),
    check!("narayana-convolution", "Narayana convolution identity", narayana_convolution),
    check!("narayana-derivatives", "first and second derivatives at one", narayana_derivatives),
    check!("fibonacci-docagne", "d'Ocagne identity and its Cassini special case", fibonacci_docagne),
    check!("fibonacci-substitution", "Fibonacci polynomials under z = -u/(1+u)^2", fibonacci_substitution),
    check!("binary-height-quarter", "2 - B_r(1/4) decreases and behaves like 4/r", binary_height_quarter),
    check!("functional-equations", "expansion operators fix the tree generating functions", functional_equations),
    check!("leaves-survivors", "non-survivors of leaf cutting and row sums", leaves_survivors),
    check!("gf-vs-brute", "generating-function distributions equal exhaustive censuses", gf_vs_brute),
    check!("series-identities", "the four power-series identities", series_identities),
    check!("explicit-expectations", "moment tables equal the binomial-sum expectations", explicit_expectations),
    check!("inner-equals-next-size", "inner nodes after r cuts equal size after r + 1; X = I + L", inner_equals_next_size),
    check!("enumeration-distinct", "enumeration is duplicate free and complete", enumeration_distinct),
    check!("sampler-determinism", "seeded sampling is reproducible under any scheduling", sampler_determinism),
    check!("moments-vs-distributions", "closed moment forms equal census moments", moments_vs_distributions),
    check!("paths-leaves-distributions", "path and leaf size laws agree exactly", paths_leaves_distributions),
    check!("expectation-split", "E size = 2 E old leaves + E other nodes", expectation_split),
    check!("totals-consistency", "expected totals equal census averages", totals_consistency),
];

pub fn find_check(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

impl Check {
    pub fn run(&self, cx: &Context) -> CheckResult {
        let start = Instant::now();
        let out = (self.run)(cx);
        CheckResult {
            name: self.name,
            passed: out.is_ok(),
            detail: out.err().unwrap_or_default(),
            millis: start.elapsed().as_millis(),
        }
    }
}

/// Runs every check in order.
pub fn run_all(limits: Limits, exec: Exec) -> Vec<CheckResult> {
    let cx = Context::new(limits, exec);
    CHECKS.iter().map(|c| c.run(&cx)).collect()
}
