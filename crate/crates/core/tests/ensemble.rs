use std::collections::HashMap;

use treecut::ensemble::{sample_map, sample_tree, RandomState, SHARD_SIZE};
use treecut::exec::Exec;
use treecut::reduction::final_size;
use treecut::ReductionMode;

#[test]
fn single_node_is_the_only_sample() {
    let mut st = RandomState::new(1);
    for _ in 0..100 {
        assert_eq!(sample_tree(1, &mut st).to_string(), "()");
    }
}

#[test]
fn size_three_is_balanced() {
    let samples = 100_000;
    let shapes = sample_map(3, samples, 5, Exec::default(), |t| t.to_string());
    let mut counts: HashMap<String, usize> = HashMap::new();
    for s in shapes {
        *counts.entry(s).or_default() += 1;
    }
    assert_eq!(counts.len(), 2);
    for key in ["((()))", "(()())"] {
        let f = counts[key] as f64 / samples as f64;
        assert!((0.49..=0.51).contains(&f), "{key}: {f}");
    }
}

#[test]
fn samples_have_requested_size() {
    let mut st = RandomState::new(9);
    for n in [2, 3, 10, 257, 1000] {
        assert_eq!(sample_tree(n, &mut st).size(), n);
    }
}

#[test]
fn sample_map_does_not_depend_on_strategy() {
    let count = 2 * SHARD_SIZE + 17;
    let f = |t: treecut::PlaneTree| final_size(&t, ReductionMode::OldPaths, 2);
    let a = sample_map(40, count, 77, Exec::Sequential, f);
    let b = sample_map(40, count, 77, Exec::Parallel, f);
    assert_eq!(a.len(), count);
    assert_eq!(a, b);
    assert_ne!(a, sample_map(40, count, 78, Exec::Sequential, f));
}

#[test]
fn streams_differ() {
    let mut a = RandomState::with_stream(3, 0);
    let mut b = RandomState::with_stream(3, 1);
    let xs: Vec<String> = (0..20).map(|_| sample_tree(12, &mut a).to_string()).collect();
    let ys: Vec<String> = (0..20).map(|_| sample_tree(12, &mut b).to_string()).collect();
    assert_ne!(xs, ys);
}
