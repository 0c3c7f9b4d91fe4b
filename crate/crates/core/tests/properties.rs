use proptest::prelude::*;

use treecut::ensemble::{sample_tree, RandomState};
use treecut::reduction::{reduce_iter, reduce_once, total_old_path_segments, total_paths};
use treecut::{parse_tree, serialize_tree, tree_metrics, PlaneTree, ReductionMode};

fn arb_tree() -> impl Strategy<Value = PlaneTree> {
    (1usize..60, any::<u64>()).prop_map(|(n, seed)| sample_tree(n, &mut RandomState::new(seed)))
}

fn arb_mode() -> impl Strategy<Value = ReductionMode> {
    prop::sample::select(ReductionMode::ALL.to_vec())
}

proptest! {
    #[test]
    fn round_trip(t in arb_tree()) {
        let s = serialize_tree(&t);
        prop_assert_eq!(s.len(), 2 * t.size());
        prop_assert_eq!(parse_tree(&s).unwrap(), t);
    }

    #[test]
    fn metrics_are_consistent(t in arb_tree()) {
        let m = tree_metrics(&t);
        prop_assert_eq!(m.size, m.leaf_count + m.inner_count);
        prop_assert!(m.old_leaf_count <= m.leaf_count);
        prop_assert_eq!(m.size, 2 * m.old_leaf_count + m.neither_count);
        prop_assert_eq!(m.is_path, m.node_height == m.size);
    }

    #[test]
    fn reductions_shrink(t in arb_tree(), mode in arb_mode()) {
        if let Ok(next) = reduce_once(&t, mode) {
            prop_assert!(next.size() <= t.size());
            if t.size() > 1 {
                prop_assert!(next.size() < t.size());
            }
        } else {
            prop_assert!(matches!(mode, ReductionMode::Leaves | ReductionMode::Paths));
        }
    }

    #[test]
    fn leaves_round_removes_all_leaves(t in arb_tree()) {
        if let Ok(next) = reduce_once(&t, ReductionMode::Leaves) {
            let m = tree_metrics(&t);
            prop_assert_eq!(next.size(), m.inner_count);
            prop_assert_eq!(tree_metrics(&next).node_height + 1, m.node_height);
        }
    }

    #[test]
    fn old_leaf_modes_always_survive(t in arb_tree(), r in 0usize..8) {
        for mode in [ReductionMode::OldLeaves, ReductionMode::OldPaths] {
            let out = reduce_iter(&t, mode, r);
            prop_assert!(out.survived);
            prop_assert!(out.final_size >= 1);
        }
    }

    #[test]
    fn old_path_split_holds_every_round(t in arb_tree(), r in 0usize..6) {
        let out = reduce_iter(&t, ReductionMode::OldPaths, r);
        for m in &out.per_round {
            prop_assert_eq!(m.size, 2 * m.old_leaf_count + m.neither_count);
        }
    }

    #[test]
    fn paths_round_needs_a_branch(t in arb_tree()) {
        let p = reduce_iter(&t, ReductionMode::Paths, 1);
        prop_assert_eq!(p.survived, !t.is_path());
    }

    #[test]
    fn totals_are_bounded(t in arb_tree()) {
        let m = tree_metrics(&t);
        prop_assert!(total_paths(&t) >= m.leaf_count);
        prop_assert!(total_paths(&t) <= t.size());
        prop_assert!(total_old_path_segments(&t) >= m.old_leaf_count);
        prop_assert!(total_old_path_segments(&t) < t.size().max(1));
    }

    #[test]
    fn samples_are_valid(n in 1usize..300, seed in any::<u64>()) {
        let t = sample_tree(n, &mut RandomState::new(seed));
        prop_assert_eq!(t.size(), n);
        prop_assert!(PlaneTree::from_degrees(t.degrees().to_vec()).is_some());
    }
}
