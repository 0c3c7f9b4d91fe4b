use treecut::ensemble::{enumerate_trees, enumerate_trees_capped};
use treecut::reduction::{final_size, reduce_iter, reduce_once, total_old_path_segments, total_paths};
use treecut::{parse_tree, serialize_tree, tree_metrics, Error, PlaneTree, ReductionMode};

const FIG: &str = "(((()))(()())(()))";

fn t(s: &str) -> PlaneTree {
    parse_tree(s).unwrap()
}

#[test]
fn parse_small_trees() {
    assert_eq!(t("()").size(), 1);
    let cherry = t("(()())");
    assert_eq!(cherry.size(), 3);
    assert_eq!(cherry.children().count(), 2);
    assert!(cherry.children().all(|c| c.size() == 1));
}

#[test]
fn parse_errors_name_position() {
    let e = parse_tree("(()").unwrap_err();
    assert_eq!(e.position, 3);
    assert!(parse_tree("").is_err());
    assert_eq!(parse_tree("())").unwrap_err().position, 2);
    assert_eq!(parse_tree("()()").unwrap_err().position, 2);
    assert_eq!(parse_tree("(x)").unwrap_err().position, 1);
}

#[test]
fn serialize_round_trip() {
    assert_eq!(serialize_tree(&PlaneTree::single()), "()");
    let cherry = PlaneTree::from_children(vec![PlaneTree::single(), PlaneTree::single()]);
    assert_eq!(serialize_tree(&cherry), "(()())");
    assert_eq!(serialize_tree(&t(FIG)), FIG);
    assert_eq!(t(FIG).to_string(), FIG);
}

#[test]
fn metrics_examples() {
    let m = tree_metrics(&t("()"));
    assert_eq!((m.size, m.leaf_count, m.old_leaf_count, m.node_height, m.is_path), (1, 1, 0, 1, true));
    let m = tree_metrics(&t(FIG));
    assert_eq!((m.size, m.leaf_count, m.inner_count, m.node_height), (9, 4, 5, 4));
    assert!(!m.is_path);
    assert_eq!(tree_metrics(&t("(()())")).old_leaf_count, 1);
}

#[test]
fn neither_count_excludes_old_leaves_and_their_parents() {
    // root -> (leaf, path of 2): old leaves are the first leaf and the bottom of the path
    let m = tree_metrics(&t("(()(()))"));
    assert_eq!(m.old_leaf_count, 2);
    assert_eq!(m.neither_count, 0);
    assert_eq!(m.size, 2 * m.old_leaf_count + m.neither_count);
}

#[test]
fn reduction_examples() {
    let fig = t(FIG);
    assert_eq!(reduce_once(&fig, ReductionMode::Leaves).unwrap().to_string(), "((())()())");
    assert_eq!(reduce_once(&fig, ReductionMode::Paths).unwrap().to_string(), "(())");
    assert_eq!(reduce_once(&fig, ReductionMode::OldPaths).unwrap().to_string(), "((())())");
    assert_eq!(reduce_once(&t("()"), ReductionMode::OldLeaves).unwrap().to_string(), "()");
    assert!(reduce_once(&t("()"), ReductionMode::Leaves).is_err());
    assert!(reduce_once(&t("((()))"), ReductionMode::Paths).is_err());
}

#[test]
fn old_leaves_keep_later_siblings() {
    assert_eq!(reduce_once(&t("(()()())"), ReductionMode::OldLeaves).unwrap().to_string(), "(()())");
}

#[test]
fn iterated_reduction_examples() {
    let out = reduce_iter(&t("(()())"), ReductionMode::Leaves, 1);
    assert!(out.survived);
    assert_eq!(out.final_size, 1);
    let out = reduce_iter(&t("(()())"), ReductionMode::Leaves, 2);
    assert!(!out.survived);
    assert_eq!(out.final_size, 0);
    assert_eq!(out.rounds_applied, 1);
    assert!(out.final_tree.is_none());
    let out = reduce_iter(&t("((()))"), ReductionMode::OldPaths, 1);
    assert!(out.survived);
    assert_eq!(out.final_size, 1);
    let out = reduce_iter(&t(FIG), ReductionMode::Paths, 0);
    assert_eq!(out.final_tree.unwrap().to_string(), FIG);
    assert_eq!(out.per_round.len(), 1);
}

#[test]
fn final_size_agrees_with_reduce_iter() {
    for n in 1..=8 {
        for tree in enumerate_trees(n).unwrap() {
            for mode in ReductionMode::ALL {
                for r in 0..4 {
                    assert_eq!(final_size(&tree, mode, r), reduce_iter(&tree, mode, r).final_size);
                }
            }
        }
    }
}

#[test]
fn totals_examples() {
    assert_eq!(total_paths(&t("()")), 1);
    assert_eq!(total_paths(&t("((()))")), 1);
    assert_eq!(total_paths(&t("(()())")), 3);
    assert_eq!(total_old_path_segments(&t("()")), 0);
    assert_eq!(total_old_path_segments(&t("((()))")), 1);
    assert_eq!(total_old_path_segments(&t("(()())")), 2);
}

#[test]
fn enumeration_examples() {
    let one: Vec<String> = enumerate_trees(1).unwrap().map(|t| t.to_string()).collect();
    assert_eq!(one, ["()"]);
    assert_eq!(enumerate_trees(4).unwrap().count(), 5);
    assert_eq!(enumerate_trees(12).unwrap().count(), 58786);
    assert!(matches!(enumerate_trees(16), Err(Error::CapExceeded { n: 16, cap: 15 })));
    assert!(enumerate_trees(0).is_err());
    assert_eq!(enumerate_trees_capped(3, 3).unwrap().count(), 2);
}

#[test]
fn enumeration_is_sorted() {
    for n in 1..=9 {
        let words: Vec<String> = enumerate_trees(n).unwrap().map(|t| t.to_string()).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]), "n = {n}");
    }
}
