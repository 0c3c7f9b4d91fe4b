//! The four fringe reductions.
//!
//! Every rule removes a set of whole subtrees chosen on the input tree, then
//! the survivors keep their relative order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::tree::{tree_metrics, PlaneTree, TreeMetrics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionMode {
    Leaves,
    Paths,
    OldLeaves,
    OldPaths,
}

impl ReductionMode {
    pub const ALL: [ReductionMode; 4] =
        [ReductionMode::Leaves, ReductionMode::Paths, ReductionMode::OldLeaves, ReductionMode::OldPaths];

    pub fn name(self) -> &'static str {
        match self {
            ReductionMode::Leaves => "leaves",
            ReductionMode::Paths => "paths",
            ReductionMode::OldLeaves => "old-leaves",
            ReductionMode::OldPaths => "old-paths",
        }
    }

    /// Old-leaf based modes keep the single node as a fixpoint.
    pub fn always_survives(self) -> bool {
        matches!(self, ReductionMode::OldLeaves | ReductionMode::OldPaths)
    }
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ReductionMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode '{s}' (expected leaves, paths, old-leaves or old-paths)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{mode} reduction is not defined for this tree")]
pub struct NotReducible {
    pub mode: ReductionMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionOutcome {
    pub survived: bool,
    pub rounds_applied: usize,
    pub final_size: usize,
    pub final_tree: Option<PlaneTree>,
    /// Metrics of the tree after j rounds, j = 0..=rounds_applied.
    pub per_round: Vec<TreeMetrics>,
}

/// `path_below[i]` is true when the subtree rooted at node i is a path.
fn path_subtrees(deg: &[u32]) -> Vec<bool> {
    let n = deg.len();
    let mut out = vec![false; n];
    for i in (0..n).rev() {
        out[i] = match deg[i] {
            0 => true,
            1 => out[i + 1],
            _ => false,
        };
    }
    out
}

/// Removes the subtrees rooted at flagged nodes. The flagged set must be
/// closed under taking descendants and must not contain the root.
fn prune(deg: &[u32], flagged: &[bool]) -> Vec<u32> {
    let n = deg.len();
    let mut lost = vec![0u32; n];
    let mut stack: Vec<(usize, u32)> = Vec::new();
    for i in 0..n {
        if let Some(top) = stack.last_mut() {
            let parent = top.0;
            top.1 -= 1;
            if top.1 == 0 {
                stack.pop();
            }
            if flagged[i] {
                lost[parent] += 1;
            }
        }
        if deg[i] > 0 {
            stack.push((i, deg[i]));
        }
    }
    (0..n).filter(|&i| !flagged[i]).map(|i| deg[i] - lost[i]).collect()
}

fn removal_flags(deg: &[u32], mode: ReductionMode) -> Vec<bool> {
    let n = deg.len();
    let leftmost = |i: usize| i > 0 && deg[i - 1] > 0;
    match mode {
        ReductionMode::Leaves => (0..n).map(|i| i > 0 && deg[i] == 0).collect(),
        ReductionMode::OldLeaves => (0..n).map(|i| deg[i] == 0 && leftmost(i)).collect(),
        ReductionMode::Paths => {
            let p = path_subtrees(deg);
            (0..n).map(|i| i > 0 && p[i]).collect()
        }
        ReductionMode::OldPaths => {
            let p = path_subtrees(deg);
            (0..n).map(|i| leftmost(i) && p[i]).collect()
        }
    }
}

/// One simultaneous round of the given reduction.
pub fn reduce_once(tree: &PlaneTree, mode: ReductionMode) -> Result<PlaneTree, NotReducible> {
    match mode {
        ReductionMode::Leaves if tree.size() == 1 => return Err(NotReducible { mode }),
        ReductionMode::Paths if tree.is_path() => return Err(NotReducible { mode }),
        _ => {}
    }
    let deg = tree.degrees();
    let flags = removal_flags(deg, mode);
    Ok(PlaneTree::from_degrees_unchecked(prune(deg, &flags)))
}

pub fn reduce_iter(tree: &PlaneTree, mode: ReductionMode, rounds: usize) -> ReductionOutcome {
    let mut current = tree.clone();
    let mut per_round = vec![tree_metrics(&current)];
    for _ in 0..rounds {
        match reduce_once(&current, mode) {
            Ok(next) => {
                per_round.push(tree_metrics(&next));
                current = next;
            }
            Err(_) => {
                return ReductionOutcome {
                    survived: false,
                    rounds_applied: per_round.len() - 1,
                    final_size: 0,
                    final_tree: None,
                    per_round,
                };
            }
        }
    }
    ReductionOutcome {
        survived: true,
        rounds_applied: rounds,
        final_size: current.size(),
        final_tree: Some(current),
        per_round,
    }
}

/// Metrics after r rounds for every r in 0..=max_rounds; `None` once the
/// tree no longer survives.
pub fn reduction_trace(tree: &PlaneTree, mode: ReductionMode, max_rounds: usize) -> Vec<Option<TreeMetrics>> {
    let mut out = Vec::with_capacity(max_rounds + 1);
    let mut current = Some(tree.clone());
    for r in 0..=max_rounds {
        match current.take() {
            Some(t) => {
                out.push(Some(tree_metrics(&t)));
                if r < max_rounds {
                    current = reduce_once(&t, mode).ok();
                }
            }
            None => out.push(None),
        }
    }
    out
}

/// Size after r rounds, 0 when the tree does not survive.
pub fn final_size(tree: &PlaneTree, mode: ReductionMode, rounds: usize) -> usize {
    let mut current = tree.clone();
    for _ in 0..rounds {
        match reduce_once(&current, mode) {
            Ok(next) => current = next,
            Err(_) => return 0,
        }
    }
    current.size()
}

/// Sum of leaf counts over all Paths rounds, the final path included.
pub fn total_paths(tree: &PlaneTree) -> usize {
    let mut current = tree.clone();
    let mut total = 0;
    loop {
        total += current.degrees().iter().filter(|&&d| d == 0).count();
        match reduce_once(&current, ReductionMode::Paths) {
            Ok(next) => current = next,
            Err(_) => return total,
        }
    }
}

/// Sum of old-leaf counts over all OldPaths rounds until the single node.
pub fn total_old_path_segments(tree: &PlaneTree) -> usize {
    let mut current = tree.clone();
    let mut total = 0;
    while current.size() > 1 {
        total += tree_metrics(&current).old_leaf_count;
        current = reduce_once(&current, ReductionMode::OldPaths).expect("old paths is total");
    }
    total
}

impl Serialize for ReductionMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn once(s: &str, mode: ReductionMode) -> Result<String, NotReducible> {
        reduce_once(&parse_tree(s).unwrap(), mode).map(|t| t.to_string())
    }

    #[test]
    fn figure_tree() {
        let s = "(((()))(()())(()))";
        assert_eq!(once(s, ReductionMode::Leaves).unwrap(), "((())()())");
        assert_eq!(once(s, ReductionMode::Paths).unwrap(), "(())");
        assert_eq!(once(s, ReductionMode::OldPaths).unwrap(), "((())())");
        assert_eq!(once("()", ReductionMode::OldLeaves).unwrap(), "()");
        assert!(once("()", ReductionMode::Leaves).is_err());
        assert!(once("((()))", ReductionMode::Paths).is_err());
    }

    #[test]
    fn iterated() {
        let cherry = parse_tree("(()())").unwrap();
        let o = reduce_iter(&cherry, ReductionMode::Leaves, 1);
        assert!(o.survived && o.final_size == 1);
        let o = reduce_iter(&cherry, ReductionMode::Leaves, 2);
        assert!(!o.survived && o.final_size == 0 && o.rounds_applied == 1);
        let o = reduce_iter(&parse_tree("((()))").unwrap(), ReductionMode::OldPaths, 1);
        assert!(o.survived && o.final_size == 1);
        let o = reduce_iter(&cherry, ReductionMode::Paths, 0);
        assert_eq!(o.final_size, 3);
    }

    #[test]
    fn totals() {
        for (s, p, q) in [("()", 1, 0), ("((()))", 1, 1), ("(()())", 3, 2)] {
            let t = parse_tree(s).unwrap();
            assert_eq!(total_paths(&t), p, "{s}");
            assert_eq!(total_old_path_segments(&t), q, "{s}");
        }
    }

    #[test]
    fn trace_matches_iter() {
        let t = parse_tree("(((()))(()())(()))").unwrap();
        for mode in ReductionMode::ALL {
            let trace = reduction_trace(&t, mode, 5);
            for (r, m) in trace.iter().enumerate() {
                assert_eq!(m.as_ref().map_or(0, |m| m.size), final_size(&t, mode, r));
            }
        }
    }
}
