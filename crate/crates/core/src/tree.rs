//! Rooted plane trees.
//!
//! A tree is stored as the preorder sequence of out-degrees. Every subtree is
//! a contiguous slice of that sequence, and the slice is itself a valid
//! encoding, so borrowing a subtree costs nothing.

use std::fmt;

use serde::Serialize;

use crate::error::ParseError;

/// An ordered rooted tree. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    degrees: Vec<u32>,
}

/// Borrowed view of a (sub)tree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeView<'a> {
    degrees: &'a [u32],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeMetrics {
    pub size: usize,
    pub leaf_count: usize,
    pub inner_count: usize,
    /// Leaves that are the leftmost child of their parent.
    pub old_leaf_count: usize,
    /// Nodes that are neither old leaves nor parents of old leaves.
    pub neither_count: usize,
    /// Number of levels; a single node has height 1.
    pub node_height: usize,
    pub is_path: bool,
}

/// Statistic of a (reduced) tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Size,
    InnerI,
    LeavesL,
    OldLeafCount,
    NeitherCount,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::Size, Variant::InnerI, Variant::LeavesL, Variant::OldLeafCount, Variant::NeitherCount];

    pub fn of(self, m: &TreeMetrics) -> usize {
        match self {
            Variant::Size => m.size,
            Variant::InnerI => m.inner_count,
            Variant::LeavesL => m.leaf_count,
            Variant::OldLeafCount => m.old_leaf_count,
            Variant::NeitherCount => m.neither_count,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Size => "size",
            Variant::InnerI => "inner",
            Variant::LeavesL => "leaves",
            Variant::OldLeafCount => "old-leaves",
            Variant::NeitherCount => "neither",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant '{s}' (expected size, inner, leaves, old-leaves or neither)"))
    }
}

impl PlaneTree {
    pub fn single() -> Self {
        PlaneTree { degrees: vec![0] }
    }

    /// A path with `n` nodes.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        let mut degrees = vec![1; n];
        degrees[n - 1] = 0;
        PlaneTree { degrees }
    }

    pub fn from_children(children: Vec<PlaneTree>) -> Self {
        let mut degrees = Vec::with_capacity(1 + children.iter().map(|c| c.size()).sum::<usize>());
        degrees.push(children.len() as u32);
        for c in &children {
            degrees.extend_from_slice(&c.degrees);
        }
        PlaneTree { degrees }
    }

    /// Builds a tree from a preorder degree sequence, checking validity.
    pub fn from_degrees(degrees: Vec<u32>) -> Option<Self> {
        let mut need: usize = 1;
        for (i, &d) in degrees.iter().enumerate() {
            if need == 0 {
                return None;
            }
            need = need - 1 + d as usize;
            if need == 0 && i + 1 != degrees.len() {
                return None;
            }
        }
        if need != 0 || degrees.is_empty() {
            return None;
        }
        Some(PlaneTree { degrees })
    }

    pub(crate) fn from_degrees_unchecked(degrees: Vec<u32>) -> Self {
        debug_assert!(PlaneTree::from_degrees(degrees.clone()).is_some());
        PlaneTree { degrees }
    }

    /// Decodes a Dyck word (true = up) of semilength n - 1 into a tree of size n.
    pub fn from_dyck(word: &[bool]) -> Self {
        let mut degrees = Vec::with_capacity(word.len() / 2 + 1);
        degrees.push(0u32);
        let mut stack: Vec<usize> = vec![0];
        for &up in word {
            if up {
                let parent = *stack.last().expect("unbalanced word");
                degrees[parent] += 1;
                stack.push(degrees.len());
                degrees.push(0);
            } else {
                stack.pop();
            }
        }
        PlaneTree { degrees }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn view(&self) -> TreeView<'_> {
        TreeView { degrees: &self.degrees }
    }

    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn children(&self) -> Children<'_> {
        self.view().children()
    }

    pub fn is_path(&self) -> bool {
        self.degrees.iter().all(|&d| d <= 1)
    }

    pub fn metrics(&self) -> TreeMetrics {
        tree_metrics(self)
    }
}

impl<'a> TreeView<'a> {
    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> usize {
        self.degrees[0] as usize
    }

    pub fn children(&self) -> Children<'a> {
        Children { rest: &self.degrees[1..], left: self.degrees[0] }
    }

    pub fn to_tree(&self) -> PlaneTree {
        PlaneTree { degrees: self.degrees.to_vec() }
    }
}

pub struct Children<'a> {
    rest: &'a [u32],
    left: u32,
}

impl<'a> Iterator for Children<'a> {
    type Item = TreeView<'a>;

    fn next(&mut self) -> Option<TreeView<'a>> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        let len = subtree_len(self.rest);
        let (head, tail) = self.rest.split_at(len);
        self.rest = tail;
        Some(TreeView { degrees: head })
    }
}

/// Length of the subtree encoded at the start of `degrees`.
fn subtree_len(degrees: &[u32]) -> usize {
    let mut need = 1usize;
    for (i, &d) in degrees.iter().enumerate() {
        need = need - 1 + d as usize;
        if need == 0 {
            return i + 1;
        }
    }
    unreachable!("truncated degree sequence")
}

/// Parses the canonical parentheses form.
pub fn parse_tree(text: &str) -> Result<PlaneTree, ParseError> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    let mut degrees: Vec<u32> = Vec::with_capacity(bytes.len() / 2);
    let mut stack: Vec<usize> = Vec::new();
    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => {
                if stack.is_empty() && !degrees.is_empty() {
                    return Err(ParseError::new(pos, "trailing characters after the root"));
                }
                if let Some(&p) = stack.last() {
                    degrees[p] += 1;
                }
                stack.push(degrees.len());
                degrees.push(0);
            }
            b')' => {
                if stack.pop().is_none() {
                    return Err(ParseError::new(pos, "unmatched ')'"));
                }
            }
            _ => return Err(ParseError::new(pos, "unexpected character")),
        }
    }
    if !stack.is_empty() {
        return Err(ParseError::new(bytes.len(), "unexpected end of input"));
    }
    Ok(PlaneTree { degrees })
}

pub fn serialize_tree(tree: &PlaneTree) -> String {
    let mut out = String::with_capacity(2 * tree.size());
    let mut open: Vec<u32> = Vec::new();
    for &d in &tree.degrees {
        out.push('(');
        if d == 0 {
            out.push(')');
            while let Some(top) = open.last_mut() {
                *top -= 1;
                if *top == 0 {
                    open.pop();
                    out.push(')');
                } else {
                    break;
                }
            }
        } else {
            open.push(d);
        }
    }
    out
}

/// All structural metrics in one pass.
pub fn tree_metrics(tree: &PlaneTree) -> TreeMetrics {
    let deg = &tree.degrees;
    let size = deg.len();
    let mut leaf_count = 0;
    let mut old_leaf_count = 0;
    let mut parents_of_old = 0;
    let mut height = 0;
    let mut is_path = true;
    // remaining children per open ancestor
    let mut open: Vec<u32> = Vec::new();
    for i in 0..size {
        let d = deg[i];
        let depth = open.len() + 1;
        height = height.max(depth);
        if d > 1 {
            is_path = false;
        }
        if d == 0 {
            leaf_count += 1;
            // node i is a leftmost child iff its predecessor in preorder is its parent
            if i > 0 && deg[i - 1] > 0 {
                old_leaf_count += 1;
            }
        } else if deg[i + 1] == 0 {
            parents_of_old += 1;
        }
        if d == 0 {
            while let Some(top) = open.last_mut() {
                *top -= 1;
                if *top == 0 {
                    open.pop();
                } else {
                    break;
                }
            }
        } else {
            open.push(d);
        }
    }
    TreeMetrics {
        size,
        leaf_count,
        inner_count: size - leaf_count,
        old_leaf_count,
        neither_count: size - old_leaf_count - parents_of_old,
        node_height: height,
        is_path,
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_tree(self))
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneTree({})", serialize_tree(self))
    }
}

impl std::str::FromStr for PlaneTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_tree(s)
    }
}

impl Serialize for PlaneTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&serialize_tree(self))
    }
}

impl Serialize for Variant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_tree("()").unwrap().size(), 1);
        assert_eq!(parse_tree("(()())").unwrap().size(), 3);
        let err = parse_tree("(()").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(parse_tree("").is_err());
        assert!(parse_tree("()()").is_err());
        assert!(parse_tree("())").is_err());
        assert!(parse_tree("(x)").is_err());
    }

    #[test]
    fn round_trip() {
        let s = "(((()))(()())(()))";
        assert_eq!(serialize_tree(&parse_tree(s).unwrap()), s);
        assert_eq!(serialize_tree(&PlaneTree::single()), "()");
        let cherry = PlaneTree::from_children(vec![PlaneTree::single(), PlaneTree::single()]);
        assert_eq!(cherry.to_string(), "(()())");
    }

    #[test]
    fn metrics_examples() {
        let m = tree_metrics(&PlaneTree::single());
        assert_eq!((m.size, m.leaf_count, m.old_leaf_count, m.node_height, m.is_path), (1, 1, 0, 1, true));
        let m = tree_metrics(&parse_tree("(((()))(()())(()))").unwrap());
        assert_eq!((m.size, m.leaf_count, m.inner_count, m.node_height), (9, 4, 5, 4));
        assert_eq!(tree_metrics(&parse_tree("(()())").unwrap()).old_leaf_count, 1);
    }

    #[test]
    fn children_views() {
        let t = parse_tree("(((()))(()())(()))").unwrap();
        let kids: Vec<String> = t.children().map(|c| c.to_tree().to_string()).collect();
        assert_eq!(kids, ["((()))", "(()())", "(())"]);
    }

    #[test]
    fn dyck_decoding() {
        assert_eq!(PlaneTree::from_dyck(&[]).to_string(), "()");
        assert_eq!(PlaneTree::from_dyck(&[true, false, true, false]).to_string(), "(()())");
        assert_eq!(PlaneTree::from_dyck(&[true, true, false, false]).to_string(), "((()))");
    }
}
