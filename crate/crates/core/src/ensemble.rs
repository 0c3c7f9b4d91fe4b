//! Exhaustive enumeration and uniform sampling of plane trees.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::tree::PlaneTree;

pub const DEFAULT_CAP: usize = 15;

/// Samples drawn from one generator stream in `sample_map`.
pub const SHARD_SIZE: usize = 4096;

/// All trees of one size in lexicographic order of their canonical strings.
///
/// Works on the Dyck word inside the root's parentheses; '(' sorts before ')'
/// so the first word is the deepest path and the last is the star.
pub struct TreeEnumerator {
    word: Vec<bool>,
    started: bool,
    done: bool,
}

impl TreeEnumerator {
    fn new(n: usize) -> Self {
        let m = n - 1;
        let mut word = vec![true; m];
        word.extend(std::iter::repeat_n(false, m));
        TreeEnumerator { word, started: false, done: false }
    }

    /// Advances to the next Dyck word; false when exhausted.
    fn advance(&mut self) -> bool {
        let len = self.word.len();
        let (mut ups, mut downs) = (0usize, 0usize);
        for i in (0..len).rev() {
            if self.word[i] {
                ups += 1;
                // height before position i is downs - ups + 1 counting this up
                if downs >= ups + 1 {
                    self.word[i] = false;
                    for (j, slot) in self.word[i + 1..].iter_mut().enumerate() {
                        *slot = j < ups;
                    }
                    return true;
                }
            } else {
                downs += 1;
            }
        }
        false
    }
}

impl Iterator for TreeEnumerator {
    type Item = PlaneTree;

    fn next(&mut self) -> Option<PlaneTree> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(PlaneTree::from_dyck(&self.word))
    }
}

pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    enumerate_trees_capped(n, DEFAULT_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<TreeEnumerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(TreeEnumerator::new(n))
}

/// Seeded generator; identical seeds give identical streams.
#[derive(Clone, Debug)]
pub struct RandomState {
    rng: ChaCha8Rng,
}

impl RandomState {
    pub fn new(seed: u64) -> Self {
        RandomState { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream `stream` of the generator seeded with `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomState { rng }
    }
}

/// Uniform tree of size n by the cycle lemma: shuffle n-1 up steps and n
/// down steps, rotate to start just after the first minimum of the prefix
/// sums, drop the final down step.
pub fn sample_tree(n: usize, state: &mut RandomState) -> PlaneTree {
    assert!(n >= 1, "tree size must be at least 1");
    if n == 1 {
        return PlaneTree::single();
    }
    let mut steps: Vec<bool> = Vec::with_capacity(2 * n - 1);
    steps.extend(std::iter::repeat_n(true, n - 1));
    steps.extend(std::iter::repeat_n(false, n));
    steps.shuffle(&mut state.rng);
    let (mut h, mut min, mut at) = (0i64, 0i64, 0usize);
    for (i, &s) in steps.iter().enumerate() {
        h += if s { 1 } else { -1 };
        if h < min {
            min = h;
            at = i + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(at % len);
    steps.pop();
    PlaneTree::from_dyck(&steps)
}

/// Draws `count` trees and maps each through `f`, in a canonical order that
/// does not depend on the execution strategy: sample i comes from stream
/// i / SHARD_SIZE.
pub fn sample_map<R, F>(n: usize, count: usize, seed: u64, exec: Exec, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(PlaneTree) -> R + Sync + Send,
{
    let shards = count.div_ceil(SHARD_SIZE);
    let per_shard = exec.map_range(0..shards, |s| {
        let mut st = RandomState::with_stream(seed, s as u64);
        let take = SHARD_SIZE.min(count - s * SHARD_SIZE);
        (0..take).map(|_| f(sample_tree(n, &mut st))).collect::<Vec<R>>()
    });
    per_shard.into_iter().flatten().collect()
}
