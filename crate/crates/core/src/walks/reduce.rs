//! Strong and weak reductions of even walks.
//!
//! A reduction deletes a marked step that is immediately undone by the next
//! (non-marked) step. Steps keep their original labels and their original
//! marked/non-marked status throughout.

use std::fmt;

use serde::Serialize;

use super::graph::{label_steps, max_exit_degree};
use super::walk::Walk;

/// What is left of a walk after reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedWalk {
    /// Original labels of the surviving steps, increasing.
    pub kept: Vec<usize>,
    /// Letters visited by the surviving steps, starting with the root. A lone
    /// root means the walk reduced to the empty walk.
    pub letters: Vec<u32>,
    /// Number of removed step pairs.
    pub removals: usize,
}

impl ReducedWalk {
    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    /// Half-length of the reduced walk.
    pub fn half_len(&self) -> usize {
        self.kept.len() / 2
    }

    pub fn contains(&self, t: usize) -> bool {
        self.kept.binary_search(&t).is_ok()
    }

    /// The reduced walk as a walk in its own right (letters keep their original names,
    /// so this is not canonical in general). `None` for the empty walk.
    pub fn as_letters_walk(&self) -> Option<Walk> {
        if self.is_empty() {
            None
        } else {
            Some(Walk::from_letters_unchecked(self.letters.clone()))
        }
    }
}

impl fmt::Display for ReducedWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn reduce(walk: &Walk, spare: Option<u32>) -> ReducedWalk {
    let labels = label_steps(walk);
    let mut kept: Vec<usize> = (1..=walk.len_steps()).collect();
    let mut removals = 0;
    'outer: loop {
        for i in 0..kept.len().saturating_sub(1) {
            let (a, b) = (kept[i], kept[i + 1]);
            if !labels.is_marked(a) || labels.is_marked(b) {
                continue;
            }
            let (from, mid) = walk.step(a);
            if walk.step(b).1 != from || spare == Some(mid) {
                continue;
            }
            kept.drain(i..i + 2);
            removals += 1;
            continue 'outer;
        }
        break;
    }
    let mut letters = Vec::with_capacity(kept.len() + 1);
    letters.push(walk.at(0));
    letters.extend(kept.iter().map(|&t| walk.at(t)));
    ReducedWalk {
        kept,
        letters,
        removals,
    }
}

/// Applies the strong reduction until no removable pair is left.
pub fn strong_reduce(walk: &Walk) -> ReducedWalk {
    reduce(walk, None)
}

/// Like [`strong_reduce`] but never removes a pair whose turning letter is the
/// vertex of maximal exit degree.
pub fn weak_reduce(walk: &Walk) -> ReducedWalk {
    let (beta, _) = max_exit_degree(walk);
    reduce(walk, Some(beta))
}
