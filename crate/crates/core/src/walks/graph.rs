use std::collections::BTreeMap;

use serde::Serialize;

use super::dyck::DyckPath;
use super::walk::Walk;

pub(crate) fn pair(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Marked/non-marked flags of every step together with the induced height profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepLabeling {
    /// `marked[t - 1]` for steps `t = 1..=2s`.
    pub marked: Vec<bool>,
    /// Height after each time `0..=2s` (marked = up, non-marked = down).
    pub heights: Vec<usize>,
    /// Present only for even walks.
    pub dyck: Option<DyckPath>,
    pub is_even: bool,
}

impl StepLabeling {
    pub fn is_marked(&self, t: usize) -> bool {
        self.marked[t - 1]
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// Steps `t` that are marked, in increasing order.
    pub fn marked_times(&self) -> Vec<usize> {
        (1..=self.marked.len()).filter(|&t| self.marked[t - 1]).collect()
    }

    /// Marked instant `τ` (1-based) of the marked time `t`, or `None` if `t` is not marked.
    /// Time `0` maps to instant `0`.
    pub fn instant_of(&self, t: usize) -> Option<usize> {
        if t == 0 {
            return Some(0);
        }
        if !self.marked[t - 1] {
            return None;
        }
        Some(self.marked[..t].iter().filter(|&&m| m).count())
    }

    /// `θ*`: maximal height of the profile.
    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }
}

/// A step is marked when its unordered pair has odd multiplicity right after it.
pub fn label_steps(walk: &Walk) -> StepLabeling {
    let steps = walk.len_steps();
    let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut marked = Vec::with_capacity(steps);
    let mut heights = Vec::with_capacity(steps + 1);
    let mut h = 0usize;
    heights.push(0);
    for t in 1..=steps {
        let (a, b) = walk.step(t);
        let c = counts.entry(pair(a, b)).or_insert(0);
        *c += 1;
        let m = *c % 2 == 1;
        marked.push(m);
        // a non-marked step always closes an earlier marked one, so h > 0 here
        h = if m { h + 1 } else { h - 1 };
        heights.push(h);
    }
    let is_even = !walk.has_loops() && counts.values().all(|c| c % 2 == 0);
    let dyck = if is_even {
        DyckPath::from_ups(marked.iter().copied()).ok()
    } else {
        None
    };
    StepLabeling {
        marked,
        heights,
        dyck,
        is_even,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedEdge {
    pub tail: u32,
    pub head: u32,
    pub time: usize,
}

/// Multigraph of a walk: pair multiplicities, marked edges and marked arrivals per vertex.
#[derive(Clone, Debug)]
pub struct WalkGraph {
    pub vertex_count: usize,
    pub pair_multiplicity: BTreeMap<(u32, u32), usize>,
    pub marked_edges: Vec<MarkedEdge>,
    /// Marked arrival times per letter (`arrivals[letter - 1]`). The root carries
    /// its creation instant `0` as its first arrival.
    pub arrivals: Vec<Vec<usize>>,
    pub is_even: bool,
}

impl WalkGraph {
    /// Self-intersection degree `κ(β)`: number of marked arrivals, counting the root's creation.
    pub fn kappa(&self, letter: u32) -> usize {
        self.arrivals[letter as usize - 1].len()
    }

    /// Marked edges entering `letter`, i.e. arrivals at positive times.
    pub fn arrival_edges(&self, letter: u32) -> &[usize] {
        let a = &self.arrivals[letter as usize - 1];
        if letter == 1 {
            &a[1..]
        } else {
            a
        }
    }

    /// Number of marked edges leaving `letter`.
    pub fn exit_degree(&self, letter: u32) -> usize {
        self.marked_edges.iter().filter(|e| e.tail == letter).count()
    }

    /// `Σ_β (κ(β) - 1)`, which equals `s - |V_g| + 1`.
    pub fn sigma(&self) -> usize {
        self.arrivals.iter().map(|a| a.len() - 1).sum()
    }
}

pub fn walk_graph(walk: &Walk) -> WalkGraph {
    let labels = label_steps(walk);
    let vertex_count = walk.vertex_count();
    let mut pair_multiplicity = BTreeMap::new();
    let mut marked_edges = Vec::new();
    let mut arrivals = vec![Vec::new(); vertex_count];
    arrivals[0].push(0);
    for t in 1..=walk.len_steps() {
        let (a, b) = walk.step(t);
        *pair_multiplicity.entry(pair(a, b)).or_insert(0) += 1;
        if labels.is_marked(t) {
            marked_edges.push(MarkedEdge { tail: a, head: b, time: t });
            arrivals[b as usize - 1].push(t);
        }
    }
    WalkGraph {
        vertex_count,
        pair_multiplicity,
        marked_edges,
        arrivals,
        is_even: labels.is_even,
    }
}

/// Largest number of marked edges leaving one vertex, and the first letter attaining it.
pub fn max_exit_degree(walk: &Walk) -> (u32, usize) {
    let graph = walk_graph(walk);
    let mut best = (1u32, 0usize);
    for letter in 1..=graph.vertex_count as u32 {
        let d = graph.exit_degree(letter);
        if d > best.1 {
            best = (letter, d);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Walk {
        Walk::parse(s).unwrap()
    }

    const W16: &str = "1,2,3,4,3,5,2,3,4,3,2,3,2,5,3,2,1";

    #[test]
    fn reference_walk_labels() {
        let l = label_steps(&w(W16));
        assert!(l.is_even);
        assert_eq!(l.marked_times(), vec![1, 2, 3, 5, 6, 8, 10, 12]);
        assert_eq!(l.max_height(), 4);
        assert_eq!(l.dyck.as_ref().unwrap().height(), 4);
        assert_eq!(l.instant_of(6), Some(5));
        assert_eq!(l.instant_of(7), None);
    }

    #[test]
    fn small_labelings() {
        let l = label_steps(&w("1,2,1"));
        assert_eq!(l.marked, vec![true, false]);
        let l = label_steps(&w("1,2,1,2,1"));
        assert_eq!(l.marked_times(), vec![1, 3]);
        assert_eq!(l.dyck.unwrap().to_string(), "+-+-");
    }

    #[test]
    fn odd_walk_is_flagged() {
        let l = label_steps(&w("1,2,3,4,1"));
        assert!(!l.is_even);
        assert!(l.dyck.is_none());
        assert_ne!(l.marked_count(), 1);
    }

    #[test]
    fn reference_walk_graph() {
        let g = walk_graph(&w(W16));
        assert_eq!(g.kappa(2), 4);
        assert_eq!(g.arrivals[1], vec![1, 6, 10, 12]);
        assert_eq!(g.kappa(4), 2);
        assert_eq!(g.arrivals[3], vec![3, 8]);
        assert_eq!(g.kappa(3), 1);
        assert_eq!(g.kappa(5), 1);
        assert_eq!(g.pair_multiplicity.values().sum::<usize>(), 16);
        assert_eq!(g.sigma(), 8 - 5 + 1);
    }

    #[test]
    fn small_graphs() {
        let g = walk_graph(&w("1,2,1"));
        assert_eq!(g.kappa(2), 1);
        assert_eq!(g.pair_multiplicity[&(1, 2)], 2);
        assert!(g.is_even);
        let g = walk_graph(&w("1,2,3,2,1"));
        assert_eq!((g.kappa(2), g.kappa(3)), (1, 1));
        assert_eq!(g.pair_multiplicity[&(1, 2)], 2);
        assert_eq!(g.pair_multiplicity[&(2, 3)], 2);
    }

    #[test]
    fn exit_degrees() {
        assert_eq!(max_exit_degree(&w(W16)), (3, 5));
        assert_eq!(max_exit_degree(&w("1,2,1")), (1, 1));
        assert_eq!(max_exit_degree(&w("1,2,1,3,1,4,1,5,1")), (1, 4));
    }
}
