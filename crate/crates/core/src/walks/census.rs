//! Self-intersection census of an even walk.
//!
//! Vertices are classified by the marked edges entering them. For the root
//! this excludes its creation instant, so the root only enters the census when
//! the walk comes back to it along a marked step.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::graph::{pair, walk_graph, WalkGraph};
use super::walk::Walk;
use crate::error::{Error, Result};

/// Label of a repeated arrival, ordered by precedence: `Reverse > Repeat > Open`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrivalKind {
    Plain,
    /// (a) the vertex has an incident pair of odd multiplicity just before the arrival: `o`-edge.
    Open,
    /// (b) the arriving marked edge repeats an earlier marked edge: `p`-edge.
    Repeat,
    /// (c) the reversed edge was marked earlier: `q`-edge.
    Reverse,
}

impl ArrivalKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ArrivalKind::Plain => "plain",
            ArrivalKind::Open => "o",
            ArrivalKind::Repeat => "p",
            ArrivalKind::Reverse => "q",
        }
    }
}

/// All conditions checked for one arrival plus the label chosen by precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArrivalClass {
    pub time: usize,
    pub open: bool,
    pub repeat: bool,
    pub reverse: bool,
    pub kind: ArrivalKind,
}

fn classify_at(walk: &Walk, graph: &WalkGraph, vertex: u32, time: usize) -> ArrivalClass {
    let (from, to) = walk.step(time);
    debug_assert_eq!(to, vertex);
    let mut odd: BTreeSet<(u32, u32)> = BTreeSet::new();
    for t in 1..time {
        let (a, b) = walk.step(t);
        let key = pair(a, b);
        if !odd.remove(&key) {
            odd.insert(key);
        }
    }
    let open = odd.iter().any(|&(a, b)| a == vertex || b == vertex);
    let earlier = graph.marked_edges.iter().filter(|e| e.time < time);
    let (mut repeat, mut reverse) = (false, false);
    for e in earlier {
        repeat |= e.tail == from && e.head == vertex;
        reverse |= e.tail == vertex && e.head == from;
    }
    let kind = if reverse {
        ArrivalKind::Reverse
    } else if repeat {
        ArrivalKind::Repeat
    } else if open {
        ArrivalKind::Open
    } else {
        ArrivalKind::Plain
    };
    ArrivalClass {
        time,
        open,
        repeat,
        reverse,
        kind,
    }
}

/// Classifies the `arrival_index`-th marked edge entering `vertex` (1-based, so `2` is the first repeat).
pub fn classify_arrival(walk: &Walk, vertex: u32, arrival_index: usize) -> Result<ArrivalClass> {
    if vertex == 0 || vertex as usize > walk.vertex_count() {
        return Err(Error::Range(format!("no letter {vertex} in walk")));
    }
    let graph = walk_graph(walk);
    let arrivals = graph.arrival_edges(vertex);
    if arrival_index < 2 || arrival_index > arrivals.len() {
        return Err(Error::Range(format!(
            "arrival {arrival_index} requested at letter {vertex}, which has {} marked arrivals",
            arrivals.len()
        )));
    }
    Ok(classify_at(walk, &graph, vertex, arrivals[arrival_index - 1]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum VertexClass {
    /// Root never re-entered along a marked edge.
    Root,
    Mu1,
    Mu2Prime { second: ArrivalClass, extra: usize },
    Mu2Double,
    Mu3Prime { third: ArrivalClass, extra: usize },
    Mu3Double { extra: usize },
    Nu { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagramParams {
    pub s: usize,
    pub k0: usize,
    pub mu1: usize,
    pub r: usize,
    pub p: usize,
    pub q: usize,
    pub mu2_pp: usize,
    pub u2: usize,
    pub mu3_p: usize,
    pub mu3_pp: usize,
    pub u3: usize,
    /// `ν_k` for `k > k0`, zero entries omitted.
    pub nu_bar: BTreeMap<usize, usize>,
    /// `s - |V_g| + 1`, computed from the graph.
    pub sigma: usize,
}

impl DiagramParams {
    pub fn mu2_p(&self) -> usize {
        self.r + self.p + self.q
    }

    pub fn mu2(&self) -> usize {
        self.mu2_p() + self.mu2_pp
    }

    pub fn mu3(&self) -> usize {
        self.mu3_p + self.mu3_pp
    }

    /// `Σ k ν_k`.
    pub fn nu_norm(&self) -> usize {
        self.nu_bar.iter().map(|(k, v)| k * v).sum()
    }

    /// `Σ (k-1) ν_k`.
    pub fn nu_norm1(&self) -> usize {
        self.nu_bar.iter().map(|(k, v)| (k - 1) * v).sum()
    }

    /// Number of marked edges accounted for by the census; equals `s` for every even walk.
    pub fn edge_total(&self) -> usize {
        self.mu1 + 2 * self.mu2() + 3 * self.mu3() + self.u2 + self.u3 + self.nu_norm()
    }

    /// `μ2 + μ3 + u2 + u3 + Σ(k-1)ν_k`.
    pub fn sigma_census_short(&self) -> usize {
        self.mu2() + self.mu3() + self.u2 + self.u3 + self.nu_norm1()
    }

    /// `μ2 + 2μ3 + u2 + u3 + Σ(k-1)ν_k`, the vertex-counting form.
    pub fn sigma_census_long(&self) -> usize {
        self.mu2() + 2 * self.mu3() + self.u2 + self.u3 + self.nu_norm1()
    }

    pub fn is_tree_type(&self) -> bool {
        self.mu1 == self.s
    }

    pub fn zero(s: usize, k0: usize) -> Self {
        DiagramParams {
            s,
            k0,
            mu1: 0,
            r: 0,
            p: 0,
            q: 0,
            mu2_pp: 0,
            u2: 0,
            mu3_p: 0,
            mu3_pp: 0,
            u3: 0,
            nu_bar: BTreeMap::new(),
            sigma: 0,
        }
    }
}

/// Census together with the per-vertex classes it was built from.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub params: DiagramParams,
    pub vertices: Vec<VertexClass>,
}

pub fn census(walk: &Walk, k0: usize) -> Result<Census> {
    if k0 < 2 || k0 % 2 != 0 {
        return Err(Error::InvalidParameter(format!("k0 must be even and >= 2, got {k0}")));
    }
    let graph = walk_graph(walk);
    if !graph.is_even {
        return Err(Error::NotEven(walk.to_string()));
    }
    let s = walk.half_len();
    let mut params = DiagramParams::zero(s, k0);
    params.sigma = graph.sigma();
    let mut vertices = Vec::with_capacity(graph.vertex_count);
    for letter in 1..=graph.vertex_count as u32 {
        let arrivals = graph.arrival_edges(letter);
        let kappa = arrivals.len();
        let class = if kappa == 0 {
            VertexClass::Root
        } else if kappa > k0 {
            *params.nu_bar.entry(kappa).or_insert(0) += 1;
            VertexClass::Nu { degree: kappa }
        } else if kappa == 1 {
            params.mu1 += 1;
            VertexClass::Mu1
        } else {
            let second = classify_at(walk, &graph, letter, arrivals[1]);
            if second.kind != ArrivalKind::Plain {
                match second.kind {
                    ArrivalKind::Open => params.r += 1,
                    ArrivalKind::Repeat => params.p += 1,
                    _ => params.q += 1,
                }
                params.u2 += kappa - 2;
                VertexClass::Mu2Prime {
                    second,
                    extra: kappa - 2,
                }
            } else if kappa == 2 {
                params.mu2_pp += 1;
                VertexClass::Mu2Double
            } else {
                let third = classify_at(walk, &graph, letter, arrivals[2]);
                params.u3 += kappa - 3;
                if third.repeat || third.reverse {
                    params.mu3_p += 1;
                    VertexClass::Mu3Prime {
                        third,
                        extra: kappa - 3,
                    }
                } else {
                    params.mu3_pp += 1;
                    VertexClass::Mu3Double { extra: kappa - 3 }
                }
            }
        };
        vertices.push(class);
    }
    Ok(Census { params, vertices })
}

pub fn diagram_params(walk: &Walk, k0: usize) -> Result<DiagramParams> {
    census(walk, k0).map(|c| c.params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Walk {
        Walk::parse(s).unwrap()
    }

    const W16: &str = "1,2,3,4,3,5,2,3,4,3,2,3,2,5,3,2,1";

    #[test]
    fn reference_walk_arrivals() {
        let a = classify_arrival(&w(W16), 2, 2).unwrap();
        assert_eq!(a.time, 6);
        assert!(a.open);
        assert_eq!(a.kind, ArrivalKind::Open);
        let b = classify_arrival(&w(W16), 4, 2).unwrap();
        assert_eq!(b.time, 8);
        assert!(!b.open);
        assert_eq!(b.kind, ArrivalKind::Repeat);
        assert!(classify_arrival(&w(W16), 4, 3).is_err());
        assert!(classify_arrival(&w(W16), 2, 1).is_err());
    }

    #[test]
    fn reference_walk_census() {
        let c = census(&w(W16), 12).unwrap();
        let p = &c.params;
        assert_eq!((p.r, p.p, p.q), (1, 1, 0));
        assert_eq!(p.mu2_p(), 2);
        assert_eq!(p.u2, 2);
        assert_eq!(p.mu1, 2);
        assert_eq!(p.edge_total(), 8);
        assert_eq!(p.sigma, 4);
        assert_eq!(c.vertices[0], VertexClass::Root);
        assert!(matches!(c.vertices[1], VertexClass::Mu2Prime { extra: 2, .. }));
        assert!(matches!(c.vertices[3], VertexClass::Mu2Prime { extra: 0, .. }));
    }

    #[test]
    fn repeated_single_edge() {
        // both pairs are closed again when the second arrival happens
        let a = classify_arrival(&w("1,2,1,2,1"), 2, 2).unwrap();
        assert_eq!(a.kind, ArrivalKind::Repeat);
        assert!(!a.open && a.repeat && !a.reverse);
    }

    #[test]
    fn open_arrival() {
        let walk = w("1,2,3,4,2,4,3,2,1");
        let a = classify_arrival(&walk, 2, 2).unwrap();
        assert_eq!(a.time, 4);
        assert!(a.open && !a.repeat && !a.reverse);
        assert_eq!(a.kind, ArrivalKind::Open);
        assert_eq!(diagram_params(&walk, 4).unwrap().r, 1);
    }

    #[test]
    fn plain_second_arrival() {
        // letter 2 is re-entered from 4 after both of its pairs were closed
        let walk = w("1,2,3,2,1,4,2,4,1");
        let a = classify_arrival(&walk, 2, 2).unwrap();
        assert_eq!(a.time, 6);
        assert_eq!(a.kind, ArrivalKind::Plain);
        let p = diagram_params(&walk, 4).unwrap();
        assert_eq!(p.mu2_pp, 1);
        assert_eq!(p.edge_total(), 4);
    }

    #[test]
    fn tree_walk_census() {
        let p = diagram_params(&w("1,2,3,2,4,2,1,5,1"), 4).unwrap();
        assert_eq!(p.mu1, 4);
        assert!(p.is_tree_type());
        assert_eq!(p.sigma, 0);
        assert_eq!(p.edge_total(), 4);
    }

    #[test]
    fn double_traversal() {
        let p = diagram_params(&w("1,2,1,2,1"), 2).unwrap();
        assert_eq!(p.sigma, 1);
        assert_eq!((p.r, p.p), (0, 1));
        assert_eq!(p.edge_total(), 2);
    }

    #[test]
    fn nu_vertices_above_threshold() {
        // letter 2 entered three times by marked steps
        let walk = w("1,2,1,2,1,2,1");
        let p2 = diagram_params(&walk, 2).unwrap();
        assert_eq!(p2.nu_bar.get(&3), Some(&1));
        let p4 = diagram_params(&walk, 4).unwrap();
        assert!(p4.nu_bar.is_empty());
        assert_eq!(p4.u2, 1);
        assert_eq!(p2.edge_total(), 3);
        assert_eq!(p4.edge_total(), 3);
    }

    #[test]
    fn rejects_odd_walk_and_bad_k0() {
        assert!(matches!(diagram_params(&w("1,2,3,4,1"), 4), Err(Error::NotEven(_))));
        assert!(diagram_params(&w("1,2,1"), 3).is_err());
    }
}
