//! Arrival cells at the vertex of maximal exit degree.
//!
//! Arrivals at `β̆` made by steps of the weakly reduced walk are split into
//! proper cells (marked arrivals), mirror cells (non-marked arrivals removed by
//! the strong reduction) and imported cells (non-marked arrivals that survive
//! the strong reduction). Each imported cell is attributed to the BTS-instant
//! that starts the run of non-marked steps leading to it.

use serde::Serialize;

use super::graph::{label_steps, max_exit_degree, walk_graph, StepLabeling};
use super::reduce::{strong_reduce, weak_reduce, ReducedWalk};
use super::walk::Walk;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperCell {
    /// Time of the arrival (`0` for the root's creation).
    pub time: usize,
    /// Marked instant `x`.
    pub x: usize,
    /// Mirror cells attached to this proper cell.
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalBts {
    pub time: usize,
    /// Marked instant `z`.
    pub z: usize,
    /// Offsets between consecutive imported arrivals, starting from the time of `z`.
    pub phi: Vec<usize>,
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemoteBts {
    pub time: usize,
    /// Marked instant `y`.
    pub y: usize,
    /// Vertex reached by the BTS step.
    pub vertex: u32,
    /// Delay from the BTS step to the principal imported cell.
    pub ell: usize,
    /// Offsets between the secondary imported cells.
    pub psi: Vec<usize>,
    pub f: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub breve_beta: u32,
    #[serde(rename = "D")]
    pub d: usize,
    pub kappa: usize,
    pub proper: Vec<ProperCell>,
    pub local_bts: Vec<LocalBts>,
    pub remote_bts: Vec<RemoteBts>,
    #[serde(rename = "I")]
    pub i: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "F_local")]
    pub f_local: usize,
    #[serde(rename = "F_remote")]
    pub f_remote: usize,
    /// `I + M + K + 2J + F`.
    #[serde(rename = "R")]
    pub r: usize,
    /// Number of arrival cells actually found.
    pub cell_count: usize,
    /// Mirror cells with no earlier proper cell to attach to.
    pub orphan_mirrors: usize,
    /// Marked steps of the weakly reduced walk leaving `β̆`.
    pub marked_exits: usize,
    /// Non-marked steps of the weakly reduced walk entering `β̆`.
    pub nonmarked_arrivals: usize,
    pub strong: ReducedWalk,
    pub weak: ReducedWalk,
}

impl CellReport {
    pub fn f(&self) -> usize {
        self.f_local + self.f_remote
    }

    /// Named consistency checks; every entry should be `true`.
    pub fn checks(&self, walk: &Walk) -> Vec<(&'static str, bool)> {
        let at = |t: usize| t <= walk.len_steps() && walk.at(t) == self.breve_beta;
        let local_replay = self.local_bts.iter().all(|b| {
            let mut t = b.time;
            b.phi.iter().all(|&p| {
                t += p;
                at(t)
            })
        });
        let remote_replay = self.remote_bts.iter().all(|b| {
            let mut t = b.time + b.ell;
            at(t) && b.psi.iter().all(|&p| {
                t += p;
                at(t)
            })
        });
        vec![
            ("kappa_is_i_plus_k", self.kappa == self.i + self.k),
            (
                "cell_count",
                self.cell_count == self.i + self.m + self.k + self.j + self.f(),
            ),
            ("local_offsets_replay", local_replay),
            ("remote_offsets_replay", remote_replay),
            ("no_orphan_mirrors", self.orphan_mirrors == 0),
            (
                "exit_arrival_balance",
                self.marked_exits == self.nonmarked_arrivals,
            ),
        ]
    }
}

/// Walks back through the strongly reduced steps from `pos` to the marked step
/// opening the run of non-marked steps that ends there.
fn bts_step(strong: &ReducedWalk, labels: &StepLabeling, pos: usize) -> Option<usize> {
    strong.kept[..pos]
        .iter()
        .rev()
        .copied()
        .find(|&t| labels.is_marked(t))
}

pub fn bts_and_cells(walk: &Walk) -> Result<CellReport> {
    let labels = label_steps(walk);
    if !labels.is_even {
        return Err(Error::NotEven(walk.to_string()));
    }
    let graph = walk_graph(walk);
    let (beta, d) = max_exit_degree(walk);
    let strong = strong_reduce(walk);
    let weak = weak_reduce(walk);
    let instant = |t: usize| labels.instant_of(t).expect("marked step");

    let mut proper: Vec<ProperCell> = Vec::new();
    let mut local_bts: Vec<LocalBts> = Vec::new();
    let mut remote_bts: Vec<RemoteBts> = Vec::new();
    let mut last_import: Vec<(usize, usize)> = Vec::new();
    let (mut m_total, mut orphan, mut cell_count) = (0, 0, 0);

    if beta == walk.at(0) {
        proper.push(ProperCell { time: 0, x: 0, m: 0 });
        cell_count += 1;
    }
    let mut marked_exits = 0;
    let mut nonmarked_arrivals = 0;
    for &t in &weak.kept {
        let (from, to) = walk.step(t);
        if from == beta && labels.is_marked(t) {
            marked_exits += 1;
        }
        if to != beta {
            continue;
        }
        cell_count += 1;
        let in_strong = strong.kept.binary_search(&t);
        match (labels.is_marked(t), in_strong) {
            (true, Err(_)) => proper.push(ProperCell {
                time: t,
                x: instant(t),
                m: 0,
            }),
            (true, Ok(_)) => local_bts.push(LocalBts {
                time: t,
                z: instant(t),
                phi: Vec::new(),
                f: 0,
            }),
            (false, Err(_)) => {
                nonmarked_arrivals += 1;
                match proper.last_mut() {
                    Some(cell) => cell.m += 1,
                    None => orphan += 1,
                }
                m_total += 1;
            }
            (false, Ok(pos)) => {
                nonmarked_arrivals += 1;
                let Some(src) = bts_step(&strong, &labels, pos) else {
                    return Err(Error::MalformedInput(format!(
                        "imported arrival at time {t} has no preceding marked step"
                    )));
                };
                let prev = last_import
                    .iter()
                    .find(|&&(s, _)| s == src)
                    .map(|&(_, p)| p);
                if walk.at(src) == beta {
                    let b = local_bts
                        .iter_mut()
                        .find(|b| b.time == src)
                        .expect("local BTS step is a proper arrival");
                    b.phi.push(t - prev.unwrap_or(src));
                    b.f += 1;
                } else if let Some(p) = prev {
                    let b = remote_bts.iter_mut().find(|b| b.time == src).unwrap();
                    b.psi.push(t - p);
                    b.f += 1;
                } else {
                    remote_bts.push(RemoteBts {
                        time: src,
                        y: instant(src),
                        vertex: walk.at(src),
                        ell: t - src,
                        psi: Vec::new(),
                        f: 0,
                    });
                }
                match last_import.iter_mut().find(|e| e.0 == src) {
                    Some(e) => e.1 = t,
                    None => last_import.push((src, t)),
                }
            }
        }
    }

    let i = proper.len();
    let k = local_bts.len();
    let j = remote_bts.len();
    let f_local: usize = local_bts.iter().map(|b| b.f).sum();
    let f_remote: usize = remote_bts.iter().map(|b| b.f).sum();
    Ok(CellReport {
        breve_beta: beta,
        d,
        kappa: graph.kappa(beta),
        proper,
        local_bts,
        remote_bts,
        i,
        m: m_total,
        k,
        j,
        f_local,
        f_remote,
        r: i + m_total + k + 2 * j + f_local + f_remote,
        cell_count,
        orphan_mirrors: orphan,
        marked_exits,
        nonmarked_arrivals,
        strong,
        weak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(text: &str) -> (Walk, CellReport) {
        let w = Walk::parse(text).unwrap();
        let r = bts_and_cells(&w).unwrap();
        (w, r)
    }

    fn all_checks_pass(w: &Walk, r: &CellReport) {
        for (name, ok) in r.checks(w) {
            assert!(ok, "{name} failed for {w}: {r:?}");
        }
    }

    #[test]
    fn reference_walk() {
        let (w, r) = report("1,2,3,4,3,5,2,3,4,3,2,3,2,5,3,2,1");
        assert_eq!((r.breve_beta, r.d, r.kappa), (3, 5, 1));
        assert_eq!((r.i, r.k), (0, 1));
        assert_eq!(r.local_bts[0].z, 2);
        assert_eq!(r.local_bts[0].f, 0);
        // both non-marked returns to letter 3 are principal imported cells
        assert_eq!(r.j, 2);
        assert_eq!((r.remote_bts[0].y, r.remote_bts[0].ell), (5, 1));
        assert_eq!((r.remote_bts[1].y, r.remote_bts[1].ell), (8, 2));
        assert_eq!(r.remote_bts[1].vertex, 2);
        assert_eq!(r.r, 5);
        all_checks_pass(&w, &r);
    }

    #[test]
    fn tree_walk_has_no_imports() {
        let (w, r) = report("1,2,3,2,4,2,1,5,1");
        assert!(r.strong.is_empty());
        assert_eq!((r.k, r.j, r.f()), (0, 0, 0));
        all_checks_pass(&w, &r);
    }

    #[test]
    fn subtrees_below_the_max_exit_vertex() {
        // the excursions from letter 2 are removed by both reductions, so they hold no cells
        let (w, r) = report("1,2,3,2,4,2,1");
        assert_eq!(r.breve_beta, 2);
        assert_eq!(r.i, 1);
        assert_eq!(r.proper[0].x, 1);
        assert_eq!(r.m, 0);
        all_checks_pass(&w, &r);
    }

    #[test]
    fn local_bts_instant() {
        let (w, r) = report("1,2,3,1,2,3,1");
        assert_eq!((r.breve_beta, r.d, r.kappa), (1, 1, 2));
        assert_eq!(r.i, 1);
        assert_eq!(r.proper[0].time, 0);
        assert_eq!(r.local_bts.len(), 1);
        assert_eq!((r.local_bts[0].z, r.local_bts[0].phi.clone()), (3, vec![3]));
        assert_eq!(r.f_local, 1);
        all_checks_pass(&w, &r);
    }
}
