use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::MomentSpec;
use crate::error::{Error, Result};
use crate::walks::{class_size, walk_graph, EvenWalks, Walk, DEFAULT_WALK_CAP};

/// Default cap on the number of trajectories `n^{2s}` enumerated directly.
pub const DEFAULT_TRAJECTORY_BUDGET: u64 = 200_000_000;

/// Expected product over one off-diagonal pair traversed `m` times.
pub fn pair_weight(m: usize, spec: &MomentSpec) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::InvalidParameter("pair multiplicity must be positive".into()));
    }
    if m % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let v = spec.v(m)?;
    let n = BigRational::from_integer(BigInt::from(spec.n));
    let half = m as i32 / 2;
    Ok(v * spec.rho.pow(1 - half) / n)
}

/// Product of pair weights of one trajectory of the walk's class.
pub fn walk_weight(walk: &Walk, spec: &MomentSpec) -> Result<BigRational> {
    if walk.has_loops() {
        return Ok(BigRational::zero());
    }
    let g = walk_graph(walk);
    let mut w = BigRational::one();
    for &m in g.pair_multiplicity.values() {
        w *= pair_weight(m, spec)?;
        if w.is_zero() {
            break;
        }
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    Trajectory,
    Walk,
    #[default]
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentResult {
    pub value: BigRational,
    pub trajectory: Option<BigRational>,
    pub walk: Option<BigRational>,
}

impl MomentResult {
    /// `Some(true)` when both methods ran and agree.
    pub fn agreement(&self) -> Option<bool> {
        match (&self.trajectory, &self.walk) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        }
    }
}

/// Multiset of pair multiplicities, counted over trajectories.
type Signatures = HashMap<Vec<u8>, u64>;

fn trajectory_signatures(n: usize, s: usize, start: usize) -> Signatures {
    struct State {
        n: usize,
        len: usize,
        start: usize,
        counts: Vec<u8>,
        out: Signatures,
    }
    fn idx(n: usize, a: usize, b: usize) -> usize {
        if a < b {
            a * n + b
        } else {
            b * n + a
        }
    }
    fn rec(st: &mut State, depth: usize, cur: usize) {
        if depth + 1 == st.len {
            if cur == st.start {
                return;
            }
            let k = idx(st.n, cur, st.start);
            st.counts[k] += 1;
            let mut sig: Vec<u8> = st.counts.iter().copied().filter(|&c| c > 0).collect();
            st.counts[k] -= 1;
            if sig.iter().all(|c| c % 2 == 0) {
                sig.sort_unstable();
                *st.out.entry(sig).or_insert(0) += 1;
            }
            return;
        }
        for next in 0..st.n {
            if next == cur {
                continue;
            }
            let k = idx(st.n, cur, next);
            st.counts[k] += 1;
            rec(st, depth + 1, next);
            st.counts[k] -= 1;
        }
    }
    let mut st = State {
        n,
        len: 2 * s,
        start,
        counts: vec![0; n * n],
        out: HashMap::new(),
    };
    rec(&mut st, 0, start);
    st.out
}

fn signature_weight(sig: &[u8], spec: &MomentSpec) -> Result<BigRational> {
    let mut w = BigRational::one();
    for &m in sig {
        w *= pair_weight(m as usize, spec)?;
    }
    Ok(w)
}

/// `M_2s` by summing over all `n^{2s}` trajectories. Trajectories with a
/// diagonal step are skipped, since their weight vanishes.
pub fn moment_by_trajectories(spec: &MomentSpec, budget: u64) -> Result<BigRational> {
    spec.validate()?;
    let size = (spec.n as f64).powi(2 * spec.s as i32);
    if size > budget as f64 {
        return Err(Error::Guardrail {
            what: format!(
                "trajectory enumeration for n = {}, s = {} exceeds the budget {budget}",
                spec.n, spec.s
            ),
            estimate: format!("{size:.3e} trajectories"),
        });
    }
    if spec.s == 0 {
        return Ok(BigRational::from_integer(spec.n.into()));
    }
    let n = spec.n as usize;
    let parts: Vec<Signatures> = (0..n)
        .into_par_iter()
        .map(|start| trajectory_signatures(n, spec.s, start))
        .collect();
    let mut merged: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for part in parts {
        for (sig, c) in part {
            *merged.entry(sig).or_insert(0) += c;
        }
    }
    let mut total = BigRational::zero();
    for (sig, c) in merged {
        total += signature_weight(&sig, spec)? * BigRational::from_integer(c.into());
    }
    Ok(total)
}

/// `M_2s` as `Σ_W |class(W)| · weight(W)` over canonical even walks.
pub fn moment_by_walks(spec: &MomentSpec, walk_cap: usize) -> Result<BigRational> {
    spec.validate()?;
    if spec.s == 0 {
        return Ok(BigRational::from_integer(spec.n.into()));
    }
    let mut total = BigRational::zero();
    for w in EvenWalks::with_cap(spec.s, walk_cap)? {
        let size = class_size(&w, spec.n as u64);
        if size.is_zero() {
            continue;
        }
        total += walk_weight(&w, spec)? * BigRational::from_integer(size);
    }
    Ok(total)
}

pub fn exact_moment(spec: &MomentSpec, method: OracleMethod) -> Result<MomentResult> {
    let trajectory = match method {
        OracleMethod::Walk => None,
        _ => Some(moment_by_trajectories(spec, DEFAULT_TRAJECTORY_BUDGET)?),
    };
    let walk = match method {
        OracleMethod::Trajectory => None,
        _ => Some(moment_by_walks(spec, DEFAULT_WALK_CAP)?),
    };
    let value = trajectory.clone().or_else(|| walk.clone()).unwrap();
    Ok(MomentResult {
        value,
        trajectory,
        walk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::spec::OracleLaw;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn pair_weights() {
        let spec = MomentSpec::with_law(5, q(2, 1), 3, OracleLaw::Rademacher).unwrap();
        assert_eq!(pair_weight(2, &spec).unwrap(), q(1, 4) / q(5, 1));
        assert_eq!(pair_weight(4, &spec).unwrap(), q(1, 16) / q(10, 1));
        assert_eq!(pair_weight(3, &spec).unwrap(), q(0, 1));
        assert!(pair_weight(8, &spec).is_err());
    }

    #[test]
    fn known_values() {
        let expect = [(1, q(3, 4)), (2, q(9, 32)), (3, q(69, 512))];
        for (s, want) in expect {
            let spec = MomentSpec::with_law(4, q(2, 1), s, OracleLaw::Rademacher).unwrap();
            let r = exact_moment(&spec, OracleMethod::Both).unwrap();
            assert_eq!(r.agreement(), Some(true));
            assert_eq!(r.value, want, "s = {s}");
        }
        let spec = MomentSpec::with_law(6, q(6, 1), 3, OracleLaw::Rademacher).unwrap();
        assert_eq!(moment_by_walks(&spec, 6).unwrap(), q(505, 2304));
    }

    #[test]
    fn zero_order() {
        let spec = MomentSpec::with_law(3, q(1, 1), 0, OracleLaw::Rademacher).unwrap();
        assert_eq!(exact_moment(&spec, OracleMethod::Both).unwrap().value, q(3, 1));
    }

    #[test]
    fn budget_guardrail() {
        let spec = MomentSpec::with_law(7, q(1, 1), 3, OracleLaw::Rademacher).unwrap();
        let err = moment_by_trajectories(&spec, 1000).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
