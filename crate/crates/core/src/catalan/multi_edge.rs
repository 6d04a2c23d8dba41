use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::series::{catalan_series, SeriesExact};
use super::{binomial, catalan_table};
use crate::error::{Error, Result};
use crate::walks::DyckPath;

pub const DEFAULT_TREE_CAP: usize = 12;

/// `N^(l)_s` for `l = 1..=l_max` by running over every plane tree with `s`
/// edges and counting `l`-subsets of edges sharing a parent.
pub fn multi_edge_count_enum(l_max: usize, s: usize, cap: usize) -> Result<Vec<BigInt>> {
    if s > cap {
        return Err(Error::Guardrail {
            what: format!("tree enumeration with s = {s} exceeds the cap {cap}"),
            estimate: format!("{} trees", super::catalan(s)),
        });
    }
    let mut totals = vec![BigInt::zero(); l_max + 1];
    let choose: Vec<Vec<BigInt>> = (0..=s)
        .map(|c| (0..=l_max).map(|l| binomial(c, l)).collect())
        .collect();
    for path in DyckPath::all(s) {
        let mut stack = vec![0usize];
        let mut closed: Vec<usize> = Vec::with_capacity(s + 1);
        for &x in path.steps() {
            if x > 0 {
                *stack.last_mut().unwrap() += 1;
                stack.push(0);
            } else {
                closed.push(stack.pop().unwrap());
            }
        }
        closed.push(stack.pop().unwrap());
        for c in closed {
            for (l, total) in totals.iter_mut().enumerate().skip(1) {
                *total += &choose[c][l];
            }
        }
    }
    totals.remove(0);
    Ok(totals)
}

/// `Φ^(l)(ς) = 2 ς^{l+1} f'(ς) f(ς)^{2l-1} + ς^l f(ς)^{2l}` up to `ς^order`.
pub fn multi_edge_gf_series(l: usize, order: usize) -> SeriesExact {
    let f = catalan_series(order + 1);
    let df = f.derivative();
    let f = f.truncate(order);
    let first = (&df * &f.pow(2 * l - 1)).shift(l + 1).scale(&BigInt::from(2));
    let second = f.pow(2 * l).shift(l);
    &first + &second
}

pub fn multi_edge_count_gf(l: usize, s: usize) -> BigInt {
    if l == 0 || s < l {
        return BigInt::zero();
    }
    multi_edge_gf_series(l, s).coeffs()[s].clone()
}

/// `(2s)! / ((s-l)! (s+l)!)`.
pub fn multi_edge_closed_form(l: usize, s: usize) -> BigInt {
    if l > s {
        return BigInt::zero();
    }
    binomial(2 * s, s - l)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub l: usize,
    pub s: usize,
    pub value: String,
    pub closed_form: String,
    #[serde(rename = "match")]
    pub matches: bool,
    /// `N ≤ 2^l s t_s`.
    pub within_power_bound: bool,
    /// `N ≤ s t_s`.
    pub within_linear_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub l_max: usize,
    pub s_max: usize,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn power_bound_holds(&self) -> bool {
        self.rows.iter().all(|r| r.within_power_bound)
    }

    /// The stronger bound is only claimed where the closed form holds.
    pub fn linear_bound_holds(&self) -> Option<bool> {
        self.all_match()
            .then(|| self.rows.iter().all(|r| r.within_linear_bound))
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ConjectureRow> {
        self.rows.iter().filter(|r| !r.matches)
    }
}

/// Compares the generating-function counts with the binomial closed form on `1 ≤ l ≤ s`.
pub fn conjecture_report(l_max: usize, s_max: usize) -> ConjectureReport {
    let t = catalan_table(s_max);
    let mut rows = Vec::new();
    for l in 1..=l_max.min(s_max) {
        let series = multi_edge_gf_series(l, s_max);
        for s in l..=s_max {
            let value = series.coeffs()[s].clone();
            let closed = multi_edge_closed_form(l, s);
            let st = BigInt::from(s) * &t[s];
            let power = &st << l;
            rows.push(ConjectureRow {
                l,
                s,
                matches: value == closed,
                within_power_bound: value <= power,
                within_linear_bound: value <= st,
                value: value.to_string(),
                closed_form: closed.to_string(),
            });
        }
    }
    ConjectureReport { l_max, s_max, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::catalan;

    #[test]
    fn brute_force_spot_values() {
        let n4 = multi_edge_count_enum(4, 4, DEFAULT_TREE_CAP).unwrap();
        assert_eq!(n4, vec![56.into(), 28.into(), 8.into(), 1.into()]);
        let n3 = multi_edge_count_enum(2, 3, DEFAULT_TREE_CAP).unwrap();
        assert_eq!(n3[1], BigInt::from(6));
        let n2 = multi_edge_count_enum(2, 2, DEFAULT_TREE_CAP).unwrap();
        assert_eq!(n2[1], BigInt::from(1));
    }

    #[test]
    fn single_edge_marks() {
        let n = multi_edge_count_enum(1, 9, DEFAULT_TREE_CAP).unwrap();
        assert_eq!(n[0], BigInt::from(9) * catalan(9));
        for s in 1..=40 {
            assert_eq!(multi_edge_count_gf(1, s), BigInt::from(s) * catalan(s));
        }
    }

    #[test]
    fn gf_matches_enumeration() {
        for s in 1..=9 {
            let brute = multi_edge_count_enum(5, s, DEFAULT_TREE_CAP).unwrap();
            for l in 1..=5.min(s) {
                assert_eq!(multi_edge_count_gf(l, s), brute[l - 1], "l={l} s={s}");
            }
        }
    }

    #[test]
    fn guardrail() {
        assert_eq!(multi_edge_count_enum(1, 13, 12).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn small_grid() {
        let r = conjecture_report(6, 10);
        assert!(r.all_match());
        assert!(r.power_bound_holds());
        assert_eq!(r.linear_bound_holds(), Some(true));
    }
}
