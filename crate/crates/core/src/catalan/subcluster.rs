use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::series::catalan_series;
use super::catalan_table;
use crate::walks::DyckPath;

/// `t̃_s(d)`: trees with `s` edges whose root has exactly `d` children, as the
/// coefficient of `ς^{s-d}` in `f(ς)^d`.
pub fn root_subcluster_conv(s: usize, d: usize) -> BigInt {
    if d == 0 || d > s {
        return BigInt::zero();
    }
    let f = catalan_series(s - d);
    f.pow(d).coeff(s - d).cloned().unwrap_or_default()
}

/// `table[s][d] = t̃_s(d)` for `0 ≤ d ≤ s ≤ s_max` from the two-term recurrence.
pub fn root_subcluster_table(s_max: usize) -> Vec<Vec<BigInt>> {
    let t = catalan_table(s_max);
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(s_max + 1);
    table.push(vec![BigInt::zero()]);
    for s in 1..=s_max {
        let mut row = vec![BigInt::zero(); s + 1];
        row[1] = t[s - 1].clone();
        if s >= 2 {
            row[2] = t[s - 1].clone();
        }
        for d in 3..=s {
            let prev = &table[s - 1];
            let sub = prev.get(d - 2).cloned().unwrap_or_default();
            row[d] = &row[d - 1] - sub;
        }
        table.push(row);
    }
    table
}

pub fn root_subcluster_recurrence(s: usize, d: usize) -> BigInt {
    if d == 0 || d > s {
        return BigInt::zero();
    }
    root_subcluster_table(s)[s][d].clone()
}

/// Counts Dyck paths of `2s` steps with exactly `d` returns to zero.
pub fn root_subcluster_brute(s: usize, d: usize) -> BigInt {
    let count = DyckPath::all(s)
        .iter()
        .filter(|p| p.heights()[1..].iter().filter(|&&h| h == 0).count() == d)
        .count();
    BigInt::from(count)
}

/// All `t̃_s(d)` for `1 ≤ d ≤ s ≤ s_max` via powers of `f`.
pub fn root_subcluster_conv_table(s_max: usize) -> Vec<Vec<BigInt>> {
    let f = catalan_series(s_max);
    let mut table = vec![Vec::new(); s_max + 1];
    for (s, row) in table.iter_mut().enumerate() {
        *row = vec![BigInt::zero(); s + 1];
    }
    let mut power = f.clone();
    for d in 1..=s_max {
        if d > 1 {
            power = &power.truncate(s_max - d) * &f.truncate(s_max - d);
        }
        for s in d..=s_max {
            table[s][d] = power.coeffs()[s - d].clone();
        }
    }
    table
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma61Row {
    pub s: usize,
    pub d: usize,
    /// `4^d t̃_s(d)`.
    pub lhs: String,
    /// `3^d t_s`.
    pub rhs: String,
    pub holds: bool,
}

/// Exact sweep of `4^d t̃_s(d) ≤ 3^d t_s`.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma61Report {
    pub s_max: usize,
    /// Pairs checked with `3 ≤ d ≤ s`.
    pub checked: usize,
    pub violations: Vec<Lemma61Row>,
    /// All pairs with `d ∈ {1, 2}`, reported separately.
    pub boundary: Vec<Lemma61Row>,
    /// `t̃_s(d) ≤ t_{s-1}` on the whole range.
    pub below_previous_catalan: bool,
}

impl Lemma61Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_lemma_6_1(s_max: usize) -> Lemma61Report {
    let table = root_subcluster_table(s_max);
    let t = catalan_table(s_max);
    let mut report = Lemma61Report {
        s_max,
        checked: 0,
        violations: Vec::new(),
        boundary: Vec::new(),
        below_previous_catalan: true,
    };
    let (mut p3, mut p4) = (BigInt::one(), BigInt::one());
    let mut pow3 = vec![BigInt::one()];
    let mut pow4 = vec![BigInt::one()];
    for _ in 0..s_max {
        p3 *= 3;
        p4 *= 4;
        pow3.push(p3.clone());
        pow4.push(p4.clone());
    }
    for s in 1..=s_max {
        for d in 1..=s {
            let v = &table[s][d];
            if v > &t[s - 1] {
                report.below_previous_catalan = false;
            }
            let lhs = &pow4[d] * v;
            let rhs = &pow3[d] * &t[s];
            let holds = lhs <= rhs;
            let row = || Lemma61Row {
                s,
                d,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                holds,
            };
            if d <= 2 {
                report.boundary.push(row());
            } else {
                report.checked += 1;
                if !holds {
                    report.violations.push(row());
                }
            }
        }
    }
    report
}
