use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ratio_f64;
use crate::walks::DyckPath;

/// Trees counted by height: `at_most[u][s]` trees with `s` edges and height at most `u`.
#[derive(Clone, Debug)]
pub struct HeightTable {
    s_max: usize,
    at_most: Vec<Vec<BigInt>>,
}

impl HeightTable {
    /// Builds rows `u = 0..=s_max` through the first-subtree decomposition.
    pub fn new(s_max: usize) -> Self {
        let catalan = super::catalan_table(s_max);
        let mut at_most: Vec<Vec<BigInt>> = Vec::with_capacity(s_max + 1);
        let mut row0 = vec![BigInt::zero(); s_max + 1];
        row0[0] = BigInt::one();
        at_most.push(row0);
        for u in 1..=s_max {
            let mut row = vec![BigInt::zero(); s_max + 1];
            // a tree with s <= u edges cannot be taller than u
            row[..=u].clone_from_slice(&catalan[..=u]);
            for s in u + 1..=s_max {
                let prev = &at_most[u - 1];
                let mut acc = BigInt::zero();
                for j in 0..s {
                    acc += &prev[j] * &row[s - 1 - j];
                }
                row[s] = acc;
            }
            at_most.push(row);
        }
        HeightTable { s_max, at_most }
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    /// `T̈^(u)_s`.
    pub fn at_most(&self, u: usize, s: usize) -> BigInt {
        self.at_most[u.min(self.s_max)][s].clone()
    }

    /// `Ṫ^(u)_s`: trees of height exactly `u`.
    pub fn exactly(&self, u: usize, s: usize) -> BigInt {
        if u == 0 {
            return self.at_most(0, s);
        }
        if u > self.s_max {
            return BigInt::zero();
        }
        &self.at_most[u][s] - &self.at_most[u - 1][s]
    }

    /// `Ṫ^(0..=s)_s`.
    pub fn distribution(&self, s: usize) -> Vec<BigInt> {
        (0..=s).map(|u| self.exactly(u, s)).collect()
    }
}

/// Height distribution of all Dyck paths of `2s` steps by direct enumeration.
pub fn height_distribution_brute(s: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); s + 1];
    for p in DyckPath::all(s) {
        out[p.height()] += 1;
    }
    out
}

/// `B_s(x) = (1/t_s) Σ_u Ṫ^(u)_s exp(x u / √s)`.
pub fn b_s(table: &HeightTable, x: f64, s: usize) -> f64 {
    let total: BigInt = super::catalan(s);
    let scale = x / (s as f64).sqrt();
    (1..=s)
        .map(|u| ratio_f64(&table.exactly(u, s), &total) * (scale * u as f64).exp())
        .sum()
}

/// `(π χ³)^{-1/2} e^{4χ³} B_s(c χ^{3/2})`.
pub fn frak_m_upper(table: &HeightTable, chi: f64, s: usize, c: f64) -> f64 {
    let chi3 = chi.powi(3);
    (PI * chi3).powf(-0.5) * (4.0 * chi3).exp() * b_s(table, c * chi.powf(1.5), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::catalan;

    #[test]
    fn small_distributions() {
        let t = HeightTable::new(10);
        assert_eq!(t.exactly(1, 2), BigInt::from(1));
        assert_eq!(t.exactly(2, 2), BigInt::from(1));
        for s in 1..=10 {
            assert_eq!(t.distribution(s), height_distribution_brute(s), "s = {s}");
            assert_eq!(t.exactly(s, s), BigInt::from(1));
        }
        let d8: Vec<i64> = vec![0, 1, 127, 482, 484, 247, 75, 13, 1];
        assert_eq!(t.distribution(8), d8.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn marginals_are_catalan() {
        let t = HeightTable::new(120);
        for s in 0..=120 {
            let total: BigInt = t.distribution(s).iter().sum();
            assert_eq!(total, catalan(s));
        }
    }

    #[test]
    fn b_s_closed_cases() {
        let t = HeightTable::new(30);
        assert!((b_s(&t, 0.0, 30) - 1.0).abs() < 1e-12);
        assert!((b_s(&t, 0.7, 1) - 0.7f64.exp()).abs() < 1e-12);
        let x = 1.3f64;
        let want = ((x / 2f64.sqrt()).exp() + (2.0 * x / 2f64.sqrt()).exp()) / 2.0;
        assert!((b_s(&t, x, 2) - want).abs() < 1e-12);
        let mut last = 0.0;
        for i in 0..20 {
            let v = b_s(&t, i as f64 * 0.25, 30);
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn frak_m_at_zero_coefficient() {
        let t = HeightTable::new(20);
        let chi = 0.8f64;
        let want = (PI * chi.powi(3)).powf(-0.5) * (4.0 * chi.powi(3)).exp();
        assert!((frak_m_upper(&t, chi, 20, 0.0) - want).abs() < 1e-12 * want);
        assert!(frak_m_upper(&t, chi, 20, 6.0) > frak_m_upper(&t, chi, 20, 2.0));
    }
}
