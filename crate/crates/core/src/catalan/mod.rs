//! Exact Catalan-family counts and the bound evaluators built on them.

mod bounds;
mod height;
mod multi_edge;
mod series;
mod subcluster;

pub use bounds::{bound_3_6, bound_3_7, ln_pow_over_fact, ClassBoundInput};
pub use height::{b_s, frak_m_upper, height_distribution_brute, HeightTable};
pub use multi_edge::{
    conjecture_report, multi_edge_closed_form, multi_edge_count_enum, multi_edge_count_gf,
    multi_edge_gf_series, ConjectureReport, ConjectureRow, DEFAULT_TREE_CAP,
};
pub use series::{catalan_series, SeriesExact, DEFAULT_SERIES_ORDER};
pub use subcluster::{
    check_lemma_6_1, root_subcluster_brute, root_subcluster_conv, root_subcluster_conv_table,
    root_subcluster_recurrence, root_subcluster_table, Lemma61Report, Lemma61Row,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `t_s = (2s)! / (s! (s+1)!)`.
pub fn catalan(s: usize) -> BigInt {
    binomial(2 * s, s) / BigInt::from(s + 1)
}

/// `t_0..=t_{s_max}` from `t_{s+1} = Σ t_j t_{s-j}`.
pub fn catalan_table(s_max: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = Vec::with_capacity(s_max + 1);
    t.push(BigInt::one());
    for s in 0..s_max {
        let next = (0..=s).fold(BigInt::zero(), |acc, j| acc + &t[j] * &t[s - j]);
        t.push(next);
    }
    t
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `a / b` as a double, for exact integers of any size.
pub fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let shift = a.bits().max(b.bits()).saturating_sub(900);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
}
