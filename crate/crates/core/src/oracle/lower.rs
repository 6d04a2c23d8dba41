use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `16 V_4 / (ζ √(πχ)) · e^{-e χ³}`.
pub fn theorem_7_1_rhs(chi: f64, zeta: f64, v4: f64) -> f64 {
    16.0 * v4 / (zeta * (PI * chi).sqrt()) * (-E * chi.powi(3)).exp()
}

fn factorial(k: usize) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Ways to choose `μ` disjoint pairs among `s` items: `s! / (2^μ μ! (s-2μ)!)`.
pub fn insertion_count(s: usize, mu2: usize) -> BigInt {
    if 2 * mu2 > s {
        return BigInt::zero();
    }
    factorial(s) / ((BigInt::one() << mu2) * factorial(mu2) * factorial(s - 2 * mu2))
}

/// Exact check of `insertion_count(s, μ) ≥ ((s - 2M)² / 2)^μ / μ!` for `μ ≤ M ≤ s/2`.
pub fn insertion_lower_bound_holds(s: usize, mu2: usize, big_m: usize) -> bool {
    debug_assert!(mu2 <= big_m && 2 * big_m <= s);
    let gap = BigInt::from(s - 2 * big_m);
    let lhs = insertion_count(s, mu2) * (BigInt::one() << mu2) * factorial(mu2);
    lhs >= gap.pow(2 * mu2 as u32)
}
