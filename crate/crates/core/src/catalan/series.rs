use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub const DEFAULT_SERIES_ORDER: usize = 256;

/// Power series with exact integer coefficients, known up to and including `ς^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesExact {
    coeffs: Vec<BigInt>,
}

impl SeriesExact {
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        SeriesExact { coeffs }
    }

    pub fn one(order: usize) -> Self {
        SeriesExact::monomial(0, order)
    }

    /// `ς^k`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut c = vec![BigInt::zero(); order + 1];
        if k <= order {
            c[k] = BigInt::from(1);
        }
        SeriesExact { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&BigInt> {
        self.coeffs.get(k).ok_or_else(|| {
            Error::Range(format!(
                "coefficient {k} requested from a series known to order {}",
                self.order()
            ))
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesExact::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Formal derivative; the result is known to one order less.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let c = (1..self.coeffs.len())
            .map(|k| &self.coeffs[k] * BigInt::from(k))
            .collect();
        SeriesExact::new(c, order)
    }

    /// Multiplies by `ς^k`; the result keeps the same order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut c = vec![BigInt::zero(); order + 1];
        for i in 0..=order {
            if i + k > order {
                break;
            }
            c[i + k] = self.coeffs[i].clone();
        }
        SeriesExact { coeffs: c }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = SeriesExact::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        SeriesExact {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add for &SeriesExact {
    type Output = SeriesExact;
    fn add(self, rhs: &SeriesExact) -> SeriesExact {
        let order = self.order().min(rhs.order());
        let c = (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect();
        SeriesExact { coeffs: c }
    }
}

impl Mul for &SeriesExact {
    type Output = SeriesExact;
    fn mul(self, rhs: &SeriesExact) -> SeriesExact {
        let order = self.order().min(rhs.order());
        let mut c = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                c[i + j] += a * b;
            }
        }
        SeriesExact { coeffs: c }
    }
}

/// `f(ς) = Σ t_s ς^s`, built from the Catalan recurrence.
pub fn catalan_series(order: usize) -> SeriesExact {
    SeriesExact::new(super::catalan_table(order), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn catalan_series_solves_its_equation() {
        // f = 1 + ς f²
        let f = catalan_series(60);
        let rhs = &SeriesExact::one(60) + &(&f * &f).shift(1);
        assert_eq!(f, rhs);
    }

    #[test]
    fn arithmetic() {
        let a = SeriesExact::new(ints(&[1, 1]), 4);
        assert_eq!(a.pow(3).coeffs(), &ints(&[1, 3, 3, 1, 0])[..]);
        assert_eq!(a.pow(3).derivative().coeffs(), &ints(&[3, 6, 3, 0])[..]);
        assert_eq!(a.shift(4).coeffs(), &ints(&[0, 0, 0, 0, 1])[..]);
        assert_eq!(a.pow(0), SeriesExact::one(4));
        assert!(a.coeff(5).is_err());
    }
}
