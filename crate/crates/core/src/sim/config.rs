use rand::Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Law of the entries `a_ij` before scaling to standard deviation `v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntryDist {
    Rademacher,
    Gaussian,
    /// Student-t with `13 + 2φ` degrees of freedom, so moments up to order `12 + 2φ` are finite.
    StudentT { phi: f64 },
    /// Symmetric law taking `±values[i]` with probability `probs[i]`, rescaled to variance `v²`.
    Discrete { values: Vec<f64>, probs: Vec<f64> },
}

impl EntryDist {
    pub fn name(&self) -> &'static str {
        match self {
            EntryDist::Rademacher => "rademacher",
            EntryDist::Gaussian => "gaussian",
            EntryDist::StudentT { .. } => "student_t",
            EntryDist::Discrete { .. } => "discrete",
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            EntryDist::StudentT { phi } if !(*phi >= 0.0) => {
                Err(Error::Config(format!("phi must be >= 0, got {phi}")))
            }
            EntryDist::Discrete { values, probs } => {
                let total: f64 = probs.iter().sum();
                if values.is_empty()
                    || values.len() != probs.len()
                    || probs.iter().any(|&p| p < 0.0)
                    || (total - 1.0).abs() > 1e-9
                    || values.iter().zip(probs).all(|(v, p)| *v == 0.0 || *p == 0.0)
                {
                    Err(Error::Config(
                        "discrete law needs matching values/probs, probabilities summing to 1 and nonzero variance".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// `E a^{2l}` for `a` with variance `v²`, or `None` when infinite.
    pub fn even_moment(&self, two_l: u32, v: f64) -> Option<f64> {
        let l = two_l / 2;
        let v2l = v.powi(two_l as i32);
        match self {
            EntryDist::Rademacher => Some(v2l),
            EntryDist::Gaussian => Some(v2l * (1..=l).map(|k| (2 * k - 1) as f64).product::<f64>()),
            EntryDist::StudentT { phi } => {
                let nu = 13.0 + 2.0 * phi;
                if two_l as f64 >= nu {
                    return None;
                }
                // E T^{2l} = ν^l Π_{k=1}^{l} (2k-1)/(ν-2k); rescale by ((ν-2)/ν)^l
                let raw: f64 = (1..=l)
                    .map(|k| (2 * k - 1) as f64 / (nu - 2.0 * k as f64))
                    .product::<f64>()
                    * nu.powi(l as i32);
                Some(v2l * raw * ((nu - 2.0) / nu).powi(l as i32))
            }
            EntryDist::Discrete { values, probs } => {
                let m2: f64 = values.iter().zip(probs).map(|(x, p)| p * x * x).sum();
                let m: f64 = values
                    .iter()
                    .zip(probs)
                    .map(|(x, p)| p * x.abs().powi(two_l as i32))
                    .sum();
                Some(v2l * m / m2.powi(l as i32))
            }
        }
    }

    /// Largest possible `|a|`, or `None` for unbounded laws.
    pub fn bound(&self, v: f64) -> Option<f64> {
        match self {
            EntryDist::Rademacher => Some(v),
            EntryDist::Discrete { values, probs } => {
                let m2: f64 = values.iter().zip(probs).map(|(x, p)| p * x * x).sum();
                let top = values
                    .iter()
                    .zip(probs)
                    .filter(|(_, p)| **p > 0.0)
                    .map(|(x, _)| x.abs())
                    .fold(0.0, f64::max);
                Some(v * top / m2.sqrt())
            }
            _ => None,
        }
    }

    /// Draws one entry with variance `v²`.
    pub fn sample<R: Rng + ?Sized>(&self, v: f64, rng: &mut R) -> f64 {
        let sign = |rng: &mut R| if rng.random::<bool>() { 1.0 } else { -1.0 };
        match self {
            EntryDist::Rademacher => v * sign(rng),
            EntryDist::Gaussian => {
                let z: f64 = StandardNormal.sample(rng);
                v * z
            }
            EntryDist::StudentT { phi } => {
                let nu = 13.0 + 2.0 * phi;
                let t: f64 = StudentT::new(nu).expect("valid degrees of freedom").sample(rng);
                v * t * ((nu - 2.0) / nu).sqrt()
            }
            EntryDist::Discrete { values, probs } => {
                let m2: f64 = values.iter().zip(probs).map(|(x, p)| p * x * x).sum();
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut pick = values[values.len() - 1];
                for (x, p) in values.iter().zip(probs) {
                    acc += p;
                    if u < acc {
                        pick = *x;
                        break;
                    }
                }
                sign(rng) * v * pick.abs() / m2.sqrt()
            }
        }
    }
}

/// Entry truncation at `U_n = n^δ` with `δ = (ε₀ + ε)/6`, `ε₀ = 3/(6 + φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub phi: f64,
    pub eps: f64,
}

impl Truncation {
    pub fn delta(&self) -> f64 {
        (3.0 / (6.0 + self.phi) + self.eps) / 6.0
    }

    pub fn level(&self, n: usize) -> f64 {
        (n as f64).powf(self.delta())
    }
}

fn default_v() -> f64 {
    0.5
}

fn default_dist() -> EntryDist {
    EntryDist::Rademacher
}

/// Parameters of the dilute Wigner ensemble being sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub n: usize,
    pub rho: f64,
    #[serde(default = "default_dist")]
    pub dist: EntryDist,
    #[serde(default = "default_v")]
    pub v: f64,
    #[serde(default)]
    pub truncation: Option<Truncation>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub dense_cap: Option<usize>,
}

impl EnsembleConfig {
    pub fn new(n: usize, rho: f64, dist: EntryDist, seed: u64) -> Result<Self> {
        let cfg = EnsembleConfig {
            n,
            rho,
            dist,
            v: default_v(),
            truncation: None,
            seed,
            dense_cap: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.rho > 0.0) || self.rho > self.n as f64 {
            return Err(Error::Config(format!(
                "rho must lie in (0, n] = (0, {}], got {}",
                self.n, self.rho
            )));
        }
        if !(self.v > 0.0) {
            return Err(Error::Config(format!("v must be positive, got {}", self.v)));
        }
        let cap = self.dense_cap.unwrap_or(DEFAULT_DENSE_CAP);
        if self.n > cap {
            return Err(Error::Guardrail {
                what: format!("dense matrices of size n = {} exceed the cap {cap}", self.n),
                estimate: format!("{:.1} MiB per sample", (self.n * self.n * 8) as f64 / 1048576.0),
            });
        }
        self.dist.validate()
    }

    /// Probability that an off-diagonal entry is kept.
    pub fn keep_probability(&self) -> f64 {
        self.rho / self.n as f64
    }

    /// Truncation level, if truncation is on.
    pub fn truncation_level(&self) -> Option<f64> {
        self.truncation.map(|t| t.level(self.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn moments_of_laws() {
        assert_eq!(EntryDist::Rademacher.even_moment(4, 0.5), Some(0.0625));
        assert_eq!(EntryDist::Gaussian.even_moment(4, 0.5), Some(3.0 * 0.0625));
        let t = EntryDist::StudentT { phi: 1.0 };
        assert!((t.even_moment(2, 0.5).unwrap() - 0.25).abs() < 1e-12);
        assert!(t.even_moment(16, 0.5).is_none());
        let d = EntryDist::Discrete {
            values: vec![1.0, 3.0],
            probs: vec![0.5, 0.5],
        };
        assert!((d.even_moment(2, 0.5).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn sampled_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dist in [
            EntryDist::Rademacher,
            EntryDist::Gaussian,
            EntryDist::StudentT { phi: 1.0 },
            EntryDist::Discrete {
                values: vec![1.0, 3.0],
                probs: vec![0.7, 0.3],
            },
        ] {
            let n = 200_000;
            let m2: f64 = (0..n).map(|_| dist.sample(0.5, &mut rng).powi(2)).sum::<f64>() / n as f64;
            assert!((m2 - 0.25).abs() < 0.01, "{dist:?}: {m2}");
        }
    }

    #[test]
    fn config_checks() {
        assert!(EnsembleConfig::new(10, 11.0, EntryDist::Rademacher, 0).is_err());
        assert!(EnsembleConfig::new(10, 0.0, EntryDist::Rademacher, 0).is_err());
        let err = EnsembleConfig::new(5000, 10.0, EntryDist::Rademacher, 0).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let cfg: EnsembleConfig = serde_json::from_str(r#"{"n": 50, "rho": 5}"#).unwrap();
        assert_eq!(cfg.dist, EntryDist::Rademacher);
        assert_eq!(cfg.v, 0.5);
    }

    #[test]
    fn truncation_exponent() {
        let t = Truncation { phi: 0.0, eps: 0.0 };
        assert!((t.delta() - 1.0 / 12.0).abs() < 1e-15);
        assert!((t.level(4096) - 2.0).abs() < 1e-12);
    }
}
