use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use super::config::EnsembleConfig;
use super::sample::{eigenvalues, sample_matrix, spectral_radius, trace_power};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleStats {
    pub quantity: String,
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub min: f64,
    pub max: f64,
    /// Samples dropped because the eigensolver failed.
    pub discarded: usize,
}

impl SampleStats {
    /// Summarises `values` in the given order.
    pub fn from_values(quantity: impl Into<String>, values: &[f64], discarded: usize) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 samples, got {}",
                values.len()
            )));
        }
        let (mut mean, mut m2) = (0.0, 0.0);
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for (k, &x) in values.iter().enumerate() {
            let d = x - mean;
            mean += d / (k + 1) as f64;
            m2 += d * (x - mean);
            min = min.min(x);
            max = max.max(x);
        }
        let n = values.len() as f64;
        let std = (m2 / (n - 1.0)).sqrt();
        Ok(SampleStats {
            quantity: quantity.into(),
            mean,
            stderr: std / n.sqrt(),
            n_samples: values.len(),
            min,
            max,
            discarded,
        })
    }

    /// `|mean - target| / stderr`. A degenerate sample (zero stderr) scores 0 when
    /// it matches `target` to rounding and infinity otherwise.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff <= 1e-12 * target.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Spectra of samples `0..n_samples`, mapped through `f` in parallel and returned in index order.
/// Samples whose eigensolver fails are logged and dropped.
pub fn map_spectra<T, F>(config: &EnsembleConfig, n_samples: usize, f: F) -> Result<(Vec<T>, usize)>
where
    T: Send,
    F: Fn(&[f64]) -> T + Sync,
{
    config.validate()?;
    faer::set_global_parallelism(faer::Par::Seq);
    let out: Vec<Result<Option<T>>> = (0..n_samples as u64)
        .into_par_iter()
        .map(|idx| {
            let h = sample_matrix(config, idx)?;
            match eigenvalues(&h) {
                Ok(eigs) => Ok(Some(f(&eigs))),
                Err(e) => {
                    warn!("sample {idx} discarded: {e}");
                    Ok(None)
                }
            }
        })
        .collect();
    let mut kept = Vec::with_capacity(n_samples);
    let mut dropped = 0;
    for r in out {
        match r? {
            Some(x) => kept.push(x),
            None => dropped += 1,
        }
    }
    Ok((kept, dropped))
}

/// Sample mean of `Tr H^{2s}`.
pub fn estimate_moment(config: &EnsembleConfig, s: u32, n_samples: usize) -> Result<SampleStats> {
    Ok(estimate_moments(config, &[s], n_samples)?.remove(0))
}

/// Sample means of `Tr H^{2s}` for several `s`, all from the same matrices.
pub fn estimate_moments(config: &EnsembleConfig, s_list: &[u32], n_samples: usize) -> Result<Vec<SampleStats>> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {n_samples}")));
    }
    let (rows, dropped) = map_spectra(config, n_samples, |eigs| {
        s_list.iter().map(|&s| trace_power(eigs, s)).collect::<Vec<f64>>()
    })?;
    s_list
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let col: Vec<f64> = rows.iter().map(|r| r[k]).collect();
            SampleStats::from_values(format!("tr_h^{}", 2 * s), &col, dropped)
        })
        .collect()
}

/// Empirical tail of `λ_max` at the thresholds `2v(1 + x n^{-2/3})`.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeCurve {
    pub x_grid: Vec<f64>,
    pub thresholds: Vec<f64>,
    /// Samples with `λ_max` above each threshold.
    pub exceed: Vec<usize>,
    /// Samples with `λ_max` between consecutive thresholds; the last bin is open above.
    pub bins: Vec<usize>,
    pub tail_prob: Vec<f64>,
    pub stderr: Vec<f64>,
    pub lambda_max: SampleStats,
}

impl EdgeCurve {
    pub fn from_lambdas(config: &EnsembleConfig, x_grid: &[f64], lambdas: &[f64], discarded: usize) -> Result<Self> {
        if x_grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("x_grid must be sorted ascending".into()));
        }
        let scale = (config.n as f64).powf(-2.0 / 3.0);
        let thresholds: Vec<f64> = x_grid.iter().map(|x| 2.0 * config.v * (1.0 + x * scale)).collect();
        let total = lambdas.len() as f64;
        let exceed: Vec<usize> = thresholds
            .iter()
            .map(|&t| lambdas.iter().filter(|&&l| l > t).count())
            .collect();
        let bins = (0..exceed.len())
            .map(|k| exceed[k] - exceed.get(k + 1).copied().unwrap_or(0))
            .collect();
        let tail_prob: Vec<f64> = exceed.iter().map(|&c| c as f64 / total).collect();
        let stderr = tail_prob.iter().map(|p| (p * (1.0 - p) / total).sqrt()).collect();
        Ok(EdgeCurve {
            x_grid: x_grid.to_vec(),
            thresholds,
            exceed,
            bins,
            tail_prob,
            stderr,
            lambda_max: SampleStats::from_values("lambda_max", lambdas, discarded)?,
        })
    }

    /// Whether two curves agree pointwise within `k` joint standard errors.
    pub fn agrees_with(&self, other: &EdgeCurve, k: f64) -> bool {
        self.tail_prob
            .iter()
            .zip(&other.tail_prob)
            .zip(self.stderr.iter().zip(&other.stderr))
            .all(|((a, b), (sa, sb))| (a - b).abs() <= k * (sa * sa + sb * sb).sqrt().max(1e-12))
    }
}

pub fn edge_tail(config: &EnsembleConfig, x_grid: &[f64], n_samples: usize) -> Result<EdgeCurve> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {n_samples}")));
    }
    let (lambdas, dropped) = map_spectra(config, n_samples, spectral_radius)?;
    EdgeCurve::from_lambdas(config, x_grid, &lambdas, dropped)
}

/// Runs `f` on a pool with `threads` workers, or on the global pool when `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::config::EntryDist;

    #[test]
    fn welford_matches_two_pass() {
        let xs = [1.0, 4.0, 2.5, 8.0, -1.0];
        let st = SampleStats::from_values("x", &xs, 0).unwrap();
        let mean = xs.iter().sum::<f64>() / 5.0;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 4.0;
        assert!((st.mean - mean).abs() < 1e-14);
        assert!((st.stderr - (var / 5.0).sqrt()).abs() < 1e-14);
        assert_eq!((st.min, st.max), (-1.0, 8.0));
        assert!(SampleStats::from_values("x", &[1.0], 0).is_err());
    }

    #[test]
    fn zeroth_moment_is_n() {
        let cfg = EnsembleConfig::new(7, 3.0, EntryDist::Gaussian, 1).unwrap();
        let st = estimate_moment(&cfg, 0, 5).unwrap();
        assert_eq!(st.mean, 7.0);
        assert_eq!(st.stderr, 0.0);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let cfg = EnsembleConfig::new(12, 4.0, EntryDist::Gaussian, 3).unwrap();
        let a = with_threads(Some(1), || estimate_moments(&cfg, &[1, 2], 40)).unwrap().unwrap();
        let b = with_threads(Some(3), || estimate_moments(&cfg, &[1, 2], 40)).unwrap().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_curve_extremes() {
        let cfg = EnsembleConfig::new(60, 60.0, EntryDist::Rademacher, 4).unwrap();
        let curve = edge_tail(&cfg, &[-50.0, 0.0, 200.0], 30).unwrap();
        assert_eq!(curve.tail_prob[0], 1.0);
        assert_eq!(curve.tail_prob[2], 0.0);
        assert!(curve.tail_prob.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(curve.bins.iter().sum::<usize>(), 30);
        assert!(edge_tail(&cfg, &[1.0, 0.0], 3).is_err());
    }
}
