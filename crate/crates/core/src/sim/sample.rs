use faer::{Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::EnsembleConfig;
use crate::error::{Error, Result};

/// Random stream of one sample: the config seed selects the key, the sample index the stream.
pub fn sample_rng(seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index);
    rng
}

/// Draws `H` with `H_ij = a_ij b_ij` above the diagonal, mirrored below, zero diagonal.
pub fn sample_matrix(config: &EnsembleConfig, sample_index: u64) -> Result<Mat<f64>> {
    config.validate()?;
    let n = config.n;
    let keep = config.keep_probability();
    let scale = config.rho.powf(-0.5);
    let cut = match config.dist.bound(config.v) {
        Some(_) => None,
        None => config.truncation_level(),
    };
    let mut rng = sample_rng(config.seed, sample_index);
    let mut h = Mat::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if keep < 1.0 && rng.random::<f64>() >= keep {
                continue;
            }
            let mut a = config.dist.sample(config.v, &mut rng);
            if let Some(u) = cut {
                if a.abs() > u {
                    a = 0.0;
                }
            }
            let x = a * scale;
            h[(i, j)] = x;
            h[(j, i)] = x;
        }
    }
    Ok(h)
}

/// Eigenvalues of a symmetric matrix in nondecreasing order.
pub fn eigenvalues(h: &Mat<f64>) -> Result<Vec<f64>> {
    if h.nrows() == 0 {
        return Ok(Vec::new());
    }
    h.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))
}

/// `Σ λ^{2s}` computed by repeated squaring.
pub fn trace_power(eigs: &[f64], s: u32) -> f64 {
    eigs.iter().map(|&l| (l * l).powi(s as i32)).sum()
}

pub fn spectral_radius(eigs: &[f64]) -> f64 {
    eigs.iter().fold(0.0, |m, &l| m.max(l.abs()))
}

/// `(Tr H^{2s}, λ_max)` with `λ_max = max |λ_i|`.
pub fn trace_power_and_lambda_max(h: &Mat<f64>, s: u32) -> Result<(f64, f64)> {
    let eigs = eigenvalues(h)?;
    Ok((trace_power(&eigs, s), spectral_radius(&eigs)))
}

pub fn frobenius_sq(h: &Mat<f64>) -> f64 {
    let mut acc = 0.0;
    for j in 0..h.ncols() {
        for i in 0..h.nrows() {
            acc += h[(i, j)] * h[(i, j)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::config::EntryDist;

    #[test]
    fn symmetric_with_zero_diagonal() {
        let cfg = EnsembleConfig::new(30, 4.0, EntryDist::Gaussian, 11).unwrap();
        let h = sample_matrix(&cfg, 3).unwrap();
        for i in 0..30 {
            assert_eq!(h[(i, i)], 0.0);
            for j in 0..30 {
                assert_eq!(h[(i, j)].to_bits(), h[(j, i)].to_bits());
            }
        }
    }

    #[test]
    fn deterministic_per_index() {
        let cfg = EnsembleConfig::new(20, 5.0, EntryDist::Rademacher, 99).unwrap();
        let a = sample_matrix(&cfg, 7).unwrap();
        let b = sample_matrix(&cfg, 7).unwrap();
        let c = sample_matrix(&cfg, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn full_density_is_wigner_scaling() {
        let cfg = EnsembleConfig::new(6, 6.0, EntryDist::Rademacher, 1).unwrap();
        let h = sample_matrix(&cfg, 0).unwrap();
        let expect = 0.5 / 6f64.sqrt();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert!((h[(i, j)].abs() - expect).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn trivial_spectra() {
        let zero = Mat::<f64>::zeros(3, 3);
        assert_eq!(trace_power_and_lambda_max(&zero, 2).unwrap(), (0.0, 0.0));
        let mut h = Mat::<f64>::zeros(2, 2);
        h[(0, 1)] = -0.3;
        h[(1, 0)] = -0.3;
        let (tr, lm) = trace_power_and_lambda_max(&h, 3).unwrap();
        assert!((tr - 2.0 * 0.3f64.powi(6)).abs() < 1e-15);
        assert!((lm - 0.3).abs() < 1e-15);
    }

    #[test]
    fn trace_square_is_frobenius() {
        let cfg = EnsembleConfig::new(4, 4.0, EntryDist::Gaussian, 5).unwrap();
        let h = sample_matrix(&cfg, 0).unwrap();
        let (tr, _) = trace_power_and_lambda_max(&h, 1).unwrap();
        let f = frobenius_sq(&h);
        assert!((tr - f).abs() <= 1e-12 * f);
    }

    #[test]
    fn heavy_tail_truncation() {
        let mut cfg = EnsembleConfig::new(64, 64.0, EntryDist::StudentT { phi: 0.0 }, 2).unwrap();
        cfg.v = 10.0;
        cfg.truncation = Some(crate::sim::Truncation { phi: 0.0, eps: 0.0 });
        let u = cfg.truncation_level().unwrap() / 8.0;
        let h = sample_matrix(&cfg, 0).unwrap();
        let max = (0..64)
            .flat_map(|i| (0..64).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].abs())
            .fold(0.0, f64::max);
        assert!(max <= u + 1e-12);
    }
}
