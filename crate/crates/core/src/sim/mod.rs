//! Monte Carlo sampling of dilute Wigner matrices.

mod config;
mod crossover;
mod sample;
mod stats;

pub use config::{EnsembleConfig, EntryDist, Truncation, DEFAULT_DENSE_CAP};
pub use crossover::{crossover_point, crossover_scan, CrossoverPlan, CrossoverRow, DEFAULT_FLOP_BUDGET};
pub use sample::{
    eigenvalues, frobenius_sq, sample_matrix, sample_rng, spectral_radius, trace_power,
    trace_power_and_lambda_max,
};
pub use stats::{edge_tail, estimate_moment, estimate_moments, map_spectra, with_threads, EdgeCurve, SampleStats};
