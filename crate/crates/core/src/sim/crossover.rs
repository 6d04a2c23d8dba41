use serde::Serialize;

use super::config::{EnsembleConfig, EntryDist, DEFAULT_DENSE_CAP};
use super::stats::{estimate_moment, SampleStats};
use crate::error::{Error, Result};
use crate::oracle::theorem_7_1_rhs;

/// Default ceiling on `samples · n³ · laws` summed over a scan.
pub const DEFAULT_FLOP_BUDGET: f64 = 1e14;

#[derive(Clone, Debug, Serialize)]
pub struct CrossoverPlan {
    pub n_list: Vec<usize>,
    pub eps_grid: Vec<f64>,
    pub chi: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub v: f64,
    pub dense_cap: usize,
    pub flop_budget: f64,
}

impl CrossoverPlan {
    pub fn new(n_list: Vec<usize>, eps_grid: Vec<f64>, chi: f64, n_samples: usize, seed: u64) -> Self {
        CrossoverPlan {
            n_list,
            eps_grid,
            chi,
            n_samples,
            seed,
            v: 0.5,
            dense_cap: DEFAULT_DENSE_CAP,
            flop_budget: DEFAULT_FLOP_BUDGET,
        }
    }

    fn check(&self) -> Result<()> {
        if let Some(&n) = self.n_list.iter().find(|&&n| n > self.dense_cap) {
            return Err(Error::Guardrail {
                what: format!("n = {n} exceeds the dense eigensolver cap {}", self.dense_cap),
                estimate: format!("{:.1e} flops per sample; lower n or raise the cap", (n as f64).powi(3)),
            });
        }
        if let Some(&e) = self.eps_grid.iter().find(|&&e| e > 0.5) {
            return Err(Error::Config(format!("eps = {e} gives rho > n; use eps <= 1/2")));
        }
        let work: f64 = self.n_list.iter().map(|&n| (n as f64).powi(3)).sum::<f64>()
            * self.eps_grid.len() as f64
            * self.n_samples as f64
            * 2.0;
        if work > self.flop_budget {
            return Err(Error::Guardrail {
                what: "crossover scan exceeds the eigensolver budget".into(),
                estimate: format!("{work:.1e} flops vs budget {:.1e}; fewer samples or smaller n", self.flop_budget),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossoverRow {
    pub n: usize,
    pub eps: f64,
    pub rho: f64,
    pub s: u32,
    /// `s / n^{2/3}`.
    pub chi: f64,
    /// `ρ / n^{2/3}`.
    pub zeta: f64,
    pub rademacher: SampleStats,
    pub gaussian: SampleStats,
    pub v4_rademacher: f64,
    pub v4_gaussian: f64,
    /// Gaussian minus Rademacher mean.
    pub diff: f64,
    /// `diff` over its joint standard error.
    pub diff_z: f64,
    pub thm71_rhs: f64,
    /// Rademacher mean over `thm71_rhs`.
    pub thm71_ratio: f64,
}

impl CrossoverRow {
    /// Rademacher estimate at least `(1 - slack)` times the lower bound.
    pub fn thm71_holds(&self, slack: f64) -> bool {
        self.rademacher.mean >= (1.0 - slack) * self.thm71_rhs
    }

    /// The law with the larger fourth moment gives the larger estimate.
    pub fn v4_ordering_holds(&self) -> bool {
        self.diff > 0.0
    }
}

/// `ρ = n^{2/3(1+ε)}` and `s = ⌊χ n^{2/3}⌋`.
pub fn crossover_point(n: usize, eps: f64, chi: f64) -> (f64, u32) {
    let base = (n as f64).powf(2.0 / 3.0);
    let rho = base.powf(1.0 + eps).min(n as f64);
    let s = (chi * base + 1e-9).floor() as u32;
    (rho, s)
}

pub fn crossover_scan(plan: &CrossoverPlan) -> Result<Vec<CrossoverRow>> {
    plan.check()?;
    let mut rows = Vec::new();
    for &n in &plan.n_list {
        let base = (n as f64).powf(2.0 / 3.0);
        for &eps in &plan.eps_grid {
            let (rho, s) = crossover_point(n, eps, plan.chi);
            let run = |dist: EntryDist, seed: u64| -> Result<SampleStats> {
                let mut cfg = EnsembleConfig::new(n, rho, dist, seed)?;
                cfg.v = plan.v;
                cfg.dense_cap = Some(plan.dense_cap);
                estimate_moment(&cfg, s, plan.n_samples)
            };
            let rademacher = run(EntryDist::Rademacher, plan.seed)?;
            let gaussian = run(EntryDist::Gaussian, plan.seed.wrapping_add(1))?;
            let v4_rademacher = EntryDist::Rademacher.even_moment(4, plan.v).unwrap();
            let v4_gaussian = EntryDist::Gaussian.even_moment(4, plan.v).unwrap();
            let diff = gaussian.mean - rademacher.mean;
            let joint = (gaussian.stderr.powi(2) + rademacher.stderr.powi(2)).sqrt();
            let chi = s as f64 / base;
            let zeta = rho / base;
            let thm71_rhs = theorem_7_1_rhs(chi, zeta, v4_rademacher);
            rows.push(CrossoverRow {
                n,
                eps,
                rho,
                s,
                chi,
                zeta,
                thm71_ratio: rademacher.mean / thm71_rhs,
                rademacher,
                gaussian,
                v4_rademacher,
                v4_gaussian,
                diff,
                diff_z: if joint > 0.0 { diff / joint } else { 0.0 },
                thm71_rhs,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_point() {
        let (rho, s) = crossover_point(1000, 0.0, 1.0);
        assert!((rho - 100.0).abs() < 1e-9);
        assert_eq!(s, 100);
        let (rho, _) = crossover_point(1000, 0.5, 1.0);
        assert!((rho - 1000.0).abs() < 1e-6);
    }

    #[test]
    fn guardrails() {
        let plan = CrossoverPlan::new(vec![5000], vec![0.0], 1.0, 10, 0);
        assert_eq!(crossover_scan(&plan).unwrap_err().exit_code(), 3);
        let plan = CrossoverPlan::new(vec![100], vec![0.7], 1.0, 10, 0);
        assert_eq!(crossover_scan(&plan).unwrap_err().exit_code(), 2);
        let plan = CrossoverPlan::new(vec![4000], vec![0.0, 0.5], 1.0, 1_000_000, 0);
        assert_eq!(crossover_scan(&plan).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn small_scan_runs() {
        let plan = CrossoverPlan::new(vec![27], vec![0.0, 0.5], 1.0, 20, 5);
        let rows = crossover_scan(&plan).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].s, 9);
        assert!(rows.iter().all(|r| r.thm71_rhs > 0.0 && r.rademacher.n_samples == 20));
    }
}
