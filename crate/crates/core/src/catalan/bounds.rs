use num_traits::ToPrimitive;

use super::height::HeightTable;
use crate::walks::DiagramParams;

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `ln(x^k / k!)`, with `0^0 = 1`.
pub fn ln_pow_over_fact(x: f64, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    k as f64 * x.ln() - ln_factorial(k)
}

/// Upper bound on the number of walks with census `S`, Dyck height `θ*` and maximal exit degree `D`.
pub fn bound_3_6(params: &DiagramParams, theta_star: usize, d: usize) -> f64 {
    let s = params.s as f64;
    let k0 = params.k0 as f64;
    let d = d as f64;
    let mut ln = ln_pow_over_fact(6.0 * s * theta_star as f64, params.r)
        + ln_pow_over_fact(3.0 * s * d, params.p)
        + ln_pow_over_fact(3.0 * s * k0, params.q)
        + ln_pow_over_fact(s * s / 2.0, params.mu2_pp)
        + ln_pow_over_fact(8.0 * k0.powi(4) * s * params.mu2_p() as f64, params.u2)
        + ln_pow_over_fact(s * s * (d + k0), params.mu3_p)
        + ln_pow_over_fact(s.powi(3) / 6.0, params.mu3_pp)
        + ln_pow_over_fact(16.0 * k0.powi(5) * s * params.mu3() as f64, params.u3);
    for (&k, &nu) in &params.nu_bar {
        let kf = k as f64;
        let term = kf * (2.0 * kf * s).ln() - ln_factorial(k);
        ln += nu as f64 * term - ln_factorial(nu);
    }
    ln.exp()
}

/// Parameters of the weighted class bound besides the census itself.
#[derive(Clone, Copy, Debug)]
pub struct ClassBoundInput {
    /// Dyck height `u`.
    pub u: usize,
    /// Maximal exit degree.
    pub d: usize,
    pub n: f64,
    pub rho: f64,
    /// `Û² = U²/V̂_2`.
    pub u_hat_sq: f64,
    pub v2_hat: f64,
}

/// Upper bound on `Σ Π̂_a Π_b` over all trajectories whose walks have census
/// `S`, height `u` and maximal exit degree `D`. Includes the leading factor `n`
/// for the free choice of the starting vertex.
pub fn bound_3_7(params: &DiagramParams, input: &ClassBoundInput, heights: &HeightTable) -> f64 {
    let s_us = params.s;
    let s = s_us as f64;
    let k0 = params.k0 as f64;
    let ClassBoundInput {
        u,
        d,
        n,
        rho,
        u_hat_sq,
        v2_hat,
    } = *input;
    let d = d as f64;
    let theta = heights.exactly(u, s_us).to_f64().unwrap_or(f64::INFINITY);
    let sigma = params.sigma_census_short() as f64;
    let mut ln = n.ln() + s * v2_hat.ln() + theta.ln() - (s - sigma).powi(2) / (2.0 * n)
        + ln_pow_over_fact(s * s / (2.0 * n), params.mu2_pp);
    // H2
    ln += ln_pow_over_fact(6.0 * s * u as f64 / n, params.r)
        + ln_pow_over_fact(3.0 * s * d * u_hat_sq / rho, params.p)
        + ln_pow_over_fact(3.0 * s * k0 * u_hat_sq / rho, params.q)
        + ln_pow_over_fact(8.0 * k0.powi(4) * s * params.mu2_p() as f64 * u_hat_sq / rho, params.u2);
    // H3
    ln += ln_pow_over_fact(9.0 * (d + k0) * s * s * u_hat_sq / (n * rho), params.mu3_p)
        + ln_pow_over_fact(3.0 * s.powi(3) / (2.0 * n * n), params.mu3_pp)
        + ln_pow_over_fact(16.0 * k0.powi(5) * s * params.mu3() as f64 * u_hat_sq / rho, params.u3);
    // H for the heavy vertices
    for (&k, &nu) in &params.nu_bar {
        let kf = k as f64;
        let term = n.ln() + kf * (2.0 * kf * s).ln() + kf * u_hat_sq.ln()
            - ln_factorial(k)
            - kf * rho.ln();
        ln += nu as f64 * term - ln_factorial(nu);
    }
    ln.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_census() {
        let p = DiagramParams::zero(5, 4);
        assert_eq!(bound_3_6(&p, 3, 2), 1.0);
        let heights = HeightTable::new(5);
        let input = ClassBoundInput {
            u: 3,
            d: 2,
            n: 7.0,
            rho: 3.0,
            u_hat_sq: 1.0,
            v2_hat: 0.25,
        };
        let want = 7.0 * 0.25f64.powi(5) * 18.0 * (-25.0f64 / 14.0).exp();
        let got = bound_3_7(&p, &input, &heights);
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
    }

    #[test]
    fn single_open_vertex() {
        let mut p = DiagramParams::zero(6, 4);
        p.r = 1;
        let got = bound_3_6(&p, 3, 2);
        assert!((got - 6.0 * 6.0 * 3.0).abs() < 1e-9);
    }

    #[test]
    fn heavy_vertex_factor() {
        let mut p = DiagramParams::zero(6, 2);
        p.nu_bar.insert(3, 2);
        // ((2·3·6)^3 / 3!)^2 / 2!
        let want = (36f64.powi(3) / 6.0).powi(2) / 2.0;
        assert!((bound_3_6(&p, 1, 1) - want).abs() < 1e-6 * want);
    }
}
