//! Normalized trace moments of an undiluted matrix against the semicircle values t_s/4^s.
//!
//!     cargo run --release --example semicircle -- 1000 40

use dilute_lab::catalan::catalan;
use dilute_lab::sim::{estimate_moments, EnsembleConfig, EntryDist};
use num_traits::ToPrimitive;

fn main() -> dilute_lab::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let n = args.first().copied().unwrap_or(500);
    let samples = args.get(1).copied().unwrap_or(20);
    let cfg = EnsembleConfig::new(n, n as f64, EntryDist::Rademacher, 2024)?;
    let stats = estimate_moments(&cfg, &[1, 2, 3, 4, 5], samples)?;
    println!(" s   (1/n) mean Tr H^2s   t_s/4^s    rel. error");
    for (k, st) in stats.iter().enumerate() {
        let s = k as i32 + 1;
        let target = catalan(s as usize).to_f64().unwrap() / 4f64.powi(s);
        let got = st.mean / n as f64;
        println!(
            " {s}   {got:.6} +- {:.6}   {target:.6}   {:+.3}%",
            st.stderr / n as f64,
            100.0 * (got - target) / target
        );
    }
    Ok(())
}
