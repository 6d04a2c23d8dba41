//! Empirical tail of the largest eigenvalue at the n^{-2/3} scale for two dilution exponents.
//!
//!     cargo run --release --example edge_tail -- 500 200

use dilute_lab::sim::{crossover_point, edge_tail, EnsembleConfig, EntryDist};

fn main() -> dilute_lab::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let n = args.first().copied().unwrap_or(300);
    let samples = args.get(1).copied().unwrap_or(100);
    let grid = [-5.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 5.0, 10.0];
    let mut curves = Vec::new();
    for eps in [0.3, 0.5] {
        let (rho, _) = crossover_point(n, eps, 0.0);
        let cfg = EnsembleConfig::new(n, rho, EntryDist::Rademacher, 7)?;
        curves.push((eps, rho, edge_tail(&cfg, &grid, samples)?));
    }
    println!("    x   {}", curves.iter().map(|(e, r, _)| format!("eps={e} (rho={r:.0})    ")).collect::<String>());
    for (k, x) in grid.iter().enumerate() {
        let cols: String = curves
            .iter()
            .map(|(_, _, c)| format!("{:.3} +- {:.3}       ", c.tail_prob[k], c.stderr[k]))
            .collect();
        println!("{x:>5}   {cols}");
    }
    println!("agree within 3 joint sigma: {}", curves[0].2.agrees_with(&curves[1].2, 3.0));
    Ok(())
}
