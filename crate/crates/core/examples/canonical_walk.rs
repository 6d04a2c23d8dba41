//! Canonicalizes a trajectory and walks through its marked steps, census, reductions and cells.
//!
//!     cargo run --example canonical_walk -- 5,2,7,9,7,1,2,7,9,7,2,7,2,1,7,2,5

use dilute_lab::walks::{
    bts_and_cells, census, label_steps, max_exit_degree, strong_reduce, walk_from_trajectory,
    walk_graph, weak_reduce, Trajectory,
};

fn main() -> dilute_lab::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "5,2,7,9,7,1,2,7,9,7,2,7,2,1,7,2,5".to_string());
    let traj = Trajectory::parse(&text, None)?;
    let walk = walk_from_trajectory(&traj);
    println!("trajectory  {traj}");
    println!("walk        {walk}");

    let labels = label_steps(&walk);
    if !labels.is_even {
        println!("not an even walk; its moment weight vanishes");
        return Ok(());
    }
    let marks: String = labels.marked.iter().map(|&m| if m { '+' } else { '-' }).collect();
    println!("marks       {marks}");
    println!("theta*      {}", labels.max_height());

    let graph = walk_graph(&walk);
    let (beta, d) = max_exit_degree(&walk);
    println!("|V|         {}  (sigma = {})", walk.vertex_count(), graph.sigma());
    println!("max exit    D = {d} at letter {beta}");

    let c = census(&walk, 4)?;
    let p = &c.params;
    println!(
        "census      mu1={} r={} p={} q={} mu2''={} u2={} mu3={} u3={} nu={:?}",
        p.mu1, p.r, p.p, p.q, p.mu2_pp, p.u2, p.mu3(), p.u3, p.nu_bar
    );

    let strong = strong_reduce(&walk);
    let weak = weak_reduce(&walk);
    println!("strong      {strong}  kept steps {:?}", strong.kept);
    println!("weak        {weak}");

    let cells = bts_and_cells(&walk)?;
    println!(
        "cells       I={} M={} K={} J={} F={}  R={}",
        cells.i,
        cells.m,
        cells.k,
        cells.j,
        cells.f(),
        cells.r
    );
    for b in &cells.remote_bts {
        println!("  remote BTS at y={} via letter {}: ell={} psi={:?}", b.y, b.vertex, b.ell, b.psi);
    }
    for (name, ok) in cells.checks(&walk) {
        println!("  {name:<24} {ok}");
    }
    Ok(())
}
