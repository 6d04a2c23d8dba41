//! Exact tree counts: multi-edge generating functions, root sub-clusters and heights.

use dilute_lab::catalan::{
    catalan, check_lemma_6_1, multi_edge_closed_form, multi_edge_count_enum, multi_edge_gf_series,
    root_subcluster_table, HeightTable,
};
use num_bigint::BigInt;

fn main() -> dilute_lab::Result<()> {
    println!("t_s for s = 0..=12:");
    let ts: Vec<String> = (0..=12).map(|s| catalan(s).to_string()).collect();
    println!("  {}", ts.join(" "));

    println!("\nN^(l)_s from the generating function vs (2s)!/((s-l)!(s+l)!) and brute force:");
    for l in 1..=3 {
        let series = multi_edge_gf_series(l, 10);
        for s in l..=10 {
            let gf = &series.coeffs()[s];
            let brute = multi_edge_count_enum(l, s, 12)?[l - 1].clone();
            let closed = multi_edge_closed_form(l, s);
            println!("  l={l} s={s:>2}  {gf:>8} {closed:>8} {brute:>8}");
        }
    }

    println!("\nt~_s(d): trees with s edges and d root children");
    let table = root_subcluster_table(8);
    for (s, row) in table.iter().enumerate().skip(1) {
        let cells: Vec<String> = row[1..].iter().map(BigInt::to_string).collect();
        println!("  s={s}  {}", cells.join(" "));
    }
    let lemma = check_lemma_6_1(300);
    println!(
        "4^d t~_s(d) <= 3^d t_s on 3 <= d <= s <= 300: {} ({} pairs)",
        lemma.holds(),
        lemma.checked
    );

    let heights = HeightTable::new(8);
    let dist: Vec<String> = heights.distribution(8).iter().map(BigInt::to_string).collect();
    println!("\ntrees with 8 edges by height: {}", dist.join(" "));
    Ok(())
}
