//! Per-class exact weights against the closed-form class bound.
//!
//!     cargo run --example class_audit -- 4 6 audit.csv

use std::path::PathBuf;

use dilute_lab::oracle::{class_weight_audit, MomentSpec, OracleLaw};
use dilute_lab::report::{Format, ReportWriter};
use num_rational::BigRational;

fn main() -> dilute_lab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let s: usize = args.first().map_or(4, |a| a.parse().expect("s"));
    let n: u32 = args.get(1).map_or(6, |a| a.parse().expect("n"));
    let out = args.get(2).map(PathBuf::from);

    let spec = MomentSpec::with_law(n, BigRational::from_integer(n.into()), s, OracleLaw::Rademacher)?;
    let report = class_weight_audit(&spec, 4)?;
    let cols = ["u", "D", "mu1", "mu2", "mu3", "sigma", "walks", "weight", "bound", "within_bound"];
    let mut w = match &out {
        Some(p) => ReportWriter::create(p, Format::from_path(p), &cols, None)?,
        None => ReportWriter::stdout(Format::Csv, &cols, None)?,
    };
    for r in &report.rows {
        w.write(vec![
            r.u.into(),
            r.d.into(),
            r.params.mu1.into(),
            r.params.mu2().into(),
            r.params.mu3().into(),
            r.params.sigma.into(),
            r.walks.into(),
            r.weight.clone().into(),
            r.bound.into(),
            r.within_bound.into(),
        ])?;
    }
    w.finish()?;
    eprintln!(
        "s={s} n={n}: {} classes, M = {}, tree share {:.3}, all within bound: {}",
        report.rows.len(),
        report.total,
        report.tree_share,
        report.all_within()
    );
    Ok(())
}
