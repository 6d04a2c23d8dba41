//! Match grid of multi-edge counts against the binomial closed form, as CSV on stdout.
//!
//!     cargo run --example conjecture_grid -- 10 10

use dilute_lab::catalan::conjecture_report;
use dilute_lab::report::{emit_report, Format};

fn main() -> dilute_lab::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let l_max = args.next().unwrap_or(10);
    let s_max = args.next().unwrap_or(10);
    let report = conjecture_report(l_max, s_max);
    let rows = report.rows.iter().map(|r| {
        vec![
            r.l.into(),
            r.s.into(),
            r.value.clone().into(),
            r.closed_form.clone().into(),
            r.matches.into(),
            r.within_power_bound.into(),
        ]
    });
    let cols = ["l", "s", "value", "closed_form", "match", "within_power_bound"];
    emit_report(rows, &cols, Format::Csv, Box::new(std::io::stdout()))?;
    eprintln!(
        "{} mismatches; N <= 2^l s t_s everywhere: {}",
        report.mismatches().count(),
        report.power_bound_holds()
    );
    Ok(())
}
