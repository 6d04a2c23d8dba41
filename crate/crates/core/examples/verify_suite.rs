//! Runs one invariant suite and prints each check.
//!
//!     cargo run --release --example verify_suite -- catalan

use dilute_lab::verify::run_suite;

fn main() -> dilute_lab::Result<()> {
    let suite = std::env::args().nth(1).unwrap_or_else(|| "walks".to_string());
    let report = run_suite(&suite)?;
    for c in &report.checks {
        println!("{:<8?} {:<40} {}", c.status, c.id, c.detail);
    }
    std::process::exit(report.exit_code());
}
