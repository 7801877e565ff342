//! Runs every check over the catalog and writes JSON reports.
//!
//! ```text
//! cargo run --release --example batch -- /tmp/reports
//! ```

use pgauto::cli::batch;
use pgauto::group::DEFAULT_MAX_ORDER;
use pgauto::report::RunOptions;

fn main() -> pgauto::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "reports".into());
    let reports = batch(dir.as_ref(), DEFAULT_MAX_ORDER, 0, RunOptions::default())?;
    for r in &reports {
        let skipped = r.checks.values().filter(|s| s.verdict == "skipped").count();
        println!(
            "{:<16} {} ({} skipped, {} findings)",
            r.group,
            if r.passed() { "pass" } else { "FAIL" },
            skipped,
            r.findings.len()
        );
    }
    println!("wrote {} reports to {dir}", reports.len());
    Ok(())
}
