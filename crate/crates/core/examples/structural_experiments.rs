//! Runs every structural experiment with default settings and prints a summary.
//!
//!     cargo run --release --example structural_experiments

use fuzzy_cesaro::cli::cmd_verify_paper;
use fuzzy_cesaro::config::JobConfig;

fn main() -> fuzzy_cesaro::Result<()> {
    let suite = cmd_verify_paper(&JobConfig::default())?;
    for e in &suite.experiments {
        let passed = e.checks.iter().filter(|c| c.passed).count();
        println!("{:<18} {:<22} checks {passed}/{}", e.name, e.verdict.to_string(), e.checks.len());
        println!("    {}", e.claim);
        for d in e.diagnostics.iter().take(2) {
            println!("    {} → {} (Φ = {:?})", d.label, d.report.verdict, d.report.phi_values);
        }
        for note in &e.notes {
            println!("    note: {note}");
        }
    }
    let s = &suite.summary;
    println!("\n{} experiments: {} consistent, {} inconclusive, {} inconsistent", s.total, s.consistent, s.inconclusive, s.inconsistent);
    Ok(())
}
