//! Drives the library from a JSON job file, the same way the binary does.
//!
//!     cargo run --example config_job -- crates/core/examples/configs/euclidean.json

use std::path::PathBuf;

use fuzzy_cesaro::cli::{cmd_membership, cmd_metric, cmd_orlicz_check};
use fuzzy_cesaro::config::JobConfig;

fn main() -> fuzzy_cesaro::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/default.json"));
    let config = JobConfig::load(&path)?;
    println!("job {} — space {}", path.display(), config.space()?);

    if let Some(pair) = &config.metric {
        let r = cmd_metric(&config, &pair.x, &pair.y)?;
        println!("f({}, {}) = {} (η = {}) at N = {}", r.x, r.y, r.f_metric_value, r.eta_metric, r.n);
    }
    if let Some(single) = &config.membership {
        let r = cmd_membership(&config, &single.x)?;
        println!("membership of {}: {} over N = {:?}", r.x, r.report.verdict, r.report.n_schedule);
    }
    let o = cmd_orlicz_check(&config, &config.orlicz_check.expression)?;
    println!("orlicz check of {}: axioms {}, Δ₂ K = {:?}", o.expression, o.axioms_hold, o.delta2_constant);
    Ok(())
}
