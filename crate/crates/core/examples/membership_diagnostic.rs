//! Truncation-scale membership: is Φ stable or growing as N doubles?
//!
//!     cargo run --example membership_diagnostic

use fuzzy_cesaro::harness::{crisp_arithmetic, triangular_family};
use fuzzy_cesaro::{Diagnostic, OrliczFunction, Space, SpaceKind};

fn main() -> fuzzy_cesaro::Result<()> {
    let diagnostic = Diagnostic::doubling(50);
    let cases = [
        ("k̄ under Δ₃¹ in C∞", crisp_arithmetic(1.0, 1.0), Space::new(SpaceKind::Cinf, OrliczFunction::identity(), 3, 1)?),
        ("k̄ under Δ₃¹ in C2", crisp_arithmetic(1.0, 1.0), Space::new(SpaceKind::Cp { p: 2.0 }, OrliczFunction::identity(), 3, 1)?),
        ("k̄ under Δ₃² in C2", crisp_arithmetic(1.0, 1.0), Space::new(SpaceKind::Cp { p: 2.0 }, OrliczFunction::identity(), 3, 2)?),
        ("spread k^-2 in ℓ1", triangular_family(0.0, 2.0), Space::new(SpaceKind::Lp { p: 1.0 }, OrliczFunction::identity(), 1, 1)?),
        ("spread k^2 in C∞ (x³)", triangular_family(0.0, -2.0), Space::new(SpaceKind::Cinf, OrliczFunction::cube(), 3, 1)?),
    ];
    for (label, seq, space) in &cases {
        let r = space.membership(seq, &diagnostic)?;
        let lux: Vec<String> = r.luxemburg_values.iter().map(|v| v.map_or("–".into(), |v| format!("{v:.4}"))).collect();
        println!("{label:<24} {:<16} Φ = {:?}  ρ* = [{}]", r.verdict.to_string(), r.phi_values, lux.join(", "));
    }
    Ok(())
}
