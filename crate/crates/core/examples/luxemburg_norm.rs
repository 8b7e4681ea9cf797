//! The five aggregate functionals and their Luxemburg values on a distance sequence.
//!
//!     cargo run --example luxemburg_norm

use fuzzy_cesaro::{luxemburg, normalized, phi, DistSeq, OrliczFunction, SpaceKind};

fn main() -> fuzzy_cesaro::Result<()> {
    let a = DistSeq::new(vec![3.0, 4.0])?;
    let id = OrliczFunction::identity();
    println!("ℓ2 with M = x on [3, 4]: luxemburg = {}", luxemburg(SpaceKind::Lp { p: 2.0 }, &id, &a, 1e-12)?);

    let a = DistSeq::new((1..=40).map(|k| 1.0 / k as f64).collect())?;
    let m = OrliczFunction::cube();
    println!("\na_k = 1/k, k ≤ 40, M(x) = x³");
    println!("{:<10} {:>14} {:>14} {:>14}", "kind", "Φ(ρ = 1)", "luxemburg", "check");
    for kind in SpaceKind::all(2.0)? {
        let rho = luxemburg(kind, &m, &a, 1e-10)?;
        println!(
            "{:<10} {:>14.6} {:>14.8} {:>14.10}",
            kind.to_string(),
            phi(kind, &m, &a, 1.0)?,
            rho,
            normalized(kind, &m, &a, rho)?
        );
    }

    let scaled = luxemburg(SpaceKind::Cinf, &m, &a.scaled(1000.0)?, 1e-10)?;
    println!("\nhomogeneity: luxemburg(1000·a) / luxemburg(a) = {}", scaled / luxemburg(SpaceKind::Cinf, &m, &a, 1e-10)?);
    println!("all-zero input: {}", luxemburg(SpaceKind::Op { p: 1.0 }, &m, &DistSeq::new(vec![0.0; 5])?, 1e-10)?);
    Ok(())
}
