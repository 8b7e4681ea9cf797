//! Orlicz expressions, their axioms, the scaling inequality and the Δ₂ probe.
//!
//!     cargo run --example orlicz_functions

use fuzzy_cesaro::orlicz::uniform_grid;
use fuzzy_cesaro::OrliczFunction;

fn main() -> fuzzy_cesaro::Result<()> {
    let grid = uniform_grid(0.0, 20.0, 401);
    let lambdas = uniform_grid(0.05, 0.95, 19);
    let probe = uniform_grid(0.5, 50.0, 100);

    let functions = [
        OrliczFunction::identity(),
        OrliczFunction::power(1.5)?,
        OrliczFunction::cube(),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::compose(OrliczFunction::cube(), OrliczFunction::identity()),
        OrliczFunction::sum(OrliczFunction::identity(), OrliczFunction::cube()),
    ];
    println!("{:<16} {:>8} {:>8} {:>10}  {}", "M", "M(2)", "axioms", "M(λx)≤λM", "Δ₂ K (L=2)");
    for m in &functions {
        let axioms = m.check_axioms(&grid)?;
        let scaling = m.check_scaling_inequality(&lambdas, &grid)?;
        let k = m.check_delta2(&probe, &[2.0])?.constant();
        let k = k.map_or_else(|| "none".to_string(), |k| format!("{k:.4}"));
        println!("{:<16} {:>8.4} {:>8} {:>10}  {k}", m.to_string(), m.evaluate(2.0)?, axioms.all(), scaling);
    }

    // expressions are plain JSON
    let m: OrliczFunction = serde_json::from_str(r#"{"sum": [{"power": 2}, {"exp_minus_one": {}}]}"#).expect("valid JSON");
    println!("parsed {m}: M(1) = {:.6}", m.evaluate(1.0)?);
    match OrliczFunction::power(0.5) {
        Ok(_) => unreachable!(),
        Err(e) => println!("x^0.5 rejected: {e}"),
    }
    Ok(())
}
