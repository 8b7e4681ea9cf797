//! The generalized difference operator Δₘⁿ on lazy fuzzy sequences.
//!
//!     cargo run --example difference_operator

use fuzzy_cesaro::{binom, delta_binomial, delta_iterative, delta_seq, delta_terms, FuzzyReal, FuzzySeq};

fn main() -> fuzzy_cesaro::Result<()> {
    // X_k = triangular(k², 1/k, 1/k), generated on demand
    let x = FuzzySeq::from_fn(|k| {
        let k = k as f64;
        FuzzyReal::triangular(k * k, 1.0 / k, 1.0 / k).expect("finite")
    });

    println!("binomial row n = 4: {:?}", (0..=4).map(|r| binom(4, r)).collect::<Result<Vec<_>, _>>()?);

    let (m, n) = (2, 2);
    for k in 1..=4 {
        let b = delta_binomial(&x, m, n, k)?;
        let i = delta_iterative(&x, m, n, k)?;
        println!("Δ_{m}^{n} X_{k} = {b}   (iterative form differs by d̄ = {:e})", b.distance(&i));
    }

    // second differences of k² are the constant 2·m², with spreads accumulating
    let d = delta_seq(&x, m, n)?;
    println!("Δ_{m}^{n} X_10 = {}", d.get(10)?);

    let crisp = FuzzySeq::from_fn(|k| FuzzyReal::crisp(k as f64).expect("finite"));
    let terms = delta_terms(&crisp, 3, 2, 5)?;
    println!("Δ_3^2 of k̄, k = 1..5: {}", terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "));

    let finite = FuzzySeq::from_vec((1..=6).map(|k| FuzzyReal::crisp(k as f64).expect("finite")).collect());
    println!("finite length 6 → Δ_2^1 has length {:?}", delta_seq(&finite, 2, 1)?.len());
    println!("out of range: {}", delta_seq(&finite, 2, 1)?.get(5).unwrap_err());
    Ok(())
}
