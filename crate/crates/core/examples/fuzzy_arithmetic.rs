//! α-cut arithmetic on fuzzy reals and the sup-distance d̄.
//!
//!     cargo run --example fuzzy_arithmetic

use fuzzy_cesaro::{d_bar, FuzzyReal};

fn main() -> fuzzy_cesaro::Result<()> {
    let a = FuzzyReal::triangular(1.0, 1.0, 1.0)?;
    let b = FuzzyReal::triangular(2.0, 0.5, 1.5)?;
    // a trapezoid with a kink at α = 0.4, in [alpha, lo, hi] wire form
    let t = FuzzyReal::from_triples(&[[0.0, -3.0, 2.0], [0.4, -1.0, 1.5], [1.0, -0.5, 0.5]])?;

    println!("a       = {a}");
    println!("b       = {b}");
    println!("t       = {t}");
    println!("a + b   = {}", &a + &b);
    println!("a - b   = {}", &a - &b);
    println!("-2·a    = {}", -2.0 * &a);
    // |t| needs extra levels where a cut straddles zero
    println!("|t|     = {}", t.abs());
    println!("|a - b| = {}", (&a - &b).abs());

    println!("t at α = 0.7: {}", t.alpha_cut(0.7)?);
    println!("grade of 1.25 in t: {}", t.membership(1.25));
    println!("support / core of b: {} / {}", b.support(), b.core());

    println!("d̄(a, b) = {}", d_bar(&a, &b));
    println!("d̄(t, 0̄) = {}", t.distance(&FuzzyReal::zero()));
    println!("a ≤ b in the fuzzy order: {}", a.le(&b));

    let json = serde_json::to_string(&t).expect("serializable");
    println!("wire form of t: {json}");
    Ok(())
}
