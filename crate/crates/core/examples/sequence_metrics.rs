//! The f-metric (head sum + Luxemburg tail) and the η-metric between sequences.
//!
//!     cargo run --example sequence_metrics

use fuzzy_cesaro::harness::{convergence_free_pair, random_triangular_seq};
use fuzzy_cesaro::{eta_metric, FuzzySeq, OrliczFunction, Space, SpaceKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuzzy_cesaro::Result<()> {
    let space = Space::new(SpaceKind::Cinf, OrliczFunction::cube(), 3, 1)?;
    let (x, _) = convergence_free_pair();
    let zero = FuzzySeq::zero();
    println!("{space}");
    for n in [50, 100, 200, 400] {
        let f = space.f_metric(&x, &zero, n, 1e-10)?;
        println!("N = {n:<4} f = {:.10}  (head {:.6} + tail {:.10})", f.value(), f.head, f.tail);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (a, b, c) = (
        random_triangular_seq(&mut rng, 20),
        random_triangular_seq(&mut rng, 20),
        random_triangular_seq(&mut rng, 20),
    );
    for kind in SpaceKind::all(2.0)? {
        let s = space.with_kind(kind);
        let f = |u: &FuzzySeq, v: &FuzzySeq| s.f_metric(u, v, 20, 1e-12).map(|m| m.value());
        let (ab, bc, ac) = (f(&a, &b)?, f(&b, &c)?, f(&a, &c)?);
        let eta = eta_metric(kind, &s.orlicz, &a, &b, 20, 1e-12)?;
        println!("{:<10} f(a,b) = {ab:.6}  f(a,c) = {ac:.6} ≤ {:.6}  η(a,b) = {eta:.6}", kind.to_string(), ab + bc);
    }
    Ok(())
}
