use fuzzy_cesaro::orlicz::uniform_grid;
use fuzzy_cesaro::{
    binom, delta_binomial, eta_metric, luxemburg, normalized, phi, DistSeq, FuzzyReal, FuzzySeq, Interval, OrliczFunction,
    Space, SpaceKind,
};
use proptest::prelude::*;

fn fuzzy() -> impl Strategy<Value = FuzzyReal> {
    (
        -10.0..10.0f64,
        0.0..3.0f64,
        prop::collection::btree_set(1u32..1000, 0..5),
        prop::collection::vec((0.0..2.0f64, 0.0..2.0f64), 6),
    )
        .prop_map(|(lo, width, inner, grow)| {
            let mut alphas = vec![0.0];
            alphas.extend(inner.iter().map(|&a| a as f64 / 1000.0));
            alphas.push(1.0);
            let (mut l, mut h) = (lo, lo + width);
            let mut cuts = vec![[l, h]];
            for &(dl, dh) in grow.iter().take(alphas.len() - 1) {
                l -= dl;
                h += dh;
                cuts.push([l, h]);
            }
            cuts.reverse();
            let triples: Vec<[f64; 3]> = alphas.iter().zip(&cuts).map(|(&a, c)| [a, c[0], c[1]]).collect();
            FuzzyReal::from_triples(&triples).unwrap()
        })
}

fn nested(x: &FuzzyReal) -> bool {
    let levels: Vec<(f64, Interval)> = x.levels().collect();
    levels.iter().all(|(_, c)| c.lo() <= c.hi())
        && levels.windows(2).all(|w| w[0].0 < w[1].0 && w[1].1.lo() >= w[0].1.lo() && w[1].1.hi() <= w[0].1.hi())
        && levels.first().map(|l| l.0) == Some(0.0)
        && levels.last().map(|l| l.0) == Some(1.0)
}

fn kind() -> impl Strategy<Value = SpaceKind> {
    (0..5usize, prop::sample::select(vec![1.0, 1.5, 2.0, 3.0])).prop_map(|(i, p)| match i {
        0 => SpaceKind::Cp { p },
        1 => SpaceKind::Cinf,
        2 => SpaceKind::Lp { p },
        3 => SpaceKind::Op { p },
        _ => SpaceKind::Oinf,
    })
}

fn orlicz() -> impl Strategy<Value = OrliczFunction> {
    prop::sample::select(vec![
        OrliczFunction::identity(),
        OrliczFunction::cube(),
        OrliczFunction::power(1.5).unwrap(),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::compose(OrliczFunction::power(2.0).unwrap(), OrliczFunction::identity()),
        OrliczFunction::sum(OrliczFunction::identity(), OrliczFunction::cube()),
    ])
}

fn dist() -> impl Strategy<Value = DistSeq> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0..5.0f64], 1..30).prop_map(|v| DistSeq::new(v).unwrap())
}

/// Φ straight from its definition, re-summing every prefix.
fn phi_oracle(kind: SpaceKind, m: &OrliczFunction, a: &DistSeq, rho: f64) -> f64 {
    let b: Vec<f64> = a.values().iter().map(|&v| m.evaluate(v / rho).unwrap()).collect();
    let prefix = |i: usize| b[..i].iter().sum::<f64>();
    let n = b.len();
    match kind {
        SpaceKind::Lp { p } => b.iter().map(|v| v.powf(p)).sum(),
        SpaceKind::Cp { p } => (1..=n).map(|i| (prefix(i) / i as f64).powf(p)).sum(),
        SpaceKind::Op { p } => (1..=n).map(|i| prefix(i).powf(p) / i as f64).sum(),
        SpaceKind::Cinf | SpaceKind::Oinf => (1..=n).map(|i| prefix(i) / i as f64).fold(0.0, f64::max),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn operations_preserve_nestedness(x in fuzzy(), y in fuzzy(), c in -5.0..5.0f64, t in (-5.0..5.0f64, 0.0..3.0f64, 0.0..3.0f64)) {
        prop_assert!(nested(&(&x + &y)));
        prop_assert!(nested(&(&x - &y)));
        prop_assert!(nested(&x.scale(c)));
        prop_assert!(nested(&x.abs()));
        prop_assert!(nested(&(&x - &y).abs()));
        prop_assert!(nested(&FuzzyReal::triangular(t.0, t.1, t.2).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn d_bar_is_a_metric(x in fuzzy(), y in fuzzy(), z in fuzzy()) {
        prop_assert_eq!(x.distance(&y), y.distance(&x));
        prop_assert_eq!(x.distance(&x), 0.0);
        prop_assert!(x.distance(&y) >= 0.0);
        prop_assert!(x.distance(&z) <= x.distance(&y) + y.distance(&z) + 1e-12);
    }

    #[test]
    fn zero_distance_iff_merged_cuts_coincide(x in fuzzy(), y in fuzzy()) {
        let differs = |a: &FuzzyReal, b: &FuzzyReal| {
            a.alphas().iter().chain(b.alphas()).any(|&al| a.alpha_cut(al).unwrap() != b.alpha_cut(al).unwrap())
        };
        prop_assert_eq!(x.distance(&y) > 0.0, differs(&x, &y));

        // the same number on a refined grid is at distance 0
        let mut levels: Vec<(f64, Interval)> = x.levels().collect();
        for a in uniform_grid(0.0, 1.0, 11) {
            if !x.alphas().contains(&a) {
                levels.push((a, x.alpha_cut(a).unwrap()));
            }
        }
        levels.sort_by(|p, q| p.0.total_cmp(&q.0));
        let refined = FuzzyReal::from_levels(levels).unwrap();
        prop_assert_eq!(x.distance(&refined), 0.0);
        prop_assert!(!differs(&x, &refined));
    }

    #[test]
    fn addition_and_scaling_are_cutwise(x in fuzzy(), y in fuzzy(), c in -4.0..4.0f64, a in 0.0..=1.0f64) {
        let sum = &x + &y;
        for (alpha, cut) in sum.levels() {
            prop_assert_eq!(cut, x.alpha_cut(alpha).unwrap() + y.alpha_cut(alpha).unwrap());
        }
        let at = sum.alpha_cut(a).unwrap();
        let parts = x.alpha_cut(a).unwrap() + y.alpha_cut(a).unwrap();
        prop_assert!(at.distance(&parts) <= 1e-12);
        let scaled = x.scale(c);
        for (alpha, cut) in scaled.levels() {
            prop_assert_eq!(cut, x.alpha_cut(alpha).unwrap().scale(c));
        }
    }

    #[test]
    fn membership_round_trip(x in fuzzy(), t in -25.0..25.0f64) {
        let g = x.membership(t);
        prop_assert!((0.0..=1.0).contains(&g));
        if g > 0.0 {
            let cut = x.alpha_cut(g).unwrap();
            prop_assert!(cut.lo() - 1e-12 <= t && t <= cut.hi() + 1e-12, "t = {t}, grade {g}, cut {cut}");
        }
    }

    #[test]
    fn difference_width_law(terms in prop::collection::vec(fuzzy(), 16), m in 1usize..=4, n in 0usize..=3) {
        let x = FuzzySeq::from_vec(terms.clone());
        let d = delta_binomial(&x, m, n, 1).unwrap();
        let expected: f64 = (0..=n).map(|r| binom(n as u32, r as u32).unwrap() as f64 * terms[r * m].support().width()).sum();
        prop_assert!((d.support().width() - expected).abs() <= 1e-12 * expected.max(1.0));
    }

    #[test]
    fn crisp_differences_are_real_differences(values in prop::collection::vec(-1000i32..1000, 16), m in 1usize..=4, n in 0usize..=3) {
        let x = FuzzySeq::from_vec(values.iter().map(|&v| FuzzyReal::crisp(v as f64).unwrap()).collect());
        let real: i64 = (0..=n)
            .map(|r| {
                let sign = if r % 2 == 0 { 1 } else { -1 };
                sign * binom(n as u32, r as u32).unwrap() as i64 * values[r * m] as i64
            })
            .sum();
        prop_assert_eq!(delta_binomial(&x, m, n, 1).unwrap(), FuzzyReal::crisp(real as f64).unwrap());
    }

    #[test]
    fn phi_matches_definition(k in kind(), m in orlicz(), a in dist(), rho in 0.2..10.0f64) {
        let got = phi(k, &m, &a, rho).unwrap();
        let want = phi_oracle(k, &m, &a, rho);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn phi_is_non_increasing(k in kind(), m in orlicz(), a in dist(), rho in 0.05..10.0f64, f in 1.0..4.0f64) {
        let (p1, p2) = (phi(k, &m, &a, rho).unwrap(), phi(k, &m, &a, rho * f).unwrap());
        prop_assert!(p2 <= p1 + 1e-12 * p1.abs().max(1.0));
    }

    #[test]
    fn luxemburg_fixed_point(k in kind(), m in orlicz(), a in dist()) {
        let tol = 1e-10;
        let rho = luxemburg(k, &m, &a, tol).unwrap();
        if a.max() > 0.0 {
            prop_assert!(rho > 0.0);
            prop_assert!(normalized(k, &m, &a, rho * (1.0 + 10.0 * tol)).unwrap() <= 1.0);
            prop_assert!(normalized(k, &m, &a, rho * (1.0 - 10.0 * tol)).unwrap() >= 1.0 - 1e-9);
        } else {
            prop_assert_eq!(rho, 0.0);
        }
    }

    #[test]
    fn luxemburg_is_homogeneous(k in kind(), m in orlicz(), a in dist(), e in -3.0..3.0f64) {
        let c = 10f64.powf(e);
        let base = luxemburg(k, &m, &a, 1e-10).unwrap();
        let scaled = luxemburg(k, &m, &a.scaled(c).unwrap(), 1e-10).unwrap();
        prop_assert!((scaled - c * base).abs() <= 1e-8 * (c * base));
    }

    #[test]
    fn cesaro_below_o(m in orlicz(), a in dist(), p in prop::sample::select(vec![1.0, 2.0, 3.0]), rho in 0.2..10.0f64) {
        let (c, o) = (phi(SpaceKind::Cp { p }, &m, &a, rho).unwrap(), phi(SpaceKind::Op { p }, &m, &a, rho).unwrap());
        prop_assert!(c <= o * (1.0 + 1e-12));
        let cp = luxemburg(SpaceKind::Cp { p }, &m, &a, 1e-12).unwrap();
        let op = luxemburg(SpaceKind::Op { p }, &m, &a, 1e-12).unwrap();
        prop_assert!(cp <= op + 1e-10 * op.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn f_metric_without_difference_is_eta(k in kind(), m in orlicz(), xs in prop::collection::vec(fuzzy(), 12), ys in prop::collection::vec(fuzzy(), 12)) {
        let (x, y) = (FuzzySeq::from_vec(xs), FuzzySeq::from_vec(ys));
        let space = Space::new(k, m.clone(), 2, 0).unwrap();
        let f = space.f_metric(&x, &y, 12, 1e-10).unwrap();
        prop_assert_eq!(f.head, 0.0);
        prop_assert_eq!(f.tail, eta_metric(k, &m, &x, &y, 12, 1e-10).unwrap());
    }
}

#[test]
fn built_in_orlicz_functions_satisfy_the_axioms() {
    let grid = uniform_grid(0.0, 100.0, 10_000);
    let fs = [
        OrliczFunction::identity(),
        OrliczFunction::cube(),
        OrliczFunction::power(1.5).unwrap(),
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::compose(OrliczFunction::cube(), OrliczFunction::identity()),
        OrliczFunction::compose(OrliczFunction::power(2.0).unwrap(), OrliczFunction::power(1.5).unwrap()),
        OrliczFunction::sum(OrliczFunction::identity(), OrliczFunction::cube()),
    ];
    for f in &fs {
        let report = f.check_axioms(&grid).unwrap();
        assert!(report.all(), "{f}: {report:?}");
        assert!(f.check_scaling_inequality(&uniform_grid(0.01, 0.99, 50), &uniform_grid(0.0, 20.0, 401)).unwrap(), "{f}");
    }
    for x in uniform_grid(0.0, 50.0, 1001) {
        assert_eq!(OrliczFunction::power(1.0).unwrap().evaluate(x).unwrap(), x);
        assert_eq!(OrliczFunction::power(2.0).unwrap().evaluate(x).unwrap(), x * x);
        assert_eq!(OrliczFunction::power(3.0).unwrap().evaluate(x).unwrap(), x * x * x);
    }
}
