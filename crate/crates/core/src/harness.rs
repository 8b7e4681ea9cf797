//! Sequence generators and reproducible experiments for the structural claims
//! about the spaces `Z(M, Δₘⁿ)`.
//!
//! Every experiment works at truncation scale: "bounded" and "divergent" are the
//! [`Verdict`]s of a [`Diagnostic`], never proofs.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::difference::{delta_binomial, delta_iterative, FuzzySeq};
use crate::error::{Error, Result};
use crate::functionals::{luxemburg, phi, Diagnostic, DistSeq, Family, MembershipReport, Space, SpaceKind, Verdict};
use crate::fuzzy::FuzzyReal;
use crate::orlicz::{uniform_grid, OrliczFunction};

fn crisp(v: f64) -> FuzzyReal {
    FuzzyReal::crisp(v).expect("finite crisp value")
}

/// `X_k = start + (k-1)·step`.
pub fn crisp_arithmetic(start: f64, step: f64) -> FuzzySeq {
    FuzzySeq::from_fn(move |k| crisp(start + (k - 1) as f64 * step))
}

/// `X_k = start · ratio^(k-1)`.
pub fn crisp_geometric(start: f64, ratio: f64) -> FuzzySeq {
    FuzzySeq::from_fn(move |k| crisp(start * ratio.powi((k - 1) as i32)))
}

/// Symmetric triangular numbers centred at `center` with spread `k^(-s)`.
pub fn triangular_family(center: f64, s: f64) -> FuzzySeq {
    FuzzySeq::from_fn(move |k| {
        let w = (k as f64).powf(-s);
        FuzzyReal::triangular(center, w, w).expect("finite spreads")
    })
}

/// `X_k = k̄` and its pre-image `Y` that keeps the odd terms and zeroes the even ones.
pub fn solidity_pair() -> (FuzzySeq, FuzzySeq) {
    let x = crisp_arithmetic(1.0, 1.0);
    let y = FuzzySeq::from_fn(|k| if k % 2 == 1 { crisp(k as f64) } else { FuzzyReal::zero() });
    (x, y)
}

/// The `j`-th positive integer that is not a perfect square.
pub fn nth_non_square(j: usize) -> usize {
    let s = j.isqrt();
    j + if j > s * s + s { s + 1 } else { s }
}

/// The rearrangement `σ` with `Y_k = X_σ(k)`: squares `1, 4, 9, ...` at odd
/// positions and the remaining integers `2, 3, 5, 6, ...` at even ones.
pub fn rearranged_index(k: usize) -> usize {
    assert!(k >= 1, "sequences are indexed from 1");
    let j = k.div_ceil(2);
    if k % 2 == 1 {
        j * j
    } else {
        nth_non_square(j)
    }
}

/// `X_k = k̄` and the rearrangement `Y_k = X_σ(k)`, see [`rearranged_index`].
///
/// A constant `X` would make every rearrangement identical, so the linear
/// sequence is used.
pub fn symmetry_pair() -> (FuzzySeq, FuzzySeq) {
    (crisp_arithmetic(1.0, 1.0), FuzzySeq::from_fn(|k| crisp(rearranged_index(k) as f64)))
}

/// Triangular numbers around 0̄ with spread `1/k²` (`X`) and `k²` (`Y`); neither has a 0̄ term.
pub fn convergence_free_pair() -> (FuzzySeq, FuzzySeq) {
    (triangular_family(0.0, 2.0), triangular_family(0.0, -2.0))
}

/// A random triangular number with centre in `[-5, 5]` and spreads in `[0, 2]`.
pub fn random_triangular(rng: &mut impl Rng) -> FuzzyReal {
    let c = rng.gen_range(-5.0..=5.0);
    let l = rng.gen_range(0.0..=2.0);
    let r = rng.gen_range(0.0..=2.0);
    FuzzyReal::triangular(c, l, r).expect("finite parameters")
}

/// `len` random triangular terms followed by 0̄.
pub fn random_triangular_seq(rng: &mut impl Rng, len: usize) -> FuzzySeq {
    FuzzySeq::zero_padded((0..len).map(|_| random_triangular(rng)).collect())
}

/// Named sequences spanning bounded and divergent behaviour for every kind.
pub fn default_corpus() -> Vec<(String, FuzzySeq)> {
    let (sx, sy) = solidity_pair();
    let (yx, yy) = symmetry_pair();
    let (cx, cy) = convergence_free_pair();
    vec![
        ("zero".into(), FuzzySeq::zero()),
        ("crisp-arithmetic(1, 1)".into(), crisp_arithmetic(1.0, 1.0)),
        ("crisp-geometric(1, 0.5)".into(), crisp_geometric(1.0, 0.5)),
        ("triangular(0, k^-1)".into(), triangular_family(0.0, 1.0)),
        ("triangular(0, k^-2)".into(), triangular_family(0.0, 2.0)),
        ("triangular(0, k^-3)".into(), triangular_family(0.0, 3.0)),
        ("solidity/x".into(), sx),
        ("solidity/y".into(), sy),
        ("symmetry/x".into(), yx),
        ("symmetry/y".into(), yy),
        ("convergence-free/x".into(), cx),
        ("convergence-free/y".into(), cy),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentVerdict {
    ConsistentWithPaper,
    Inconsistent,
    Inconclusive,
}

impl fmt::Display for ExperimentVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentVerdict::ConsistentWithPaper => "consistent-with-paper",
            ExperimentVerdict::Inconsistent => "inconsistent",
            ExperimentVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// One numeric outcome and what produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub input: String,
    pub value: f64,
}

/// A quantitative check; a failed check makes the experiment inconsistent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledReport {
    pub label: String,
    pub report: MembershipReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub name: String,
    pub claim: String,
    pub observations: Vec<Observation>,
    pub checks: Vec<Check>,
    pub diagnostics: Vec<LabeledReport>,
    pub notes: Vec<String>,
    pub verdict: ExperimentVerdict,
}

impl ExperimentResult {
    fn new(name: &str, claim: &str) -> Self {
        ExperimentResult {
            name: name.into(),
            claim: claim.into(),
            observations: Vec::new(),
            checks: Vec::new(),
            diagnostics: Vec::new(),
            notes: Vec::new(),
            verdict: ExperimentVerdict::Inconclusive,
        }
    }

    fn observe(&mut self, input: impl Into<String>, value: f64) {
        self.observations.push(Observation { input: input.into(), value });
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    fn diagnose(&mut self, label: impl Into<String>, report: MembershipReport) -> Verdict {
        let verdict = report.verdict;
        self.diagnostics.push(LabeledReport { label: label.into(), report });
        verdict
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Inconsistent on any failed check, otherwise consistent unless `vacuous`.
    fn settle(mut self, vacuous: bool) -> Self {
        self.verdict = if !self.all_checks_pass() {
            ExperimentVerdict::Inconsistent
        } else if vacuous {
            ExperimentVerdict::Inconclusive
        } else {
            ExperimentVerdict::ConsistentWithPaper
        };
        self
    }
}

/// Expected diagnostic verdicts for a counterexample pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub x: Verdict,
    pub y: Verdict,
}

impl Default for Expectation {
    fn default() -> Self {
        Expectation {
            x: Verdict::Bounded,
            y: Verdict::DivergentTrend,
        }
    }
}

/// A member `X` of the space and a related `Y` that should fall outside it.
pub struct Counterexample<'a> {
    pub name: &'a str,
    pub claim: &'a str,
    pub x: &'a FuzzySeq,
    pub y: &'a FuzzySeq,
    pub expect: Expectation,
}

/// Diagnoses both sequences of a counterexample and folds in premise checks.
///
/// Inconsistent when a check fails or `X` is confidently classified opposite to
/// its expectation; consistent when both verdicts match; inconclusive otherwise.
pub fn run_counterexample(
    case: Counterexample<'_>,
    space: &Space,
    diagnostic: &Diagnostic,
    checks: Vec<Check>,
) -> Result<ExperimentResult> {
    let mut out = ExperimentResult::new(case.name, case.claim);
    out.checks = checks;
    let vx = out.diagnose("x", space.membership(case.x, diagnostic)?);
    let vy = out.diagnose("y", space.membership(case.y, diagnostic)?);
    for (label, report) in out.diagnostics.clone().iter().map(|d| (&d.label, &d.report)) {
        for (w, n) in report.phi_values.windows(2).zip(report.n_schedule.windows(2)) {
            out.observe(format!("{label}: phi ratio N={}/{}", n[1], n[0]), w[1] / w[0]);
        }
    }
    out.notes.push(format!(
        "space {space}; expected x {}, y {}; observed x {vx}, y {vy}",
        case.expect.x, case.expect.y
    ));
    out.verdict = if !out.all_checks_pass() || vx.contradicts(case.expect.x) {
        ExperimentVerdict::Inconsistent
    } else if vx == case.expect.x && vy == case.expect.y {
        ExperimentVerdict::ConsistentWithPaper
    } else {
        ExperimentVerdict::Inconclusive
    };
    Ok(out)
}

fn terms_needed(space: &Space, diagnostic: &Diagnostic) -> usize {
    diagnostic.schedule.last().copied().unwrap_or(0) + space.m * space.n
}

/// `d̄(Δₘⁿ k̄, 0̄)`: `k` for `n = 0`, `m` for `n = 1`, and 0 beyond.
fn linear_delta_norm(m: usize, n: usize, k: usize) -> f64 {
    match n {
        0 => k as f64,
        1 => m as f64,
        _ => 0.0,
    }
}

fn max_deviation(a: &DistSeq, expected: impl Fn(usize) -> f64, relative: bool) -> f64 {
    a.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let e = expected(i + 1);
            let d = (v - e).abs();
            if relative {
                d / e.abs().max(1.0)
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}

/// Pointwise-smaller pre-image of a member can leave the space.
pub fn run_solidity_check(space: &Space, diagnostic: &Diagnostic, expect: Expectation) -> Result<ExperimentResult> {
    let (x, y) = solidity_pair();
    solidity_with(&x, &y, space, diagnostic, expect)
}

/// [`run_solidity_check`] with an arbitrary pair, e.g. `Y = X` as a control.
pub fn solidity_with(x: &FuzzySeq, y: &FuzzySeq, space: &Space, diagnostic: &Diagnostic, expect: Expectation) -> Result<ExperimentResult> {
    let count = terms_needed(space, diagnostic);
    let xs = x.terms(1, count)?;
    let ys = y.terms(1, count)?;
    let dominated = xs.iter().zip(&ys).filter(|(a, b)| b.abs().le(&a.abs())).count();
    let mut checks = vec![Check::new(
        "premise |Y_k| <= |X_k|",
        dominated == count,
        format!("{dominated} of {count} terms dominated in the fuzzy order"),
    )];
    let n_max = diagnostic.schedule.last().copied().unwrap_or(0);
    let ax = space.distances(x, n_max)?;
    let dev = max_deviation(&ax, |k| linear_delta_norm(space.m, space.n, k), false);
    if let Some(first) = xs.first() {
        if first.is_crisp() && xs.iter().enumerate().all(|(i, t)| *t == crisp((i + 1) as f64)) {
            checks.push(Check::new("closed form d̄(Δ X_k, 0̄)", dev == 0.0, format!("max deviation {dev:e} for k <= {n_max}")));
        }
    }
    run_counterexample(
        Counterexample {
            name: "solidity",
            claim: "Z(M, Δₘⁿ) is neither monotone nor solid: zeroing the even terms of a member leaves the space",
            x,
            y,
            expect,
        },
        space,
        diagnostic,
        checks,
    )
}

/// A rearrangement of a member can leave the space.
pub fn run_symmetry_check(space: &Space, diagnostic: &Diagnostic, expect: Expectation) -> Result<ExperimentResult> {
    let (x, y) = symmetry_pair();
    let count = terms_needed(space, diagnostic);
    let n_max = diagnostic.schedule.last().copied().unwrap_or(0);

    let mut images: Vec<usize> = (1..=count).map(rearranged_index).collect();
    let matches = images.iter().enumerate().filter(|(i, &s)| y.get(i + 1).ok() == x.get(s).ok()).count();
    images.sort_unstable();
    images.dedup();
    let ax = space.distances(&x, n_max)?;
    let dev = max_deviation(&ax, |k| linear_delta_norm(space.m, space.n, k), false);
    let checks = vec![
        Check::new(
            "premise Y_k = X_σ(k) with σ injective",
            matches == count && images.len() == count,
            format!("{matches} of {count} terms match; {} distinct indices", images.len()),
        ),
        Check::new("closed form d̄(Δ X_k, 0̄)", dev == 0.0, format!("max deviation {dev:e} for k <= {n_max}")),
    ];
    let mut out = run_counterexample(
        Counterexample {
            name: "symmetry",
            claim: "Z(M, Δₘⁿ) is not symmetric: a rearrangement of a member leaves the space",
            x: &x,
            y: &y,
            expect,
        },
        space,
        diagnostic,
        checks,
    )?;
    let ay = space.distances(&y, n_max)?;
    for k in [n_max / 4, n_max / 2, n_max].into_iter().filter(|&k| k >= 1) {
        // odd positions carry the squares, which dominate the growth
        let k = if k % 2 == 0 { k - 1 } else { k };
        out.observe(format!("y: d̄(Δ Y_k, 0̄) at k={k}"), ay.values()[k - 1]);
    }
    out.notes.push(
        "X_k = k̄ replaces a constant sequence, for which every rearrangement coincides with X; \
         under Δ with one level the odd-position distances grow linearly in k, not quadratically"
            .into(),
    );
    Ok(out)
}

/// Replacing values while keeping the zero positions can leave the space.
pub fn run_convergence_free_check(space: &Space, diagnostic: &Diagnostic, expect: Expectation) -> Result<ExperimentResult> {
    let (x, y) = convergence_free_pair();
    let count = terms_needed(space, diagnostic);
    let n_max = diagnostic.schedule.last().copied().unwrap_or(0);
    let xs = x.terms(1, count)?;
    let ys = y.terms(1, count)?;
    let zeros = xs.iter().filter(|t| t.is_zero()).count();
    let kept = xs.iter().zip(&ys).all(|(a, b)| !a.is_zero() || b.is_zero());
    let mut checks = vec![Check::new(
        "premise X_k = 0̄ ⇒ Y_k = 0̄",
        kept,
        format!("{zeros} zero terms among the first {count} (premise holds vacuously when 0)"),
    )];
    if space.n == 1 {
        let m = space.m as f64;
        let ax = space.distances(&x, n_max)?;
        let ay = space.distances(&y, n_max)?;
        let dx = max_deviation(&ax, |k| (k as f64).powi(-2) + (k as f64 + m).powi(-2), false);
        let dy = max_deviation(&ay, |k| (k as f64).powi(2) + (k as f64 + m).powi(2), true);
        checks.push(Check::new("closed form d̄(Δ X_k, 0̄) = 1/k² + 1/(k+m)²", dx <= 1e-9, format!("max abs deviation {dx:e}")));
        checks.push(Check::new("closed form d̄(Δ Y_k, 0̄) = k² + (k+m)²", dy <= 1e-9, format!("max rel deviation {dy:e}")));
    }
    run_counterexample(
        Counterexample {
            name: "convergence-free",
            claim: "Z(M, Δₘⁿ) is not convergence-free: changing nonzero values of a member can leave the space",
            x: &x,
            y: &y,
            expect,
        },
        space,
        diagnostic,
        checks,
    )
}

/// Relative slack used for inequalities between computed functionals.
const REL_SLACK: f64 = 1e-12;

fn leq(a: f64, b: f64, rel: f64) -> bool {
    a <= b + rel * b.abs().max(1.0)
}

/// Computable consequences of the inclusion results, over a corpus:
///
/// - `luxemburg_Cp ≤ luxemburg_Op`;
/// - the modular bound `Φ(aⁿ, 2ρ) ≤ ½Φ(aⁿ⁻¹, ρ) + ½Φ(shifted aⁿ⁻¹, ρ)` for every kind;
/// - no sequence bounded at order `n-1` diagnosed divergent at order `n`;
/// - `luxemburg_q ≤ luxemburg_p` for `Cp` and `Lp` when `p < q`;
/// - `Cinf` and `Oinf` agree.
pub fn run_inclusion_matrix(
    orlicz: &OrliczFunction,
    m: usize,
    n: usize,
    p: f64,
    q: f64,
    corpus: &[(String, FuzzySeq)],
    diagnostic: &Diagnostic,
) -> Result<ExperimentResult> {
    if !(p >= 1.0 && q > p) {
        return Err(Error::invalid(format!("need 1 <= p < q, got p = {p}, q = {q}")));
    }
    diagnostic.validate()?;
    let mut out = ExperimentResult::new(
        "inclusions",
        "Cp ⊇ Op; Z(M, Δₘⁿ⁻¹) ⊂ Z(M, Δₘⁿ); Cp ⊂ Cq and ℓp ⊂ ℓq for p < q; O∞ ⊂ C∞",
    );
    let n_max = *diagnostic.schedule.last().expect("validated");
    let rho = diagnostic.rho_ref;
    let tol = diagnostic.tol;
    let kinds = SpaceKind::all(p)?;
    let base = Space::new(SpaceKind::Cinf, orlicz.clone(), m, 0)?;

    for (name, seq) in corpus {
        // a[i] holds d̄(Δₘⁱ X_k, 0̄) for k <= n_max + m
        let levels: Vec<DistSeq> = (0..=n).map(|i| base.with_order(i).distances(seq, n_max + m)).collect::<Result<_>>()?;
        let head = |a: &DistSeq| a.prefix(n_max);
        let top = head(&levels[n]);

        let cp = luxemburg(SpaceKind::Cp { p }, orlicz, &top, tol)?;
        let op = luxemburg(SpaceKind::Op { p }, orlicz, &top, tol)?;
        out.observe(format!("{name}: luxemburg Cp(p={p}) at n={n}"), cp);
        out.observe(format!("{name}: luxemburg Op(p={p}) at n={n}"), op);
        out.check(format!("{name}: Cp <= Op"), leq(cp, op, 2.0 * tol), format!("{cp:e} vs {op:e}"));

        let ci = phi(SpaceKind::Cinf, orlicz, &top, rho)?;
        let oi = phi(SpaceKind::Oinf, orlicz, &top, rho)?;
        out.check(format!("{name}: Cinf = Oinf"), ci == oi, format!("{ci:e} vs {oi:e}"));

        for i in 1..=n {
            let prev = &levels[i - 1];
            let shifted = DistSeq::new(prev.values()[m..m + n_max].to_vec())?;
            for &kind in &kinds {
                let lhs = phi(kind, orlicz, &head(&levels[i]), 2.0 * rho)?;
                let rhs = 0.5 * phi(kind, orlicz, &head(prev), rho)? + 0.5 * phi(kind, orlicz, &shifted, rho)?;
                if rhs.is_finite() {
                    out.check(
                        format!("{name}: modular bound {kind}, order {i}"),
                        leq(lhs, rhs, REL_SLACK),
                        format!("{lhs:e} <= {rhs:e}"),
                    );
                }
                let before = out.diagnose(format!("{name}: {kind} order {}", i - 1), diagnostic.evaluate(kind, orlicz, &head(prev)));
                let after = out.diagnose(format!("{name}: {kind} order {i}"), diagnostic.evaluate(kind, orlicz, &head(&levels[i])));
                out.check(
                    format!("{name}: {kind} order {} ⇒ order {i}", i - 1),
                    !(before == Verdict::Bounded && after == Verdict::DivergentTrend),
                    format!("{before} then {after}"),
                );
            }
        }

        for family in [Family::Cp, Family::Lp] {
            let kp = SpaceKind::new(family, Some(p))?;
            let kq = SpaceKind::new(family, Some(q))?;
            let lp = luxemburg(kp, orlicz, &top, tol)?;
            let lq = luxemburg(kq, orlicz, &top, tol)?;
            out.observe(format!("{name}: luxemburg {kq} at n={n}"), lq);
            out.check(format!("{name}: {kq} <= {kp}"), leq(lq, lp, 2.0 * tol), format!("{lq:e} vs {lp:e}"));
            let vp = out.diagnose(format!("{name}: {kp} order {n}"), diagnostic.evaluate(kp, orlicz, &top));
            let vq = out.diagnose(format!("{name}: {kq} order {n}"), diagnostic.evaluate(kq, orlicz, &top));
            out.check(
                format!("{name}: {kp} ⇒ {kq}"),
                !(vp == Verdict::Bounded && vq == Verdict::DivergentTrend),
                format!("{vp} then {vq}"),
            );
        }
    }
    out.notes.push(
        "the modular bound shifts by the gap m, matching Δₘⁿ X_k = Δₘⁿ⁻¹ X_k − Δₘⁿ⁻¹ X_{k+m}".into(),
    );
    out.notes.push(
        "ℓp ⊂ Op is not checked: Σ (1/i)(Σ_{k≤i} b_k)^p grows like log N for every nonzero sequence".into(),
    );
    Ok(out.settle(corpus.is_empty()))
}

/// Membership under `M₁` carries over to `M∘M₁`, and under `M₁` and `M₂` to `M₁+M₂`.
pub fn run_orlicz_closure(
    outer: &OrliczFunction,
    m1: &OrliczFunction,
    m2: &OrliczFunction,
    space: &Space,
    corpus: &[(String, FuzzySeq)],
    diagnostic: &Diagnostic,
) -> Result<ExperimentResult> {
    diagnostic.validate()?;
    let mut out = ExperimentResult::new(
        "orlicz-closure",
        "Z(M₁, Δₘⁿ) ⊆ Z(M∘M₁, Δₘⁿ) and Z(M₁, Δₘⁿ) ∩ Z(M₂, Δₘⁿ) ⊆ Z(M₁+M₂, Δₘⁿ) for Δ₂ functions",
    );
    let composed = OrliczFunction::compose(outer.clone(), m1.clone());
    let summed = OrliczFunction::sum(m1.clone(), m2.clone());

    let grid = uniform_grid(0.0, 10.0, 101);
    let worst = grid
        .iter()
        .map(|&x| {
            let lhs = summed.value(x);
            let rhs = m1.value(x) + m2.value(x);
            (lhs - rhs).abs() / rhs.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    out.check("(M₁+M₂)(x) = M₁(x) + M₂(x) on [0, 10]", worst <= REL_SLACK, format!("max rel deviation {worst:e}"));

    let xs = uniform_grid(0.1, 10.0, 100);
    for (label, f) in [("M", outer), ("M₁", m1), ("M₂", m2)] {
        match f.check_delta2(&xs, &[2.0])?.constant() {
            Some(k) => out.observe(format!("Δ₂ constant of {label} = {f}"), k),
            None => out.notes.push(format!("{label} = {f} shows no Δ₂ constant; the inclusion is then outside the hypothesis")),
        }
    }

    let n_max = *diagnostic.schedule.last().expect("validated");
    let mut applicable = 0;
    for (name, seq) in corpus {
        let a = space.distances(seq, n_max)?;
        let mut verdict = |f: &OrliczFunction, label: &str| out.diagnose(format!("{name}: {label} = {f}"), diagnostic.evaluate(space.kind, f, &a));
        let v1 = verdict(m1, "M₁");
        let v2 = verdict(m2, "M₂");
        let vc = verdict(&composed, "M∘M₁");
        let vs = verdict(&summed, "M₁+M₂");
        if v1 == Verdict::Bounded {
            applicable += 1;
            out.check(format!("{name}: M₁ ⇒ M∘M₁"), vc != Verdict::DivergentTrend, format!("{v1} then {vc}"));
            if v2 == Verdict::Bounded {
                out.check(format!("{name}: M₁, M₂ ⇒ M₁+M₂"), vs != Verdict::DivergentTrend, format!("{v1}, {v2} then {vs}"));
            }
        }
    }
    out.observe("corpus members bounded under M₁", applicable as f64);
    Ok(out.settle(applicable == 0))
}

/// The binomial and level-by-level evaluations of `Δₘⁿ` agree.
pub fn run_difference_forms(seed: u64, sequences: usize, max_m: usize, max_n: usize, max_k: usize) -> Result<ExperimentResult> {
    let mut out = ExperimentResult::new("difference-forms", "Δₘⁿ X_k = Σ_r (-1)^r C(n, r) X_{k+rm} equals n-fold iteration of Δₘ");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = max_k + max_m * max_n;
    let mut worst: f64 = 0.0;
    for _ in 0..sequences {
        let x = random_triangular_seq(&mut rng, len);
        for m in 1..=max_m {
            for n in 0..=max_n {
                for k in 1..=max_k {
                    let d = delta_binomial(&x, m, n, k)?.distance(&delta_iterative(&x, m, n, k)?);
                    worst = worst.max(d);
                }
            }
        }
    }
    out.observe(format!("max d̄ over {sequences} sequences, m <= {max_m}, n <= {max_n}, k <= {max_k}"), worst);
    out.check("binomial = iterative within 1e-12", worst <= 1e-12, format!("{worst:e}"));
    Ok(out.settle(sequences == 0))
}

/// Settings for [`run_metric_axioms`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricAxioms {
    pub seed: u64,
    pub triples: usize,
    pub n_terms: usize,
    pub tol: f64,
    /// Absolute slack for the triangle inequality.
    pub slack: f64,
}

impl Default for MetricAxioms {
    fn default() -> Self {
        MetricAxioms {
            seed: 7,
            triples: 100,
            n_terms: 30,
            tol: 1e-12,
            slack: 1e-9,
        }
    }
}

/// Symmetry, identity and triangle inequality of the f-metric on random triples, for every kind.
pub fn run_metric_axioms(orlicz: &OrliczFunction, m: usize, n: usize, p: f64, settings: &MetricAxioms) -> Result<ExperimentResult> {
    let mut out = ExperimentResult::new("metric-axioms", "the f-metric Σ_{r≤mn} d̄(X_r, Y_r) + luxemburg(d̄(Δₘⁿ X_k, Δₘⁿ Y_k)) is a metric");
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let len = settings.n_terms + m * n;
    let triples: Vec<[FuzzySeq; 3]> = (0..settings.triples)
        .map(|_| std::array::from_fn(|_| random_triangular_seq(&mut rng, len)))
        .collect();
    for kind in SpaceKind::all(p)? {
        let space = Space::new(kind, orlicz.clone(), m, n)?;
        let f = |a: &FuzzySeq, b: &FuzzySeq| space.f_metric(a, b, settings.n_terms, settings.tol).map(|v| v.value());
        let (mut asym, mut nonzero_self, mut worst_gap) = (0usize, 0usize, f64::NEG_INFINITY);
        for [x, y, z] in &triples {
            let xy = f(x, y)?;
            asym += usize::from(xy != f(y, x)?);
            nonzero_self += usize::from(f(x, x)? != 0.0);
            worst_gap = worst_gap.max(f(x, z)? - xy - f(y, z)?);
        }
        out.observe(format!("{kind}: max f(X,Z) − f(X,Y) − f(Y,Z)"), worst_gap);
        out.check(format!("{kind}: symmetry"), asym == 0, format!("{asym} asymmetric pairs"));
        out.check(format!("{kind}: f(X, X) = 0"), nonzero_self == 0, format!("{nonzero_self} nonzero self-distances"));
        out.check(
            format!("{kind}: triangle inequality"),
            worst_gap <= settings.slack,
            format!("worst excess {worst_gap:e} against slack {:e}", settings.slack),
        );
    }
    Ok(out.settle(settings.triples == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_values() {
        let (x, y) = solidity_pair();
        assert_eq!(x.get(5).unwrap(), crisp(5.0));
        assert!(y.get(4).unwrap().is_zero());
        assert_eq!(y.get(3).unwrap(), crisp(3.0));

        let (x, y) = symmetry_pair();
        let shown = [1, 2, 4, 3, 9, 5, 16, 6, 25];
        for (k, &s) in shown.iter().enumerate() {
            assert_eq!(y.get(k + 1).unwrap(), x.get(s).unwrap());
        }

        let (x, y) = convergence_free_pair();
        assert_eq!(x.get(2).unwrap(), FuzzyReal::triangular(0.0, 0.25, 0.25).unwrap());
        assert_eq!(y.get(3).unwrap(), FuzzyReal::triangular(0.0, 9.0, 9.0).unwrap());
    }

    #[test]
    fn non_squares_match_brute_force() {
        let brute: Vec<usize> = (1usize..5000).filter(|v| v.isqrt().pow(2) != *v).collect();
        for (j, &v) in brute.iter().enumerate().take(4000) {
            assert_eq!(nth_non_square(j + 1), v);
        }
    }

    #[test]
    fn rearrangement_is_a_bijection_on_prefixes() {
        let n = 2000;
        let mut seen: Vec<usize> = (1..=n).map(rearranged_index).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), n);
        // every index up to the largest non-square used is hit
        let covered = nth_non_square(n / 2);
        assert!((1..=covered).all(|v| seen.binary_search(&v).is_ok()));
    }

    fn cp2() -> Space {
        Space::new(SpaceKind::Cp { p: 2.0 }, OrliczFunction::identity(), 3, 2).unwrap()
    }

    #[test]
    fn solidity_consistent_for_cp() {
        let d = Diagnostic::new(vec![50, 100, 200]);
        let r = run_solidity_check(&cp2(), &d, Expectation::default()).unwrap();
        assert!(r.all_checks_pass(), "{:?}", r.checks);
        assert_eq!(r.verdict, ExperimentVerdict::ConsistentWithPaper);
        let cp1 = cp2().with_kind(SpaceKind::Cp { p: 1.0 });
        assert_eq!(run_solidity_check(&cp1, &d, Expectation::default()).unwrap().verdict, ExperimentVerdict::ConsistentWithPaper);
    }

    #[test]
    fn solidity_control_is_inconclusive() {
        let (x, _) = solidity_pair();
        let d = Diagnostic::new(vec![50, 100, 200]);
        let r = solidity_with(&x, &x, &cp2(), &d, Expectation::default()).unwrap();
        assert_eq!(r.diagnostics[0].report.verdict, Verdict::Bounded);
        assert_eq!(r.diagnostics[1].report.verdict, Verdict::Bounded);
        assert_eq!(r.verdict, ExperimentVerdict::Inconclusive);
    }

    #[test]
    fn inverted_expectation_is_inconsistent() {
        let d = Diagnostic::new(vec![50, 100, 200]);
        let flipped = Expectation {
            x: Verdict::DivergentTrend,
            y: Verdict::Bounded,
        };
        assert_eq!(run_solidity_check(&cp2(), &d, flipped).unwrap().verdict, ExperimentVerdict::Inconsistent);
    }

    #[test]
    fn symmetry_growth_is_linear() {
        let space = Space::new(SpaceKind::Cinf, OrliczFunction::identity(), 4, 1).unwrap();
        let (x, y) = symmetry_pair();
        let ax = space.distances(&x, 256).unwrap();
        assert!(ax.values().iter().all(|&v| v == 4.0));
        // brute force: |σ(k) − σ(k+4)|
        let ay = space.distances(&y, 256).unwrap();
        for k in 1..=256 {
            let expect = rearranged_index(k).abs_diff(rearranged_index(k + 4)) as f64;
            assert_eq!(ay.values()[k - 1], expect);
        }
        // odd k = 2j−1: (j+2)² − j² = 4j + 4
        assert_eq!(ay.values()[254], 4.0 * 128.0 + 4.0);

        let d = Diagnostic::new(vec![50, 100, 200]);
        let r = run_symmetry_check(&space, &d, Expectation::default()).unwrap();
        assert!(r.all_checks_pass(), "{:?}", r.checks);
        let y_phi = &r.diagnostics[1].report.phi_values;
        assert!((y_phi[1] / y_phi[0] - 1.839).abs() < 1e-3, "{y_phi:?}");
        assert!((y_phi[2] / y_phi[1] - 1.914).abs() < 1e-3, "{y_phi:?}");
        assert_eq!(r.diagnostics[0].report.verdict, Verdict::Bounded);
        assert_eq!(r.diagnostics[1].report.verdict, Verdict::Inconclusive);
        assert_eq!(r.verdict, ExperimentVerdict::Inconclusive);
    }

    #[test]
    fn convergence_free_consistent_for_cube() {
        let space = Space::new(SpaceKind::Cinf, OrliczFunction::cube(), 3, 1).unwrap();
        let d = Diagnostic::new(vec![50, 100, 200]);
        let r = run_convergence_free_check(&space, &d, Expectation::default()).unwrap();
        assert!(r.all_checks_pass(), "{:?}", r.checks);
        assert_eq!(r.verdict, ExperimentVerdict::ConsistentWithPaper);
    }

    #[test]
    fn inclusion_matrix_on_default_corpus() {
        let d = Diagnostic::new(vec![50, 100, 200]);
        let r = run_inclusion_matrix(&OrliczFunction::identity(), 3, 2, 2.0, 3.0, &default_corpus(), &d).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(r.verdict, ExperimentVerdict::ConsistentWithPaper);
    }

    #[test]
    fn geometric_decay_membership_by_kind() {
        let geometric = FuzzySeq::from_fn(|k| {
            let w = 0.5f64.powi(k as i32);
            FuzzyReal::triangular(0.0, w, w).unwrap()
        });
        let d = Diagnostic::new(vec![50, 100, 200]);
        let verdict = |kind| {
            Space::new(kind, OrliczFunction::identity(), 1, 1).unwrap().membership(&geometric, &d).unwrap().verdict
        };
        for kind in [SpaceKind::Cp { p: 2.0 }, SpaceKind::Lp { p: 1.0 }, SpaceKind::Lp { p: 2.0 }, SpaceKind::Cinf, SpaceKind::Oinf] {
            assert_eq!(verdict(kind), Verdict::Bounded, "{kind}");
        }
        // Σ_{i≤N} (1/i)·S_i^p creeps up like log N; Σ_i S_i/i the same for Cp at p = 1
        assert_eq!(verdict(SpaceKind::Op { p: 2.0 }), Verdict::Inconclusive);
        assert_eq!(verdict(SpaceKind::Cp { p: 1.0 }), Verdict::Inconclusive);
    }

    #[test]
    fn orlicz_closure_default() {
        let space = Space::new(SpaceKind::Cinf, OrliczFunction::identity(), 3, 1).unwrap();
        let d = Diagnostic::new(vec![50, 100, 200]);
        let (cx, _) = convergence_free_pair();
        let corpus = vec![("x".to_string(), cx), ("zero".to_string(), FuzzySeq::zero())];
        let r = run_orlicz_closure(&OrliczFunction::cube(), &OrliczFunction::identity(), &OrliczFunction::power(2.0).unwrap(), &space, &corpus, &d).unwrap();
        assert!(r.all_checks_pass(), "{:?}", r.checks);
        assert_eq!(r.verdict, ExperimentVerdict::ConsistentWithPaper);
        assert_eq!(OrliczFunction::sum(OrliczFunction::identity(), OrliczFunction::cube()).evaluate(2.0).unwrap(), 10.0);
    }

    #[test]
    fn difference_forms_and_metric_axioms() {
        let r = run_difference_forms(1, 10, 4, 3, 20).unwrap();
        assert_eq!(r.verdict, ExperimentVerdict::ConsistentWithPaper);
        let settings = MetricAxioms { triples: 20, ..MetricAxioms::default() };
        let r = run_metric_axioms(&OrliczFunction::identity(), 2, 1, 2.0, &settings).unwrap();
        assert!(r.all_checks_pass(), "{:?}", r.checks);
    }

    #[test]
    fn experiments_are_reproducible() {
        let settings = MetricAxioms { triples: 5, ..MetricAxioms::default() };
        let a = run_metric_axioms(&OrliczFunction::cube(), 1, 1, 1.0, &settings).unwrap();
        let b = run_metric_axioms(&OrliczFunction::cube(), 1, 1, 1.0, &settings).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
