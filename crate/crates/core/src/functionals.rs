//! Cesàro/Orlicz aggregate functionals on truncated distance sequences.
//!
//! Every functional acts on `b_k = M(a_k / ρ)` where `a_k` is a distance such as
//! `d̄(Δₘⁿ X_k, 0̄)`, for `k = 1..=N`:
//!
//! | kind   | aggregate                             | normalized  |
//! |--------|---------------------------------------|-------------|
//! | `Cp`   | `Σ_i (1/i · Σ_{k≤i} b_k)^p`           | `Φ^{1/p}`   |
//! | `Cinf` | `max_i 1/i · Σ_{k≤i} b_k`             | `Φ`         |
//! | `Lp`   | `Σ_k b_k^p`                           | `Φ^{1/p}`   |
//! | `Op`   | `Σ_i 1/i · (Σ_{k≤i} b_k)^p`           | `Φ^{1/p}`   |
//! | `Oinf` | `max_i 1/i · Σ_{k≤i} b_k`             | `Φ`         |
//!
//! The Luxemburg functional `inf{ρ > 0 : normalized(ρ) ≤ 1}` is found by
//! bracketing and bisection, which is valid because every aggregate is
//! non-increasing in ρ.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::difference::{delta_terms, FuzzySeq};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyReal;
use crate::orlicz::OrliczFunction;

/// Iteration cap for each phase (expand, shrink, bisect) of [`luxemburg`].
pub const MAX_ITERATIONS: usize = 200;
/// Default relative bracket width for [`luxemburg`].
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Cp,
    Cinf,
    Lp,
    Op,
    Oinf,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Cp, Family::Cinf, Family::Lp, Family::Op, Family::Oinf];

    pub fn has_exponent(self) -> bool {
        matches!(self, Family::Cp | Family::Lp | Family::Op)
    }
}

/// Which of the five sequence-space functionals, with its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KindRepr", into = "KindRepr")]
pub enum SpaceKind {
    Cp { p: f64 },
    Cinf,
    Lp { p: f64 },
    Op { p: f64 },
    Oinf,
}

#[derive(Serialize, Deserialize)]
struct KindRepr {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
}

impl SpaceKind {
    /// Builds a kind; `p` is required (and must be `>= 1`) for `Cp`, `Lp`, `Op`
    /// and ignored otherwise.
    pub fn new(family: Family, p: Option<f64>) -> Result<Self> {
        let exponent = || -> Result<f64> {
            match p {
                Some(p) if p.is_finite() && p >= 1.0 => Ok(p),
                Some(p) => Err(Error::invalid(format!("exponent p must be finite and >= 1, got {p}"))),
                None => Err(Error::invalid(format!("{family:?} needs an exponent p"))),
            }
        };
        Ok(match family {
            Family::Cp => SpaceKind::Cp { p: exponent()? },
            Family::Cinf => SpaceKind::Cinf,
            Family::Lp => SpaceKind::Lp { p: exponent()? },
            Family::Op => SpaceKind::Op { p: exponent()? },
            Family::Oinf => SpaceKind::Oinf,
        })
    }

    pub fn family(&self) -> Family {
        match self {
            SpaceKind::Cp { .. } => Family::Cp,
            SpaceKind::Cinf => Family::Cinf,
            SpaceKind::Lp { .. } => Family::Lp,
            SpaceKind::Op { .. } => Family::Op,
            SpaceKind::Oinf => Family::Oinf,
        }
    }

    pub fn p(&self) -> Option<f64> {
        match *self {
            SpaceKind::Cp { p } | SpaceKind::Lp { p } | SpaceKind::Op { p } => Some(p),
            SpaceKind::Cinf | SpaceKind::Oinf => None,
        }
    }

    /// All five kinds, using `p` for the ones that take an exponent.
    pub fn all(p: f64) -> Result<Vec<SpaceKind>> {
        Family::ALL.iter().map(|&f| SpaceKind::new(f, Some(p))).collect()
    }
}

impl TryFrom<KindRepr> for SpaceKind {
    type Error = Error;

    fn try_from(r: KindRepr) -> Result<Self> {
        SpaceKind::new(r.family, r.p)
    }
}

impl From<SpaceKind> for KindRepr {
    fn from(k: SpaceKind) -> Self {
        KindRepr { family: k.family(), p: k.p() }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p() {
            Some(p) => write!(f, "{:?}(p={p})", self.family()),
            None => write!(f, "{:?}", self.family()),
        }
    }
}

/// A truncated sequence of non-negative distances `a_1, ..., a_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DistSeq(Vec<f64>);

impl DistSeq {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::invalid(format!("distance a_{} = {v} must be finite and non-negative", i + 1)));
        }
        Ok(DistSeq(values))
    }

    /// `a_k = d̄(X_k, Y_k)` for `k = 1..=n_terms`.
    pub fn between(x: &FuzzySeq, y: &FuzzySeq, n_terms: usize) -> Result<Self> {
        let xs = x.terms(1, n_terms)?;
        let ys = y.terms(1, n_terms)?;
        DistSeq::new(xs.iter().zip(&ys).map(|(a, b)| a.distance(b)).collect())
    }

    /// `a_k = d̄(X_k, 0̄)`.
    pub fn from_zero(terms: &[FuzzyReal]) -> Result<Self> {
        let zero = FuzzyReal::zero();
        DistSeq::new(terms.iter().map(|t| t.distance(&zero)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The first `n` entries (all of them if `n` exceeds the length).
    pub fn prefix(&self, n: usize) -> DistSeq {
        DistSeq(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Result<DistSeq> {
        DistSeq::new(self.0.iter().map(|v| c * v).collect())
    }
}

impl TryFrom<Vec<f64>> for DistSeq {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        DistSeq::new(v)
    }
}

impl From<DistSeq> for Vec<f64> {
    fn from(d: DistSeq) -> Self {
        d.0
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("rho must be finite and > 0, got {rho}")))
    }
}

/// The aggregate Φ of `kind` at scale `rho`.
pub fn phi(kind: SpaceKind, m: &OrliczFunction, a: &DistSeq, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(aggregate(kind, m, a, rho))
}

/// Φ with the outer `1/p` root applied for the exponent kinds.
pub fn normalized(kind: SpaceKind, m: &OrliczFunction, a: &DistSeq, rho: f64) -> Result<f64> {
    let v = phi(kind, m, a, rho)?;
    Ok(match kind.p() {
        Some(p) => v.powf(1.0 / p),
        None => v,
    })
}

fn aggregate(kind: SpaceKind, m: &OrliczFunction, a: &DistSeq, rho: f64) -> f64 {
    let b = a.0.iter().map(|&v| m.value(v / rho));
    match kind {
        SpaceKind::Lp { p } => b.map(|v| v.powf(p)).sum(),
        SpaceKind::Cp { p } => prefix_sums(b).map(|(i, s)| (s / i).powf(p)).sum(),
        SpaceKind::Op { p } => prefix_sums(b).map(|(i, s)| s.powf(p) / i).sum(),
        SpaceKind::Cinf | SpaceKind::Oinf => prefix_sums(b).map(|(i, s)| s / i).fold(0.0, f64::max),
    }
}

/// `(i, Σ_{k≤i} b_k)` for `i = 1, 2, ...` with `i` as f64.
fn prefix_sums(b: impl Iterator<Item = f64>) -> impl Iterator<Item = (f64, f64)> {
    b.enumerate().scan(0.0, |acc, (i, v)| {
        *acc += v;
        Some(((i + 1) as f64, *acc))
    })
}

/// `inf{ρ > 0 : normalized(ρ) ≤ 1}`, to relative bracket width `tol`.
///
/// Returns 0 when every `a_k` is 0. The returned value is the feasible end of
/// the final bracket.
pub fn luxemburg(kind: SpaceKind, m: &OrliczFunction, a: &DistSeq, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be finite and > 0, got {tol}")));
    }
    let top = a.max();
    if top == 0.0 {
        return Ok(0.0);
    }
    let feasible = |rho: f64| -> Result<bool> {
        let v = aggregate(kind, m, a, rho);
        if v.is_nan() {
            return Err(Error::NoConvergence { lo: rho, hi: rho, iterations: 0 });
        }
        Ok(v <= 1.0)
    };

    let mut hi = top;
    let mut iterations = 0;
    while !feasible(hi)? {
        hi *= 2.0;
        iterations += 1;
        if iterations > MAX_ITERATIONS || !hi.is_finite() {
            return Err(Error::NoConvergence { lo: hi / 2.0, hi, iterations });
        }
    }

    let mut lo = hi / 2.0;
    iterations = 0;
    while feasible(lo)? {
        hi = lo;
        lo /= 2.0;
        iterations += 1;
        if iterations > MAX_ITERATIONS || lo == 0.0 {
            return Err(Error::NoConvergence { lo, hi, iterations });
        }
    }

    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol * hi {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NoConvergence { lo, hi, iterations: MAX_ITERATIONS })
}

/// Luxemburg functional of `a_k = d̄(X_k, Y_k)`, `k ≤ n_terms`.
pub fn eta_metric(
    kind: SpaceKind,
    m: &OrliczFunction,
    x: &FuzzySeq,
    y: &FuzzySeq,
    n_terms: usize,
    tol: f64,
) -> Result<f64> {
    luxemburg(kind, m, &DistSeq::between(x, y, n_terms)?, tol)
}

/// A sequence space `Z(M, Δₘⁿ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Space {
    #[serde(flatten)]
    pub kind: SpaceKind,
    pub orlicz: OrliczFunction,
    pub m: usize,
    pub n: usize,
}

/// The two parts of the f-metric: `head + tail`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FMetric {
    /// `Σ_{r=1}^{mn} d̄(X_r, Y_r)`.
    pub head: f64,
    /// Luxemburg functional of `d̄(Δₘⁿ X_k, Δₘⁿ Y_k)`.
    pub tail: f64,
}

impl FMetric {
    pub fn value(&self) -> f64 {
        self.head + self.tail
    }
}

impl Space {
    pub fn new(kind: SpaceKind, orlicz: OrliczFunction, m: usize, n: usize) -> Result<Self> {
        let space = Space { kind, orlicz, m, n };
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::invalid("difference gap m must be >= 1"));
        }
        self.orlicz.validate()?;
        // round-trip through the checked constructor to re-validate p
        SpaceKind::new(self.kind.family(), self.kind.p()).map(|_| ())
    }

    pub fn with_kind(&self, kind: SpaceKind) -> Space {
        Space { kind, ..self.clone() }
    }

    pub fn with_order(&self, n: usize) -> Space {
        Space { n, ..self.clone() }
    }

    pub fn with_orlicz(&self, orlicz: OrliczFunction) -> Space {
        Space { orlicz, ..self.clone() }
    }

    /// `a_k = d̄(Δₘⁿ X_k, 0̄)` for `k = 1..=n_terms`.
    pub fn distances(&self, x: &FuzzySeq, n_terms: usize) -> Result<DistSeq> {
        DistSeq::from_zero(&delta_terms(x, self.m, self.n, n_terms)?)
    }

    /// The f-metric: head sum over the first `mn` terms plus the Luxemburg
    /// functional of the differenced sequences.
    pub fn f_metric(&self, x: &FuzzySeq, y: &FuzzySeq, n_terms: usize, tol: f64) -> Result<FMetric> {
        let head_len = self.m * self.n;
        let head = x
            .terms(1, head_len)?
            .iter()
            .zip(&y.terms(1, head_len)?)
            .map(|(a, b)| a.distance(b))
            .sum();
        let dx = delta_terms(x, self.m, self.n, n_terms)?;
        let dy = delta_terms(y, self.m, self.n, n_terms)?;
        let a = DistSeq::new(dx.iter().zip(&dy).map(|(a, b)| a.distance(b)).collect())?;
        let tail = luxemburg(self.kind, &self.orlicz, &a, tol)?;
        Ok(FMetric { head, tail })
    }

    /// Truncation-scale membership diagnostic for `x`.
    pub fn membership(&self, x: &FuzzySeq, diagnostic: &Diagnostic) -> Result<MembershipReport> {
        diagnostic.validate()?;
        let n_max = *diagnostic.schedule.last().expect("validated schedule is non-empty");
        let a = self.distances(x, n_max)?;
        Ok(diagnostic.evaluate(self.kind, &self.orlicz, &a))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[M={}, Δ_{}^{}]", self.kind, self.orlicz, self.m, self.n)
    }
}

/// Finite-scale surrogate thresholds for "bounded" versus "divergent".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// Minimum growth factor of Φ per doubling of N for a divergent trend.
    pub divergence_factor: f64,
    /// Maximum successive relative change for a stable value.
    pub stability: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            divergence_factor: 2.0,
            stability: 0.10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Bounded,
    DivergentTrend,
    Inconclusive,
}

impl Verdict {
    /// True for the pair `{Bounded, DivergentTrend}` in either order.
    pub fn contradicts(self, other: Verdict) -> bool {
        matches!(
            (self, other),
            (Verdict::Bounded, Verdict::DivergentTrend) | (Verdict::DivergentTrend, Verdict::Bounded)
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Bounded => "bounded",
            Verdict::DivergentTrend => "divergent-trend",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Parameters of a membership diagnostic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    /// Strictly increasing truncation lengths.
    pub schedule: Vec<usize>,
    /// Fixed ρ at which Φ is tabulated.
    pub rho_ref: f64,
    pub tol: f64,
    pub thresholds: Thresholds,
}

impl Diagnostic {
    /// Schedule `N, 2N, 4N` with ρ = 1 and default tolerance and thresholds.
    pub fn doubling(n: usize) -> Self {
        Diagnostic::new(vec![n, 2 * n, 4 * n])
    }

    pub fn new(schedule: Vec<usize>) -> Self {
        Diagnostic {
            schedule,
            rho_ref: 1.0,
            tol: DEFAULT_TOL,
            thresholds: Thresholds::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schedule.len() < 2 || self.schedule[0] == 0 || self.schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid(format!(
                "schedule must hold at least two strictly increasing positive lengths, got {:?}",
                self.schedule
            )));
        }
        check_rho(self.rho_ref)?;
        if !(self.tol > 0.0) {
            return Err(Error::invalid("diagnostic tolerance must be > 0"));
        }
        let t = self.thresholds;
        if !(t.divergence_factor > 1.0 && t.stability > 0.0) {
            return Err(Error::invalid("thresholds need divergence_factor > 1 and stability > 0"));
        }
        Ok(())
    }

    /// Tabulates Φ(ρ_ref) and the Luxemburg value for every prefix length in
    /// the schedule and classifies the trend. `a` must cover the longest prefix.
    pub fn evaluate(&self, kind: SpaceKind, m: &OrliczFunction, a: &DistSeq) -> MembershipReport {
        let mut phi_values = Vec::with_capacity(self.schedule.len());
        let mut luxemburg_values = Vec::with_capacity(self.schedule.len());
        let mut failure = None;
        for &n in &self.schedule {
            let prefix = a.prefix(n);
            phi_values.push(aggregate(kind, m, &prefix, self.rho_ref));
            match luxemburg(kind, m, &prefix, self.tol) {
                Ok(v) => luxemburg_values.push(Some(v)),
                Err(e) => {
                    failure.get_or_insert_with(|| format!("N = {n}: {e}"));
                    luxemburg_values.push(None);
                }
            }
        }
        let verdict = classify(&self.schedule, &phi_values, &luxemburg_values, &self.thresholds);
        MembershipReport {
            kind,
            rho_ref: self.rho_ref,
            n_schedule: self.schedule.clone(),
            phi_values,
            luxemburg_values,
            verdict,
            failure,
        }
    }
}

fn relative_change(prev: f64, next: f64) -> f64 {
    if prev == next {
        0.0
    } else {
        (next - prev).abs() / prev.abs()
    }
}

fn classify(schedule: &[usize], phi: &[f64], lux: &[Option<f64>], t: &Thresholds) -> Verdict {
    let growing = phi.windows(2).zip(schedule.windows(2)).all(|(v, n)| {
        let doublings = (n[1] as f64 / n[0] as f64).log2();
        v[0] > 0.0 && v[1] >= v[0] * t.divergence_factor.powf(doublings)
    });
    if growing {
        return Verdict::DivergentTrend;
    }
    let stable = |vals: &[f64]| vals.iter().all(|v| v.is_finite()) && vals.windows(2).all(|w| relative_change(w[0], w[1]) < t.stability);
    let lux: Option<Vec<f64>> = lux.iter().copied().collect();
    match lux {
        Some(lux) if stable(phi) && stable(&lux) => Verdict::Bounded,
        _ => Verdict::Inconclusive,
    }
}

/// Per-truncation functional values and a bounded/divergent verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub kind: SpaceKind,
    pub rho_ref: f64,
    #[serde(rename = "N_schedule")]
    pub n_schedule: Vec<usize>,
    pub phi_values: Vec<f64>,
    pub luxemburg_values: Vec<Option<f64>>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: f64) -> SpaceKind {
        SpaceKind::Lp { p }
    }

    fn dist(v: &[f64]) -> DistSeq {
        DistSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn phi_hand_values() {
        let id = OrliczFunction::identity();
        let v = phi(lp(2.0), &id, &dist(&[3.0, 4.0]), 5.0).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let v = phi(SpaceKind::Cp { p: 1.0 }, &id, &dist(&[1.0, 1.0]), 1.0).unwrap();
        assert_eq!(v, 2.0);
        // Op p = 2 on [1, 1]: 1·1² + ½·2² = 3
        let v = phi(SpaceKind::Op { p: 2.0 }, &id, &dist(&[1.0, 1.0]), 1.0).unwrap();
        assert_eq!(v, 3.0);
        // Cinf on [3, 1]: max(3, 2) = 3
        let v = phi(SpaceKind::Cinf, &id, &dist(&[3.0, 1.0]), 1.0).unwrap();
        assert_eq!(v, 3.0);
    }

    #[test]
    fn phi_of_zero_sequence_is_zero() {
        let zeros = dist(&[0.0; 7]);
        for kind in SpaceKind::all(2.0).unwrap() {
            for m in [OrliczFunction::identity(), OrliczFunction::exp_minus_one()] {
                assert_eq!(phi(kind, &m, &zeros, 0.3).unwrap(), 0.0);
                assert_eq!(luxemburg(kind, &m, &zeros, 1e-10).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn phi_rejects_bad_rho() {
        let id = OrliczFunction::identity();
        assert!(phi(lp(1.0), &id, &dist(&[1.0]), 0.0).is_err());
        assert!(phi(lp(1.0), &id, &dist(&[1.0]), -1.0).is_err());
        assert!(phi(lp(1.0), &id, &dist(&[1.0]), f64::NAN).is_err());
    }

    #[test]
    fn luxemburg_hand_values() {
        let id = OrliczFunction::identity();
        let v = luxemburg(lp(2.0), &id, &dist(&[3.0, 4.0]), 1e-10).unwrap();
        assert!((v - 5.0).abs() <= 5e-10 * 5.0);
        let sq = OrliczFunction::power(2.0).unwrap();
        let v = luxemburg(lp(1.0), &sq, &dist(&[1.0, 1.0]), 1e-10).unwrap();
        assert!((v - 2f64.sqrt()).abs() <= 1e-9);
        assert!(luxemburg(lp(1.0), &sq, &dist(&[1.0]), 0.0).is_err());
    }

    #[test]
    fn luxemburg_brackets_the_root() {
        let m = OrliczFunction::sum(OrliczFunction::identity(), OrliczFunction::cube());
        let a = dist(&[0.5, 2.0, 0.0, 7.0, 1e-3]);
        let tol = 1e-10;
        for kind in SpaceKind::all(1.5).unwrap() {
            let r = luxemburg(kind, &m, &a, tol).unwrap();
            assert!(normalized(kind, &m, &a, r * (1.0 + 10.0 * tol)).unwrap() <= 1.0);
            assert!(normalized(kind, &m, &a, r * (1.0 - 10.0 * tol)).unwrap() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn luxemburg_handles_extreme_scales() {
        let m = OrliczFunction::exp_minus_one();
        for scale in [1e-200, 1e-5, 1.0, 1e5, 1e200] {
            let a = dist(&[scale, 2.0 * scale]);
            let r = luxemburg(SpaceKind::Cinf, &m, &a, 1e-10).unwrap();
            assert!(r > 0.0 && r.is_finite(), "scale {scale}: {r}");
        }
    }

    #[test]
    fn cinf_and_oinf_coincide() {
        let m = OrliczFunction::cube();
        let a = dist(&[1.0, 0.2, 3.0, 0.0, 0.7]);
        assert_eq!(phi(SpaceKind::Cinf, &m, &a, 2.0).unwrap(), phi(SpaceKind::Oinf, &m, &a, 2.0).unwrap());
    }

    #[test]
    fn kind_serde_and_validation() {
        let k: SpaceKind = serde_json::from_str(r#"{"family":"Cp","p":2}"#).unwrap();
        assert_eq!(k, SpaceKind::Cp { p: 2.0 });
        let k: SpaceKind = serde_json::from_str(r#"{"family":"Cinf"}"#).unwrap();
        assert_eq!(k, SpaceKind::Cinf);
        assert!(serde_json::from_str::<SpaceKind>(r#"{"family":"Lp"}"#).is_err());
        assert!(serde_json::from_str::<SpaceKind>(r#"{"family":"Op","p":0.5}"#).is_err());
        assert_eq!(serde_json::to_string(&SpaceKind::Oinf).unwrap(), r#"{"family":"Oinf"}"#);
    }

    #[test]
    fn dist_seq_validation() {
        assert!(DistSeq::new(vec![1.0, -0.1]).is_err());
        assert!(DistSeq::new(vec![f64::INFINITY]).is_err());
        assert!(DistSeq::new(vec![]).is_ok());
    }

    #[test]
    fn eta_metric_examples() {
        let id = OrliczFunction::identity();
        let x = FuzzySeq::zero_padded(vec![FuzzyReal::crisp(3.0).unwrap()]);
        let zero = FuzzySeq::zero();
        for n in [1, 5, 40] {
            let v = eta_metric(lp(2.0), &id, &x, &zero, n, 1e-12).unwrap();
            assert!((v - 3.0).abs() < 1e-10);
            assert_eq!(eta_metric(lp(2.0), &id, &x, &x, n, 1e-12).unwrap(), 0.0);
        }
    }

    #[test]
    fn f_metric_examples() {
        let space = Space::new(SpaceKind::Cp { p: 1.0 }, OrliczFunction::identity(), 1, 1).unwrap();
        let ones = FuzzySeq::constant(FuzzyReal::one());
        let zero = FuzzySeq::zero();
        let f = space.f_metric(&ones, &zero, 30, 1e-10).unwrap();
        assert_eq!(f.head, 1.0);
        assert_eq!(f.tail, 0.0);
        assert_eq!(space.f_metric(&ones, &ones, 30, 1e-10).unwrap().value(), 0.0);

        // n = 0: no head, plain eta metric
        let l2 = Space::new(lp(2.0), OrliczFunction::identity(), 1, 0).unwrap();
        let x = FuzzySeq::zero_padded(vec![FuzzyReal::crisp(3.0).unwrap(), FuzzyReal::crisp(4.0).unwrap()]);
        let f = l2.f_metric(&x, &zero, 10, 1e-12).unwrap();
        assert_eq!(f.head, 0.0);
        assert!((f.tail - 5.0).abs() < 1e-10);
        let eta = eta_metric(lp(2.0), &OrliczFunction::identity(), &x, &zero, 10, 1e-12).unwrap();
        assert_eq!(f.tail, eta);
    }

    #[test]
    fn classify_rules() {
        let t = Thresholds::default();
        let s = [50, 100, 200];
        assert_eq!(classify(&s, &[0.0; 3], &[Some(0.0); 3], &t), Verdict::Bounded);
        assert_eq!(classify(&s, &[1.0, 1.05, 1.06], &[Some(2.0), Some(2.01), Some(2.02)], &t), Verdict::Bounded);
        assert_eq!(classify(&s, &[1.0, 2.0, 4.0], &[Some(1.0); 3], &t), Verdict::DivergentTrend);
        assert_eq!(classify(&s, &[1.0, 1.9, 3.8], &[Some(1.0); 3], &t), Verdict::Inconclusive);
        assert_eq!(classify(&s, &[1.0, 1.0, 1.0], &[Some(1.0), None, Some(1.0)], &t), Verdict::Inconclusive);
        // schedule steps of 4× need 4× growth
        assert_eq!(classify(&[10, 40], &[1.0, 3.9], &[Some(1.0); 2], &t), Verdict::Inconclusive);
        assert_eq!(classify(&[10, 40], &[1.0, 4.0], &[Some(1.0); 2], &t), Verdict::DivergentTrend);
    }

    #[test]
    fn diagnostic_validation() {
        assert!(Diagnostic::new(vec![10]).validate().is_err());
        assert!(Diagnostic::new(vec![10, 10]).validate().is_err());
        assert!(Diagnostic::new(vec![0, 10]).validate().is_err());
        assert!(Diagnostic::doubling(10).validate().is_ok());
    }
}
