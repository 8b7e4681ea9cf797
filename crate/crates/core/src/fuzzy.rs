//! Fuzzy real numbers represented by their α-cuts.
//!
//! A [`FuzzyReal`] stores a finite list of α levels (always containing 0 and 1)
//! together with the closed interval cut at each level. Between stored levels the
//! endpoint functions `α ↦ lo(α)` and `α ↦ hi(α)` are linear, so every
//! operation in this module is exact on the representation: binary operations
//! first merge the two α-grids, and [`FuzzyReal::abs`] inserts the extra levels
//! where an endpoint changes sign.
//!
//! The serialized form is an array of `[alpha, lo, hi]` triples with ascending
//! alphas, the first equal to 0 and the last equal to 1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed bounded interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid(format!("interval endpoints must be finite, got [{lo}, {hi}]")));
        }
        if lo > hi {
            return Err(Error::invalid(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `max(|lo − lo'|, |hi − hi'|)`, the interval metric underlying d̄.
    pub fn distance(&self, other: &Interval) -> f64 {
        (self.lo - other.lo).abs().max((self.hi - other.hi).abs())
    }

    pub fn scale(self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval { lo: c * self.lo, hi: c * self.hi }
        } else {
            Interval { lo: c * self.hi, hi: c * self.lo }
        }
    }

    /// The image of the interval under `t ↦ |t|`.
    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            Interval { lo: -self.hi, hi: -self.lo }
        } else {
            Interval { lo: 0.0, hi: (-self.lo).max(self.hi) }
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo + rhs.lo, hi: self.hi + rhs.hi }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo - rhs.hi, hi: self.hi - rhs.lo }
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A normal, convex fuzzy real number given by nested α-cuts with
/// piecewise-linear endpoints.
///
/// Invariants (checked by every public constructor, preserved by every
/// operation): alphas strictly increase from 0 to 1, every cut has
/// `lo <= hi`, `lo` is non-decreasing and `hi` non-increasing in α.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 3]>", into = "Vec<[f64; 3]>")]
pub struct FuzzyReal {
    alphas: Vec<f64>,
    cuts: Vec<Interval>,
}

impl FuzzyReal {
    /// Builds a fuzzy number from `(alpha, cut)` levels, validating every invariant.
    pub fn from_levels<I>(levels: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, Interval)>,
    {
        let (alphas, cuts): (Vec<f64>, Vec<Interval>) = levels.into_iter().unzip();
        if alphas.len() < 2 {
            return Err(Error::invalid("a fuzzy number needs at least the levels alpha = 0 and alpha = 1"));
        }
        if alphas[0] != 0.0 || alphas[alphas.len() - 1] != 1.0 {
            return Err(Error::invalid("alpha levels must start at 0 and end at 1"));
        }
        for (i, w) in alphas.windows(2).enumerate() {
            if !(w[0] < w[1]) {
                return Err(Error::invalid(format!(
                    "alpha levels must be strictly increasing (level {} = {}, level {} = {})",
                    i,
                    w[0],
                    i + 1,
                    w[1]
                )));
            }
        }
        for (i, w) in cuts.windows(2).enumerate() {
            if w[1].lo < w[0].lo || w[1].hi > w[0].hi {
                return Err(Error::invalid(format!(
                    "cuts are not nested: cut at alpha {} = {} is not inside cut at alpha {} = {}",
                    alphas[i + 1],
                    w[1],
                    alphas[i],
                    w[0]
                )));
            }
        }
        Ok(FuzzyReal { alphas, cuts })
    }

    /// Builds a fuzzy number from `[alpha, lo, hi]` triples (the wire form).
    pub fn from_triples(triples: &[[f64; 3]]) -> Result<Self> {
        let levels = triples
            .iter()
            .map(|&[alpha, lo, hi]| Interval::new(lo, hi).map(|cut| (alpha, cut)))
            .collect::<Result<Vec<_>>>()?;
        FuzzyReal::from_levels(levels)
    }

    pub fn to_triples(&self) -> Vec<[f64; 3]> {
        self.levels().map(|(a, c)| [a, c.lo, c.hi]).collect()
    }

    /// The crisp number r̄: every cut is `[r, r]`.
    pub fn crisp(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::invalid(format!("crisp value must be finite, got {r}")));
        }
        Ok(Self::crisp_unchecked(r))
    }

    fn crisp_unchecked(r: f64) -> Self {
        FuzzyReal {
            alphas: vec![0.0, 1.0],
            cuts: vec![Interval::point(r); 2],
        }
    }

    /// The additive identity 0̄.
    pub fn zero() -> Self {
        Self::crisp_unchecked(0.0)
    }

    /// The multiplicative identity 1̄.
    pub fn one() -> Self {
        Self::crisp_unchecked(1.0)
    }

    /// Triangular number with peak at `center`; the cut at α is
    /// `[center − (1−α)·left_spread, center + (1−α)·right_spread]`.
    pub fn triangular(center: f64, left_spread: f64, right_spread: f64) -> Result<Self> {
        if !center.is_finite() || !left_spread.is_finite() || !right_spread.is_finite() {
            return Err(Error::invalid("triangular parameters must be finite"));
        }
        if left_spread < 0.0 || right_spread < 0.0 {
            return Err(Error::invalid(format!(
                "spreads must be non-negative, got left {left_spread}, right {right_spread}"
            )));
        }
        Ok(FuzzyReal {
            alphas: vec![0.0, 1.0],
            cuts: vec![
                Interval { lo: center - left_spread, hi: center + right_spread },
                Interval::point(center),
            ],
        })
    }

    /// Stored `(alpha, cut)` pairs in ascending α.
    pub fn levels(&self) -> impl Iterator<Item = (f64, Interval)> + '_ {
        self.alphas.iter().copied().zip(self.cuts.iter().copied())
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Closure of the support, X⁰.
    pub fn support(&self) -> Interval {
        self.cuts[0]
    }

    /// The 1-cut, never empty.
    pub fn core(&self) -> Interval {
        self.cuts[self.cuts.len() - 1]
    }

    pub fn is_crisp(&self) -> bool {
        let s = self.support();
        s.lo == s.hi
    }

    /// True when every cut is `[0, 0]`.
    pub fn is_zero(&self) -> bool {
        self.support() == Interval::point(0.0)
    }

    /// The α-cut X^α for α in `[0, 1]`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        Ok(self.cut_at(alpha))
    }

    /// Interpolated cut; `alpha` must already be in `[0, 1]`.
    fn cut_at(&self, alpha: f64) -> Interval {
        let i = self.alphas.partition_point(|&a| a < alpha);
        if i < self.alphas.len() && self.alphas[i] == alpha {
            return self.cuts[i];
        }
        let (a0, a1) = (self.alphas[i - 1], self.alphas[i]);
        let (c0, c1) = (self.cuts[i - 1], self.cuts[i]);
        let t = (alpha - a0) / (a1 - a0);
        let lo = lerp_between(c0.lo, c1.lo, t);
        // lo stays inside [c0.lo, c1.lo] and hi inside [c1.hi, c0.hi], so raising
        // hi to lo cannot break nestedness.
        let hi = lerp_between(c0.hi, c1.hi, t).max(lo);
        Interval { lo, hi }
    }

    /// Membership grade `sup{α : t ∈ X^α}`, 0 outside the support.
    pub fn membership(&self, t: f64) -> f64 {
        if !self.support().contains(t) {
            return 0.0;
        }
        let from_left = self.last_alpha_where(|c| c.lo, t, |v, t| v <= t);
        let from_right = self.last_alpha_where(|c| c.hi, t, |v, t| v >= t);
        from_left.min(from_right)
    }

    /// Largest α such that `holds(endpoint(α), t)`, given that the predicate holds
    /// at α = 0 and the set where it holds is an initial segment of `[0, 1]`.
    fn last_alpha_where(
        &self,
        endpoint: impl Fn(&Interval) -> f64,
        t: f64,
        holds: impl Fn(f64, f64) -> bool,
    ) -> f64 {
        let n = self.alphas.len();
        let last = (0..n).take_while(|&i| holds(endpoint(&self.cuts[i]), t)).last().unwrap_or(0);
        if last == n - 1 {
            return 1.0;
        }
        let (v0, v1) = (endpoint(&self.cuts[last]), endpoint(&self.cuts[last + 1]));
        let (a0, a1) = (self.alphas[last], self.alphas[last + 1]);
        let frac = ((t - v0) / (v1 - v0)).clamp(0.0, 1.0);
        a0 + frac * (a1 - a0)
    }

    /// Applies `op` cut-wise on the union of both α-grids.
    fn zip_cuts(&self, other: &FuzzyReal, op: impl Fn(Interval, Interval) -> Interval) -> FuzzyReal {
        let alphas = merge_grids(&self.alphas, &other.alphas);
        let cuts = alphas.iter().map(|&a| op(self.cut_at(a), other.cut_at(a))).collect();
        FuzzyReal { alphas, cuts }
    }

    /// Multiplies every cut by `c`, swapping endpoints when `c < 0`.
    ///
    /// Panics if `c` is not finite.
    pub fn scale(&self, c: f64) -> FuzzyReal {
        assert!(c.is_finite(), "scale factor must be finite, got {c}");
        FuzzyReal {
            alphas: self.alphas.clone(),
            cuts: self.cuts.iter().map(|cut| cut.scale(c)).collect(),
        }
    }

    /// The absolute value |X|, computed cut-wise.
    ///
    /// Levels are inserted wherever `lo`, `hi` or `lo + hi` crosses zero inside a
    /// segment, which are exactly the kinks of the cut-wise absolute value.
    pub fn abs(&self) -> FuzzyReal {
        let mut alphas = Vec::with_capacity(self.alphas.len());
        for i in 0..self.alphas.len() {
            alphas.push(self.alphas[i]);
            if i + 1 == self.alphas.len() {
                break;
            }
            let (a0, a1) = (self.alphas[i], self.alphas[i + 1]);
            let (c0, c1) = (self.cuts[i], self.cuts[i + 1]);
            let mut kinks: Vec<f64> = [
                (c0.lo, c1.lo),
                (c0.hi, c1.hi),
                (c0.lo + c0.hi, c1.lo + c1.hi),
            ]
            .iter()
            .filter_map(|&(v0, v1)| {
                if (v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0) {
                    let a = a0 + (a1 - a0) * (v0 / (v0 - v1));
                    (a > a0 && a < a1).then_some(a)
                } else {
                    None
                }
            })
            .collect();
            kinks.sort_by(f64::total_cmp);
            kinks.dedup();
            alphas.extend(kinks);
        }
        let cuts = alphas.iter().map(|&a| self.cut_at(a).abs()).collect();
        FuzzyReal { alphas, cuts }
    }

    /// The metric d̄(X, Y) = sup over α of `max(|ΔL(α)|, |ΔR(α)|)`.
    ///
    /// Endpoint differences are piecewise linear in α, so the supremum is a
    /// maximum over the merged breakpoints.
    pub fn distance(&self, other: &FuzzyReal) -> f64 {
        merge_grids(&self.alphas, &other.alphas)
            .into_iter()
            .map(|a| self.cut_at(a).distance(&other.cut_at(a)))
            .fold(0.0, f64::max)
    }

    /// The usual partial order on fuzzy numbers: `X ≤ Y` iff both endpoints of
    /// every cut of X are at most those of Y.
    pub fn le(&self, other: &FuzzyReal) -> bool {
        merge_grids(&self.alphas, &other.alphas).into_iter().all(|a| {
            let (x, y) = (self.cut_at(a), other.cut_at(a));
            x.lo <= y.lo && x.hi <= y.hi
        })
    }

    /// Cut-wise comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &FuzzyReal, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

/// d̄(X, Y).
pub fn d_bar(x: &FuzzyReal, y: &FuzzyReal) -> f64 {
    x.distance(y)
}

fn lerp_between(a: f64, b: f64, t: f64) -> f64 {
    (a + t * (b - a)).clamp(a.min(b), a.max(b))
}

/// Sorted union of two α-grids.
pub fn merge_grids(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

impl Add for &FuzzyReal {
    type Output = FuzzyReal;

    fn add(self, rhs: &FuzzyReal) -> FuzzyReal {
        self.zip_cuts(rhs, |x, y| x + y)
    }
}

impl Add for FuzzyReal {
    type Output = FuzzyReal;

    fn add(self, rhs: FuzzyReal) -> FuzzyReal {
        &self + &rhs
    }
}

impl Sub for &FuzzyReal {
    type Output = FuzzyReal;

    fn sub(self, rhs: &FuzzyReal) -> FuzzyReal {
        self.zip_cuts(rhs, |x, y| x - y)
    }
}

impl Sub for FuzzyReal {
    type Output = FuzzyReal;

    fn sub(self, rhs: FuzzyReal) -> FuzzyReal {
        &self - &rhs
    }
}

impl Neg for &FuzzyReal {
    type Output = FuzzyReal;

    fn neg(self) -> FuzzyReal {
        self.scale(-1.0)
    }
}

impl Mul<&FuzzyReal> for f64 {
    type Output = FuzzyReal;

    fn mul(self, rhs: &FuzzyReal) -> FuzzyReal {
        rhs.scale(self)
    }
}

impl TryFrom<Vec<[f64; 3]>> for FuzzyReal {
    type Error = Error;

    fn try_from(triples: Vec<[f64; 3]>) -> Result<Self> {
        FuzzyReal::from_triples(&triples)
    }
}

impl From<FuzzyReal> for Vec<[f64; 3]> {
    fn from(x: FuzzyReal) -> Self {
        x.to_triples()
    }
}

impl fmt::Display for FuzzyReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_crisp() {
            return write!(f, "crisp({})", self.core().lo);
        }
        write!(f, "{{")?;
        for (i, (a, c)) in self.levels().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}: {c}")?;
        }
        write!(f, "}}")
    }
}
