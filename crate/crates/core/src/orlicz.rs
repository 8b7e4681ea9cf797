//! Orlicz functions: a small expression language of built-in convex functions
//! closed under composition and sums, with empirical checks of the defining
//! axioms, the scaling inequality `M(λx) ≤ λM(x)` and the Δ₂-condition.
//!
//! Serialized as a nested tagged expression, e.g. `{"power": 2}` or
//! `{"sum": [{"identity": {}}, {"cube": {}}]}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used by the grid checks, relative to `max(1, |value|)`.
pub const CHECK_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OrliczFunction {
    /// `x^p`, `p >= 1`.
    Power(f64),
    /// `x` (the `M(x) = |x|` of the worked examples).
    Identity {},
    /// `x³`.
    Cube {},
    /// `eᵡ − 1`.
    ExpMinusOne {},
    /// `outer(inner(x))`.
    Compose(Box<OrliczFunction>, Box<OrliczFunction>),
    /// `a(x) + b(x)`.
    Sum(Box<OrliczFunction>, Box<OrliczFunction>),
}

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self> {
        let m = OrliczFunction::Power(p);
        m.validate()?;
        Ok(m)
    }

    pub fn identity() -> Self {
        OrliczFunction::Identity {}
    }

    pub fn cube() -> Self {
        OrliczFunction::Cube {}
    }

    pub fn exp_minus_one() -> Self {
        OrliczFunction::ExpMinusOne {}
    }

    pub fn compose(outer: OrliczFunction, inner: OrliczFunction) -> Self {
        OrliczFunction::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn sum(a: OrliczFunction, b: OrliczFunction) -> Self {
        OrliczFunction::Sum(Box::new(a), Box::new(b))
    }

    /// Checks parameters recursively (`p` finite and `>= 1` for powers).
    pub fn validate(&self) -> Result<()> {
        match self {
            OrliczFunction::Power(p) if !p.is_finite() || *p < 1.0 => {
                Err(Error::invalid(format!("power exponent must be finite and >= 1, got {p}")))
            }
            OrliczFunction::Compose(a, b) | OrliczFunction::Sum(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// `M(x)` for `x >= 0`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::invalid(format!("Orlicz functions are defined on [0, inf), got {x}")));
        }
        Ok(self.value(x))
    }

    /// Unchecked evaluation; callers guarantee `x >= 0`.
    pub(crate) fn value(&self, x: f64) -> f64 {
        match self {
            OrliczFunction::Power(p) => {
                if p.fract() == 0.0 && *p <= i32::MAX as f64 {
                    x.powi(*p as i32)
                } else {
                    x.powf(*p)
                }
            }
            OrliczFunction::Identity {} => x,
            OrliczFunction::Cube {} => x * x * x,
            OrliczFunction::ExpMinusOne {} => x.exp_m1(),
            OrliczFunction::Compose(outer, inner) => outer.value(inner.value(x)),
            OrliczFunction::Sum(a, b) => a.value(x) + b.value(x),
        }
    }

    /// Checks the Orlicz axioms on a sorted, non-negative grid of at least
    /// three points.
    pub fn check_axioms(&self, grid: &[f64]) -> Result<AxiomReport> {
        if grid.len() < 3 {
            return Err(Error::invalid("axiom grid needs at least 3 points"));
        }
        if grid.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::invalid("axiom grid must be finite and non-negative"));
        }
        if grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("axiom grid must be sorted"));
        }
        let values: Vec<f64> = grid.iter().map(|&x| self.value(x)).collect();

        let zero_at_zero = self.value(0.0) == 0.0;
        let monotone = values.windows(2).all(|w| w[1] >= w[0]);
        let positive = grid.iter().zip(&values).all(|(&x, &v)| x == 0.0 || v > 0.0);

        // Midpoint convexity over pairs at several strides.
        let mut midpoint_convex = true;
        'outer: for stride in 1..=4usize {
            for i in 0..grid.len().saturating_sub(stride) {
                let (x, y) = (grid[i], grid[i + stride]);
                let avg = 0.5 * (values[i] + values[i + stride]);
                if self.value(0.5 * (x + y)) > avg + CHECK_SLACK * avg.abs().max(1.0) {
                    midpoint_convex = false;
                    break 'outer;
                }
            }
        }

        // Extend the grid by doubling its largest point; convexity with M(0) = 0
        // forces M(2x) >= 2M(x), so the values must at least double each step.
        let top = grid[grid.len() - 1];
        let mut divergent_trend = top > 0.0;
        let mut prev = self.value(top);
        let mut x = top;
        for _ in 0..4 {
            x *= 2.0;
            let next = self.value(x);
            if !(prev > 0.0 && next >= 2.0 * prev * (1.0 - CHECK_SLACK)) {
                divergent_trend = false;
                break;
            }
            prev = next;
        }

        Ok(AxiomReport {
            zero_at_zero,
            monotone,
            midpoint_convex,
            positive,
            divergent_trend,
        })
    }

    /// `M(λx) ≤ λM(x)` for every pair of `lambdas × xs`.
    pub fn check_scaling_inequality(&self, lambdas: &[f64], xs: &[f64]) -> Result<bool> {
        if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0 && **l < 1.0)) {
            return Err(Error::invalid(format!("lambda must lie in (0, 1), got {l}")));
        }
        if let Some(x) = xs.iter().find(|x| !(**x >= 0.0)) {
            return Err(Error::invalid(format!("x must be non-negative, got {x}")));
        }
        Ok(lambdas.iter().all(|&l| {
            xs.iter().all(|&x| {
                let rhs = l * self.value(x);
                self.value(l * x) <= rhs + CHECK_SLACK * rhs.abs().max(1.0)
            })
        }))
    }

    /// Empirical Δ₂ probe: for each `L`, the constant
    /// `K = max M(Lx) / (L·M(x))` over the probe points, and again over the
    /// probe range doubled. `K` is reported only if it changes by less than 5%.
    pub fn check_delta2(&self, xs: &[f64], ls: &[f64]) -> Result<Delta2Report> {
        if xs.is_empty() || xs.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::invalid("delta-2 probe points must be finite and positive"));
        }
        if ls.is_empty() || ls.iter().any(|l| !(l.is_finite() && *l > 1.0)) {
            return Err(Error::invalid("delta-2 factors L must be finite and > 1"));
        }
        let ratio_max = |probe: &mut dyn Iterator<Item = f64>, l: f64| {
            probe
                .map(|x| {
                    let r = self.value(l * x) / (l * self.value(x));
                    if r.is_nan() {
                        f64::INFINITY
                    } else {
                        r
                    }
                })
                .fold(0.0, f64::max)
        };
        let per_l = ls
            .iter()
            .map(|&l| {
                let base = ratio_max(&mut xs.iter().copied(), l);
                let extended = ratio_max(&mut xs.iter().flat_map(|&x| [x, 2.0 * x]), l);
                let stable = base.is_finite() && extended.is_finite() && extended <= base * 1.05;
                Delta2Probe {
                    l,
                    k_base: base,
                    k_extended: extended,
                    k: stable.then_some(extended),
                }
            })
            .collect();
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(0.0, f64::max);
        Ok(Delta2Report {
            probe_range: [lo, 2.0 * hi],
            per_l,
        })
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrliczFunction::Power(p) => write!(f, "x^{p}"),
            OrliczFunction::Identity {} => write!(f, "x"),
            OrliczFunction::Cube {} => write!(f, "x^3"),
            OrliczFunction::ExpMinusOne {} => write!(f, "exp(x)-1"),
            OrliczFunction::Compose(a, b) => write!(f, "({a})∘({b})"),
            OrliczFunction::Sum(a, b) => write!(f, "({a})+({b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub zero_at_zero: bool,
    pub monotone: bool,
    pub midpoint_convex: bool,
    pub positive: bool,
    pub divergent_trend: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.zero_at_zero && self.monotone && self.midpoint_convex && self.positive && self.divergent_trend
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta2Probe {
    pub l: f64,
    /// Max ratio over the supplied probe points.
    pub k_base: f64,
    /// Max ratio after doubling the probe range.
    pub k_extended: f64,
    /// The stabilized constant, absent when Δ₂ likely fails for this `L`.
    pub k: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta2Report {
    pub probe_range: [f64; 2],
    pub per_l: Vec<Delta2Probe>,
}

impl Delta2Report {
    /// The largest stabilized `K` across all probed `L`, or `None` if any `L` failed.
    pub fn constant(&self) -> Option<f64> {
        self.per_l
            .iter()
            .map(|p| p.k)
            .try_fold(0.0f64, |acc, k| k.map(|k| acc.max(k)))
    }
}

/// `count` evenly spaced points covering `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "a uniform grid needs at least two points");
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|i| if i + 1 == count { hi } else { lo + step * i as f64 }).collect()
}
