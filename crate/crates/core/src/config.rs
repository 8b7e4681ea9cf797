//! JSON job files: named sequences, a space, numeric settings and the
//! per-experiment settings of the verification suite.
//!
//! Every section has defaults, so `{}` is a valid job. Parsing rejects unknown
//! keys and [`JobConfig::validate`] names the first offending field.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::difference::FuzzySeq;
use crate::error::{Error, Result};
use crate::functionals::{Diagnostic, Family, Space, SpaceKind, Thresholds, DEFAULT_TOL};
use crate::fuzzy::FuzzyReal;
use crate::harness::{self, Expectation, MetricAxioms};
use crate::orlicz::{uniform_grid, OrliczFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    Solidity,
    Symmetry,
    ConvergenceFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    X,
    Y,
}

/// How to build a named sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceSpec {
    Zero,
    CrispArithmetic { start: f64, step: f64 },
    CrispGeometric { start: f64, ratio: f64 },
    /// Symmetric triangular numbers with spread `k^(-spread_exponent)`.
    TriangularFamily { center: f64, spread_exponent: f64 },
    /// One half of a built-in counterexample pair.
    Counterexample { pair: Counterexample, part: Part },
    /// Finitely many terms in `[alpha, lo, hi]` wire form, then 0̄.
    Explicit { terms: Vec<FuzzyReal> },
}

impl SequenceSpec {
    fn validate(&self, field: &str) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(format!("{field}.{name}"), format!("must be finite, got {v}")))
            }
        };
        match *self {
            SequenceSpec::CrispArithmetic { start, step } => {
                finite("start", start)?;
                finite("step", step)
            }
            SequenceSpec::CrispGeometric { start, ratio } => {
                finite("start", start)?;
                finite("ratio", ratio)
            }
            SequenceSpec::TriangularFamily { center, spread_exponent } => {
                finite("center", center)?;
                finite("spread_exponent", spread_exponent)
            }
            SequenceSpec::Zero | SequenceSpec::Counterexample { .. } | SequenceSpec::Explicit { .. } => Ok(()),
        }
    }

    pub fn build(&self) -> FuzzySeq {
        match self {
            SequenceSpec::Zero => FuzzySeq::zero(),
            SequenceSpec::CrispArithmetic { start, step } => harness::crisp_arithmetic(*start, *step),
            SequenceSpec::CrispGeometric { start, ratio } => harness::crisp_geometric(*start, *ratio),
            SequenceSpec::TriangularFamily { center, spread_exponent } => harness::triangular_family(*center, *spread_exponent),
            SequenceSpec::Counterexample { pair, part } => {
                let (x, y) = match pair {
                    Counterexample::Solidity => harness::solidity_pair(),
                    Counterexample::Symmetry => harness::symmetry_pair(),
                    Counterexample::ConvergenceFree => harness::convergence_free_pair(),
                };
                match part {
                    Part::X => x,
                    Part::Y => y,
                }
            }
            SequenceSpec::Explicit { terms } => FuzzySeq::zero_padded(terms.clone()),
        }
    }
}

/// A space `Z(M, Δₘⁿ)` as written in a job file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub m: usize,
    pub n: usize,
    pub orlicz: OrliczFunction,
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, orlicz: OrliczFunction, m: usize, n: usize) -> Self {
        SpaceSpec {
            family: kind.family(),
            p: kind.p(),
            m,
            n,
            orlicz,
        }
    }

    pub fn build(&self, field: &str) -> Result<Space> {
        let kind = SpaceKind::new(self.family, self.p).map_err(|e| Error::config(format!("{field}.p"), e.to_string()))?;
        if self.m == 0 {
            return Err(Error::config(format!("{field}.m"), "difference gap must be >= 1"));
        }
        self.orlicz
            .validate()
            .map_err(|e| Error::config(format!("{field}.orlicz"), e.to_string()))?;
        Space::new(kind, self.orlicz.clone(), self.m, self.n).map_err(|e| Error::config(field, e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericSpec {
    /// Truncation length for metrics.
    #[serde(rename = "N")]
    pub n: usize,
    /// Truncation lengths for membership diagnostics; `[N, 2N, 4N]` when absent.
    #[serde(rename = "N_schedule", skip_serializing_if = "Option::is_none")]
    pub n_schedule: Option<Vec<usize>>,
    pub tol: f64,
    pub rho_ref: f64,
}

impl Default for NumericSpec {
    fn default() -> Self {
        NumericSpec {
            n: 50,
            n_schedule: None,
            tol: DEFAULT_TOL,
            rho_ref: 1.0,
        }
    }
}

impl NumericSpec {
    pub fn schedule(&self) -> Vec<usize> {
        self.n_schedule
            .clone()
            .unwrap_or_else(|| vec![self.n, 2 * self.n, 4 * self.n])
    }
}

/// Which sequences `metric` compares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleSpec {
    pub x: String,
}

/// A uniform grid `lo..=hi` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        uniform_grid(self.lo, self.hi, self.count)
    }

    fn validate(&self, field: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::config(field, format!("need finite lo < hi, got [{}, {}]", self.lo, self.hi)));
        }
        if self.count < 3 {
            return Err(Error::config(format!("{field}.count"), "need at least 3 points"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OrliczCheckSpec {
    pub expression: OrliczFunction,
    /// Grid for the axiom checks.
    pub grid: GridSpec,
    /// `λ` values in `(0, 1)` for `M(λx) ≤ λM(x)`, checked against `grid`.
    pub lambdas: GridSpec,
    /// Probe points for the Δ₂ constant.
    pub delta2_points: GridSpec,
    pub delta2_factors: Vec<f64>,
}

impl Default for OrliczCheckSpec {
    fn default() -> Self {
        OrliczCheckSpec {
            expression: OrliczFunction::power(2.0).expect("valid exponent"),
            grid: GridSpec { lo: 0.0, hi: 10.0, count: 201 },
            lambdas: GridSpec { lo: 0.05, hi: 0.95, count: 19 },
            delta2_points: GridSpec { lo: 0.5, hi: 50.0, count: 100 },
            delta2_factors: vec![2.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleSpec {
    pub space: SpaceSpec,
    #[serde(default)]
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InclusionSpec {
    pub orlicz: OrliczFunction,
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureSpec {
    pub outer: OrliczFunction,
    pub m1: OrliczFunction,
    pub m2: OrliczFunction,
    pub space: SpaceSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferenceFormsSpec {
    pub sequences: usize,
    pub max_m: usize,
    pub max_n: usize,
    pub max_k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricAxiomsSpec {
    pub orlicz: OrliczFunction,
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub triples: usize,
    pub n_terms: usize,
    pub tol: f64,
    pub slack: f64,
}

/// Settings for each experiment of `verify-paper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySpec {
    pub solidity: CounterexampleSpec,
    pub symmetry: CounterexampleSpec,
    pub convergence_free: CounterexampleSpec,
    pub inclusions: InclusionSpec,
    pub orlicz_closure: ClosureSpec,
    pub difference_forms: DifferenceFormsSpec,
    pub metric_axioms: MetricAxiomsSpec,
}

impl Default for VerifySpec {
    fn default() -> Self {
        let counter = |kind, orlicz, m, n| CounterexampleSpec {
            space: SpaceSpec::new(kind, orlicz, m, n),
            expect: Expectation::default(),
        };
        let axioms = MetricAxioms::default();
        VerifySpec {
            solidity: counter(SpaceKind::Cp { p: 2.0 }, OrliczFunction::identity(), 3, 2),
            symmetry: counter(SpaceKind::Cinf, OrliczFunction::identity(), 4, 1),
            convergence_free: counter(SpaceKind::Cinf, OrliczFunction::cube(), 3, 1),
            inclusions: InclusionSpec {
                orlicz: OrliczFunction::identity(),
                m: 3,
                n: 2,
                p: 2.0,
                q: 3.0,
            },
            orlicz_closure: ClosureSpec {
                outer: OrliczFunction::cube(),
                m1: OrliczFunction::identity(),
                m2: OrliczFunction::power(2.0).expect("valid exponent"),
                space: SpaceSpec::new(SpaceKind::Cinf, OrliczFunction::identity(), 3, 1),
            },
            difference_forms: DifferenceFormsSpec {
                sequences: 200,
                max_m: 4,
                max_n: 3,
                max_k: 20,
            },
            metric_axioms: MetricAxiomsSpec {
                orlicz: OrliczFunction::identity(),
                m: 2,
                n: 1,
                p: 2.0,
                triples: axioms.triples,
                n_terms: axioms.n_terms,
                tol: axioms.tol,
                slack: axioms.slack,
            },
        }
    }
}

/// A complete job: everything any subcommand needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    pub seed: u64,
    pub numeric: NumericSpec,
    pub thresholds: Thresholds,
    pub space: SpaceSpec,
    pub sequences: BTreeMap<String, SequenceSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<PairSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<SingleSpec>,
    pub orlicz_check: OrliczCheckSpec,
    pub verify: VerifySpec,
}

impl Default for JobConfig {
    fn default() -> Self {
        let seq = |pair, part| SequenceSpec::Counterexample { pair, part };
        let sequences = BTreeMap::from([
            ("zero".to_string(), SequenceSpec::Zero),
            ("solidity_x".to_string(), seq(Counterexample::Solidity, Part::X)),
            ("solidity_y".to_string(), seq(Counterexample::Solidity, Part::Y)),
            ("symmetry_x".to_string(), seq(Counterexample::Symmetry, Part::X)),
            ("symmetry_y".to_string(), seq(Counterexample::Symmetry, Part::Y)),
            ("convergence_free_x".to_string(), seq(Counterexample::ConvergenceFree, Part::X)),
            ("convergence_free_y".to_string(), seq(Counterexample::ConvergenceFree, Part::Y)),
        ]);
        JobConfig {
            seed: 7,
            numeric: NumericSpec::default(),
            thresholds: Thresholds::default(),
            space: SpaceSpec::new(SpaceKind::Cp { p: 2.0 }, OrliczFunction::identity(), 3, 2),
            sequences,
            metric: None,
            membership: None,
            orlicz_check: OrliczCheckSpec::default(),
            verify: VerifySpec::default(),
        }
    }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(field, format!("must be finite and > 0, got {v}")))
    }
}

impl JobConfig {
    /// Parses and validates a job document.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: JobConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(if path == "." { "<root>".to_string() } else { path }, e.into_inner().to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config("--config", format!("{}: {e}", path.display())))?;
        JobConfig::from_json(&text)
    }

    /// Checks every invariant, naming the first offending field.
    pub fn validate(&self) -> Result<()> {
        let num = &self.numeric;
        if num.n == 0 {
            return Err(Error::config("numeric.N", "must be >= 1"));
        }
        positive("numeric.tol", num.tol)?;
        positive("numeric.rho_ref", num.rho_ref)?;
        let schedule = num.schedule();
        if schedule.len() < 2 || schedule[0] == 0 || schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config(
                "numeric.N_schedule",
                format!("need at least two strictly increasing positive lengths, got {schedule:?}"),
            ));
        }
        if !(self.thresholds.divergence_factor > 1.0 && self.thresholds.divergence_factor.is_finite()) {
            return Err(Error::config("thresholds.divergence_factor", "must be finite and > 1"));
        }
        positive("thresholds.stability", self.thresholds.stability)?;
        self.space.build("space")?;

        for (name, spec) in &self.sequences {
            spec.validate(&format!("sequences.{name}"))?;
        }
        if let Some(pair) = &self.metric {
            self.require_sequence("metric.x", &pair.x)?;
            self.require_sequence("metric.y", &pair.y)?;
        }
        if let Some(single) = &self.membership {
            self.require_sequence("membership.x", &single.x)?;
        }

        let oc = &self.orlicz_check;
        oc.expression
            .validate()
            .map_err(|e| Error::config("orlicz_check.expression", e.to_string()))?;
        oc.grid.validate("orlicz_check.grid")?;
        if oc.grid.lo < 0.0 {
            return Err(Error::config("orlicz_check.grid.lo", "must be >= 0"));
        }
        oc.lambdas.validate("orlicz_check.lambdas")?;
        if !(oc.lambdas.lo > 0.0 && oc.lambdas.hi < 1.0) {
            return Err(Error::config("orlicz_check.lambdas", "must lie inside (0, 1)"));
        }
        oc.delta2_points.validate("orlicz_check.delta2_points")?;
        positive("orlicz_check.delta2_points.lo", oc.delta2_points.lo)?;
        if oc.delta2_factors.is_empty() || oc.delta2_factors.iter().any(|l| !(*l > 1.0 && l.is_finite())) {
            return Err(Error::config("orlicz_check.delta2_factors", "need at least one finite factor > 1"));
        }

        let v = &self.verify;
        v.solidity.space.build("verify.solidity.space")?;
        v.symmetry.space.build("verify.symmetry.space")?;
        v.convergence_free.space.build("verify.convergence_free.space")?;
        let inc = &v.inclusions;
        if inc.m == 0 {
            return Err(Error::config("verify.inclusions.m", "must be >= 1"));
        }
        if inc.n == 0 {
            return Err(Error::config("verify.inclusions.n", "must be >= 1 to compare consecutive orders"));
        }
        if !(inc.p >= 1.0 && inc.p.is_finite()) {
            return Err(Error::config("verify.inclusions.p", "must be finite and >= 1"));
        }
        if !(inc.q > inc.p && inc.q.is_finite()) {
            return Err(Error::config("verify.inclusions.q", "must be finite and > p"));
        }
        inc.orlicz
            .validate()
            .map_err(|e| Error::config("verify.inclusions.orlicz", e.to_string()))?;
        let cl = &v.orlicz_closure;
        for (field, f) in [("outer", &cl.outer), ("m1", &cl.m1), ("m2", &cl.m2)] {
            f.validate()
                .map_err(|e| Error::config(format!("verify.orlicz_closure.{field}"), e.to_string()))?;
        }
        cl.space.build("verify.orlicz_closure.space")?;
        let df = &v.difference_forms;
        if df.max_m == 0 || df.max_k == 0 {
            return Err(Error::config("verify.difference_forms", "max_m and max_k must be >= 1"));
        }
        let ma = &v.metric_axioms;
        if ma.m == 0 {
            return Err(Error::config("verify.metric_axioms.m", "must be >= 1"));
        }
        if !(ma.p >= 1.0 && ma.p.is_finite()) {
            return Err(Error::config("verify.metric_axioms.p", "must be finite and >= 1"));
        }
        if ma.n_terms == 0 {
            return Err(Error::config("verify.metric_axioms.n_terms", "must be >= 1"));
        }
        positive("verify.metric_axioms.tol", ma.tol)?;
        if !(ma.slack >= 0.0) {
            return Err(Error::config("verify.metric_axioms.slack", "must be >= 0"));
        }
        ma.orlicz
            .validate()
            .map_err(|e| Error::config("verify.metric_axioms.orlicz", e.to_string()))?;
        Ok(())
    }

    fn require_sequence(&self, field: &str, name: &str) -> Result<()> {
        if self.sequences.contains_key(name) {
            Ok(())
        } else {
            Err(Error::config(field, format!("unknown sequence `{name}`")))
        }
    }

    /// Builds the sequence named `name`; `field` is reported when it is missing.
    pub fn sequence(&self, field: &str, name: &str) -> Result<FuzzySeq> {
        self.require_sequence(field, name)?;
        Ok(self.sequences[name].build())
    }

    pub fn space(&self) -> Result<Space> {
        self.space.build("space")
    }

    pub fn diagnostic(&self) -> Diagnostic {
        Diagnostic {
            schedule: self.numeric.schedule(),
            rho_ref: self.numeric.rho_ref,
            tol: self.numeric.tol,
            thresholds: self.thresholds,
        }
    }

    /// Applies command-line overrides; `n` also resets the schedule to `[N, 2N, 4N]`.
    pub fn with_overrides(mut self, n: Option<usize>, tol: Option<f64>, seed: Option<u64>) -> Result<Self> {
        if let Some(n) = n {
            self.numeric.n = n;
            self.numeric.n_schedule = None;
        }
        if let Some(tol) = tol {
            self.numeric.tol = tol;
        }
        if let Some(seed) = seed {
            self.seed = seed;
        }
        self.validate()?;
        Ok(self)
    }
}
