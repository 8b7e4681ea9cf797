//! The command-line front end: argument parsing, the four commands, and the
//! JSON/CSV report writer.
//!
//! Exit status: 0 ran (and nothing inconsistent), 1 config error, 2 numeric
//! failure, 3 a verification experiment came out inconsistent.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{JobConfig, SpaceSpec};
use crate::error::{Error, Result};
use crate::functionals::{eta_metric, FMetric, MembershipReport};
use crate::harness::{self, ExperimentResult, ExperimentVerdict, MetricAxioms};
use crate::orlicz::{AxiomReport, Delta2Report, OrliczFunction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fuzzy-cesaro", version, about = "Metrics, membership diagnostics and structural checks for fuzzy Cesàro-Orlicz sequence spaces")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Job file (JSON); built-in defaults when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Truncation length; also resets the diagnostic schedule to N, 2N, 4N.
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// f-metric and η-metric between two named sequences.
    Metric {
        /// Defaults to `metric.x` from the job file.
        x: Option<String>,
        /// Defaults to `metric.y` from the job file.
        y: Option<String>,
    },
    /// Truncation-scale membership diagnostic for a named sequence.
    Membership {
        /// Defaults to `membership.x` from the job file.
        x: Option<String>,
    },
    /// Runs every structural experiment.
    VerifyPaper,
    /// Axiom, scaling and Δ₂ checks for an Orlicz expression.
    OrliczCheck {
        /// JSON expression such as '{"power": 2}'; defaults to `orlicz_check.expression`.
        expression: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Run metadata, kept apart from the deterministic body.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_at_unix: u64,
}

impl Header {
    fn now() -> Self {
        Header {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            generated_at_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<B> {
    pub header: Header,
    pub body: B,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub head: f64,
    pub tail: f64,
    pub f_metric: f64,
    pub eta_metric: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    pub x: String,
    pub y: String,
    pub space: SpaceSpec,
    #[serde(rename = "N")]
    pub n: usize,
    pub tol: f64,
    pub f_metric: FMetric,
    pub f_metric_value: f64,
    pub eta_metric: f64,
    /// The same metrics at every length of the diagnostic schedule.
    pub by_n: Vec<MetricRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipOutput {
    pub x: String,
    pub space: SpaceSpec,
    pub report: MembershipReport,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub summary: SuiteSummary,
    pub experiments: Vec<ExperimentResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrliczReport {
    pub expression: OrliczFunction,
    pub axioms: AxiomReport,
    pub axioms_hold: bool,
    /// `M(λx) ≤ λM(x)` on the configured grid.
    pub scaling_inequality: bool,
    /// Largest `λM(x) − M(λx)`; 0 when the inequality is an equality.
    pub scaling_max_gap: f64,
    pub delta2: Delta2Report,
    pub delta2_constant: Option<f64>,
}

pub fn cmd_metric(config: &JobConfig, x_name: &str, y_name: &str) -> Result<MetricReport> {
    let x = config.sequence("metric.x", x_name)?;
    let y = config.sequence("metric.y", y_name)?;
    let space = config.space()?;
    let tol = config.numeric.tol;
    let row = |n: usize| -> Result<MetricRow> {
        let f = space.f_metric(&x, &y, n, tol)?;
        Ok(MetricRow {
            n,
            head: f.head,
            tail: f.tail,
            f_metric: f.value(),
            eta_metric: eta_metric(space.kind, &space.orlicz, &x, &y, n, tol)?,
        })
    };
    let main = row(config.numeric.n)?;
    let by_n = config.numeric.schedule().into_iter().map(row).collect::<Result<_>>()?;
    Ok(MetricReport {
        x: x_name.into(),
        y: y_name.into(),
        space: config.space.clone(),
        n: config.numeric.n,
        tol,
        f_metric: FMetric { head: main.head, tail: main.tail },
        f_metric_value: main.f_metric,
        eta_metric: main.eta_metric,
        by_n,
    })
}

pub fn cmd_membership(config: &JobConfig, x_name: &str) -> Result<MembershipOutput> {
    let x = config.sequence("membership.x", x_name)?;
    let report = config.space()?.membership(&x, &config.diagnostic())?;
    Ok(MembershipOutput {
        x: x_name.into(),
        space: config.space.clone(),
        report,
    })
}

pub fn cmd_verify_paper(config: &JobConfig) -> Result<SuiteReport> {
    let v = &config.verify;
    let diagnostic = config.diagnostic();
    let corpus = harness::default_corpus();
    let ma = &v.metric_axioms;
    let axioms = MetricAxioms {
        seed: config.seed,
        triples: ma.triples,
        n_terms: ma.n_terms,
        tol: ma.tol,
        slack: ma.slack,
    };
    let df = &v.difference_forms;
    let inc = &v.inclusions;
    let cl = &v.orlicz_closure;
    let experiments = vec![
        harness::run_solidity_check(&v.solidity.space.build("verify.solidity.space")?, &diagnostic, v.solidity.expect)?,
        harness::run_symmetry_check(&v.symmetry.space.build("verify.symmetry.space")?, &diagnostic, v.symmetry.expect)?,
        harness::run_convergence_free_check(
            &v.convergence_free.space.build("verify.convergence_free.space")?,
            &diagnostic,
            v.convergence_free.expect,
        )?,
        harness::run_inclusion_matrix(&inc.orlicz, inc.m, inc.n, inc.p, inc.q, &corpus, &diagnostic)?,
        harness::run_orlicz_closure(&cl.outer, &cl.m1, &cl.m2, &cl.space.build("verify.orlicz_closure.space")?, &corpus, &diagnostic)?,
        harness::run_difference_forms(config.seed.wrapping_add(1), df.sequences, df.max_m, df.max_n, df.max_k)?,
        harness::run_metric_axioms(&ma.orlicz, ma.m, ma.n, ma.p, &axioms)?,
    ];
    let mut summary = SuiteSummary {
        total: experiments.len(),
        ..SuiteSummary::default()
    };
    for e in &experiments {
        match e.verdict {
            ExperimentVerdict::ConsistentWithPaper => summary.consistent += 1,
            ExperimentVerdict::Inconsistent => summary.inconsistent += 1,
            ExperimentVerdict::Inconclusive => summary.inconclusive += 1,
        }
    }
    Ok(SuiteReport { summary, experiments })
}

pub fn cmd_orlicz_check(config: &JobConfig, expression: &OrliczFunction) -> Result<OrliczReport> {
    expression
        .validate()
        .map_err(|e| Error::config("expression", e.to_string()))?;
    let oc = &config.orlicz_check;
    let grid = oc.grid.points();
    let lambdas = oc.lambdas.points();
    let axioms = expression.check_axioms(&grid)?;
    let scaling_inequality = expression.check_scaling_inequality(&lambdas, &grid)?;
    let scaling_max_gap = lambdas
        .iter()
        .flat_map(|&l| grid.iter().map(move |&x| l * expression.value(x) - expression.value(l * x)))
        .fold(0.0, f64::max);
    let delta2 = expression.check_delta2(&oc.delta2_points.points(), &oc.delta2_factors)?;
    Ok(OrliczReport {
        expression: expression.clone(),
        axioms_hold: axioms.all(),
        axioms,
        scaling_inequality,
        scaling_max_gap,
        delta2_constant: delta2.constant(),
        delta2,
    })
}

fn write_json<B: Serialize>(out: &mut dyn Write, body: B) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &Report { header: Header::now(), body })?;
    writeln!(out)
}

fn write_csv<R: Serialize>(out: &mut dyn Write, rows: impl IntoIterator<Item = R>) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

#[derive(Serialize)]
struct MembershipRow {
    #[serde(rename = "N")]
    n: usize,
    phi: f64,
    luxemburg: Option<f64>,
    verdict: String,
}

#[derive(Serialize)]
struct ExperimentRow<'a> {
    experiment: &'a str,
    verdict: String,
    checks_passed: usize,
    checks_total: usize,
}

#[derive(Serialize)]
struct PropertyRow {
    property: &'static str,
    value: String,
}

fn parse_expression(text: &str) -> Result<OrliczFunction> {
    serde_json::from_str(text).map_err(|e| Error::config("expression", e.to_string()))
}

fn missing(field: &str) -> Error {
    Error::config(field, "no sequence named on the command line or in the job file")
}

/// Runs one command, writing its report to `out`; returns the exit status.
fn execute(args: &Args, config: &JobConfig, out: &mut dyn Write) -> Result<io::Result<i32>> {
    let csv = args.format == Format::Csv;
    Ok(match &args.command {
        Command::Metric { x, y } => {
            let pair = config.metric.as_ref();
            let x = x.clone().or_else(|| pair.map(|p| p.x.clone())).ok_or_else(|| missing("metric.x"))?;
            let y = y.clone().or_else(|| pair.map(|p| p.y.clone())).ok_or_else(|| missing("metric.y"))?;
            let report = cmd_metric(config, &x, &y)?;
            if csv { write_csv(out, report.by_n) } else { write_json(out, report) }.map(|_| EXIT_OK)
        }
        Command::Membership { x } => {
            let x = x
                .clone()
                .or_else(|| config.membership.as_ref().map(|m| m.x.clone()))
                .ok_or_else(|| missing("membership.x"))?;
            let output = cmd_membership(config, &x)?;
            if csv {
                let r = &output.report;
                let rows = (0..r.n_schedule.len()).map(|i| MembershipRow {
                    n: r.n_schedule[i],
                    phi: r.phi_values[i],
                    luxemburg: r.luxemburg_values[i],
                    verdict: r.verdict.to_string(),
                });
                write_csv(out, rows)
            } else {
                write_json(out, output)
            }
            .map(|_| EXIT_OK)
        }
        Command::VerifyPaper => {
            let suite = cmd_verify_paper(config)?;
            let status = if suite.summary.inconsistent > 0 { EXIT_INCONSISTENT } else { EXIT_OK };
            if csv {
                let rows = suite.experiments.iter().map(|e| ExperimentRow {
                    experiment: &e.name,
                    verdict: e.verdict.to_string(),
                    checks_passed: e.checks.iter().filter(|c| c.passed).count(),
                    checks_total: e.checks.len(),
                });
                write_csv(out, rows)
            } else {
                write_json(out, suite)
            }
            .map(|_| status)
        }
        Command::OrliczCheck { expression } => {
            let expr = match expression {
                Some(text) => parse_expression(text)?,
                None => config.orlicz_check.expression.clone(),
            };
            let report = cmd_orlicz_check(config, &expr)?;
            if csv {
                let a = report.axioms;
                let rows = [
                    ("zero_at_zero", a.zero_at_zero.to_string()),
                    ("monotone", a.monotone.to_string()),
                    ("midpoint_convex", a.midpoint_convex.to_string()),
                    ("positive", a.positive.to_string()),
                    ("divergent_trend", a.divergent_trend.to_string()),
                    ("scaling_inequality", report.scaling_inequality.to_string()),
                    ("scaling_max_gap", report.scaling_max_gap.to_string()),
                    ("delta2_constant", report.delta2_constant.map_or_else(|| "none".into(), |k| k.to_string())),
                ]
                .map(|(property, value)| PropertyRow { property, value });
                write_csv(out, rows)
            } else {
                write_json(out, report)
            }
            .map(|_| EXIT_OK)
        }
    })
}

/// Loads the job, applies overrides, runs the command and maps failures to
/// exit statuses. Diagnostics go to stderr.
pub fn run(args: &Args) -> i32 {
    let config = match args.config.as_deref().map_or_else(|| Ok(JobConfig::default()), JobConfig::load) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let config = match config.with_overrides(args.n, args.tol, args.seed) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => return fail(&Error::config("--out", format!("{}: {e}", path.display()))),
        },
        None => Box::new(io::stdout().lock()),
    };
    // compute into a buffer so a failed run leaves no partial report behind
    let mut buffer = Vec::new();
    match execute(args, &config, &mut buffer) {
        Ok(Ok(status)) => match sink.write_all(&buffer).and_then(|_| sink.flush()) {
            Ok(()) => status,
            Err(e) => fail(&Error::config("--out", e.to_string())),
        },
        Ok(Err(e)) => fail(&Error::config("--out", e.to_string())),
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    match e {
        Error::Config { .. } => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    }
}
