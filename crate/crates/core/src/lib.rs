//! Fuzzy real sequences, Orlicz functions, generalized difference operators and
//! the Cesàro/Orlicz sequence-space functionals built from them.
//!
//! The pieces compose bottom-up:
//!
//! - [`FuzzyReal`]: a fuzzy number stored as nested α-cuts, with the sup-distance [`d_bar`].
//! - [`OrliczFunction`]: an expression tree of Orlicz functions with axiom checks.
//! - [`FuzzySeq`] and [`delta_binomial`]: sequences and the operator `Δₘⁿ`.
//! - [`Space`]: one of five functionals (`Cp`, `Cinf`, `Lp`, `Op`, `Oinf`) over
//!   `Δₘⁿ`, with the Luxemburg functional, the f-metric and a membership diagnostic.
//! - [`harness`]: reproducible numerical experiments on the structural claims.
//! - [`config`] and [`cli`]: JSON job files and the report writer behind the binary.

pub mod cli;
pub mod config;
pub mod difference;
pub mod error;
pub mod functionals;
pub mod fuzzy;
pub mod harness;
pub mod orlicz;

pub use difference::{binom, delta_binomial, delta_iterative, delta_seq, delta_terms, FuzzySeq};
pub use error::{Error, Result};
pub use functionals::{
    eta_metric, luxemburg, normalized, phi, Diagnostic, DistSeq, FMetric, Family, MembershipReport, Space, SpaceKind,
    Thresholds, Verdict,
};
pub use fuzzy::{d_bar, FuzzyReal, Interval};
pub use orlicz::OrliczFunction;
