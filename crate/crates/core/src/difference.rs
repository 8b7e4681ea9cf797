//! Sequences of fuzzy numbers and the generalized difference operator Δₘⁿ.
//!
//! `Δₘⁿ x_k = Σ_{r=0}^{n} (−1)^r C(n, r) x_{k+rm}`, evaluated with cut-wise
//! interval arithmetic. The recursive form `Δₘⁿ x_k = Δₘⁿ⁻¹ x_k − Δₘⁿ⁻¹ x_{k+m}`
//! is kept as [`delta_iterative`] so the two can be checked against each other.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyReal;

type Generator = Arc<dyn Fn(usize) -> FuzzyReal + Send + Sync>;

/// A sequence `(X_k)` of fuzzy numbers indexed from 1, generated on demand.
#[derive(Clone)]
pub struct FuzzySeq {
    generator: Generator,
    len: Option<usize>,
}

impl FuzzySeq {
    /// An infinite sequence `k ↦ f(k)`. `f` must be deterministic.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(usize) -> FuzzyReal + Send + Sync + 'static,
    {
        FuzzySeq {
            generator: Arc::new(f),
            len: None,
        }
    }

    /// A finite sequence `(terms[0], terms[1], ...)` indexed from 1.
    pub fn from_vec(terms: Vec<FuzzyReal>) -> Self {
        let len = terms.len();
        let terms = Arc::new(terms);
        FuzzySeq {
            generator: Arc::new(move |k| terms[k - 1].clone()),
            len: Some(len),
        }
    }

    /// Finitely many terms followed by 0̄ forever.
    pub fn zero_padded(terms: Vec<FuzzyReal>) -> Self {
        let terms = Arc::new(terms);
        FuzzySeq::from_fn(move |k| terms.get(k - 1).cloned().unwrap_or_else(FuzzyReal::zero))
    }

    pub fn constant(x: FuzzyReal) -> Self {
        FuzzySeq::from_fn(move |_| x.clone())
    }

    /// The zero sequence θ̄.
    pub fn zero() -> Self {
        FuzzySeq::constant(FuzzyReal::zero())
    }

    /// Restricts the sequence to its first `len` terms.
    pub fn truncated(mut self, len: usize) -> Self {
        self.len = Some(self.len.map_or(len, |l| l.min(len)));
        self
    }

    /// `None` for a conceptually infinite sequence.
    pub fn len(&self) -> Option<usize> {
        self.len
    }

    /// The term `X_k`, `k >= 1`.
    pub fn get(&self, k: usize) -> Result<FuzzyReal> {
        if k == 0 {
            return Err(Error::invalid("sequences are indexed from 1"));
        }
        if let Some(len) = self.len {
            if k > len {
                return Err(Error::OutOfRange { index: k, len });
            }
        }
        Ok((self.generator)(k))
    }

    /// The terms `X_first, ..., X_{first+count-1}`, each generated once.
    pub fn terms(&self, first: usize, count: usize) -> Result<Vec<FuzzyReal>> {
        (first..first + count).map(|k| self.get(k)).collect()
    }

    /// `k ↦ f(X_k)`.
    pub fn map<F>(&self, f: F) -> FuzzySeq
    where
        F: Fn(&FuzzyReal) -> FuzzyReal + Send + Sync + 'static,
    {
        let inner = self.generator.clone();
        FuzzySeq {
            generator: Arc::new(move |k| f(&inner(k))),
            len: self.len,
        }
    }
}

impl fmt::Debug for FuzzySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("FuzzySeq");
        s.field("len", &self.len);
        let preview: Vec<String> = (1..=3.min(self.len.unwrap_or(3))).map(|k| (self.generator)(k).to_string()).collect();
        s.field("head", &preview).finish()
    }
}

/// The binomial coefficient `C(n, r)` in exact integer arithmetic.
pub fn binom(n: u32, r: u32) -> Result<u128> {
    if r > n {
        return Err(Error::invalid(format!("binomial coefficient needs r <= n, got n = {n}, r = {r}")));
    }
    let r = r.min(n - r);
    let mut c: u128 = 1;
    for i in 0..r {
        // c * (n - i) is divisible by (i + 1) at every step.
        c = c
            .checked_mul(u128::from(n - i))
            .ok_or_else(|| Error::invalid(format!("C({n}, {r}) overflows u128")))?
            / u128::from(i + 1);
    }
    Ok(c)
}

/// Signed coefficients `(−1)^r C(n, r)` for `r = 0..=n`.
pub fn signed_binomial_row(n: usize) -> Result<Vec<f64>> {
    let n32 = u32::try_from(n).map_err(|_| Error::invalid("difference order too large"))?;
    (0..=n32)
        .map(|r| {
            let c = binom(n32, r)? as f64;
            Ok(if r % 2 == 0 { c } else { -c })
        })
        .collect()
}

fn check_gap(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::invalid("difference gap m must be >= 1"))
    } else {
        Ok(())
    }
}

/// `Σ coeffs[r] · window[r]`, accumulated in index order.
fn combine(window: &[FuzzyReal], coeffs: &[f64]) -> FuzzyReal {
    let mut acc = window[0].clone();
    for (term, &c) in window.iter().zip(coeffs).skip(1) {
        acc = &acc + &term.scale(c);
    }
    acc
}

/// `Δₘⁿ X_k` via the binomial expansion.
pub fn delta_binomial(x: &FuzzySeq, m: usize, n: usize, k: usize) -> Result<FuzzyReal> {
    check_gap(m)?;
    if n == 0 {
        return x.get(k);
    }
    let coeffs = signed_binomial_row(n)?;
    let window = (0..=n).map(|r| x.get(k + r * m)).collect::<Result<Vec<_>>>()?;
    Ok(combine(&window, &coeffs))
}

/// `Δₘⁿ X_k` by n-fold repeated subtraction `Δₘʲ x_k = Δₘʲ⁻¹ x_k − Δₘʲ⁻¹ x_{k+m}`.
pub fn delta_iterative(x: &FuzzySeq, m: usize, n: usize, k: usize) -> Result<FuzzyReal> {
    check_gap(m)?;
    let mut level = (0..=n).map(|r| x.get(k + r * m)).collect::<Result<Vec<_>>>()?;
    for _ in 0..n {
        level = level.windows(2).map(|w| &w[0] - &w[1]).collect();
    }
    Ok(level.swap_remove(0))
}

/// The lazy sequence `k ↦ Δₘⁿ X_k`; a finite length shrinks by `n·m`.
pub fn delta_seq(x: &FuzzySeq, m: usize, n: usize) -> Result<FuzzySeq> {
    check_gap(m)?;
    if n == 0 {
        return Ok(x.clone());
    }
    let coeffs = signed_binomial_row(n)?;
    let source = x.clone();
    let len = x.len.map(|l| l.saturating_sub(n * m));
    let generator: Generator = Arc::new(move |k| {
        let window: Vec<FuzzyReal> = (0..=n)
            .map(|r| (source.generator)(k + r * m))
            .collect();
        combine(&window, &coeffs)
    });
    Ok(FuzzySeq { generator, len })
}

/// `Δₘⁿ X_k` for `k = 1..=count`; each source term is generated once.
pub fn delta_terms(x: &FuzzySeq, m: usize, n: usize, count: usize) -> Result<Vec<FuzzyReal>> {
    check_gap(m)?;
    let source = x.terms(1, count + n * m)?;
    if n == 0 {
        return Ok(source);
    }
    let coeffs = signed_binomial_row(n)?;
    Ok((0..count)
        .map(|k0| {
            let window: Vec<FuzzyReal> = (0..=n).map(|r| source[k0 + r * m].clone()).collect();
            combine(&window, &coeffs)
        })
        .collect())
}
