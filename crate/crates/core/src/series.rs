//! Alternating series, binomially weighted log sums and Euler's
//! transformation of series.
//!
//! The binomial sums `sum_k (-1)^k C(n,k) v_k` that appear throughout the
//! crate cancel catastrophically: the terms are as large as `2^n` while the
//! result is small. They are evaluated with exact integer weights, with the
//! positive and negative halves accumulated separately, at a working
//! precision raised by `ceil(0.302 n)` digits.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::precision::{HPReal, PrecisionContext};

type TermFn = dyn Fn(u64, &PrecisionContext) -> Result<HPReal> + Send + Sync;

/// Terms `a_n` (n >= 1) of an alternating series `sum (-1)^(n-1) a_n`.
#[derive(Clone)]
pub struct SeriesSpec {
    term: Arc<TermFn>,
}

impl SeriesSpec {
    pub fn new<F>(term: F) -> Self
    where
        F: Fn(u64, &PrecisionContext) -> Result<HPReal> + Send + Sync + 'static,
    {
        Self {
            term: Arc::new(term),
        }
    }

    /// `a_n` evaluated under `ctx`.
    pub fn term(&self, n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
        debug_assert!(n >= 1);
        (self.term)(n, ctx)
    }

    /// `a_n = ln((n+1)/n)`: the logarithm of Wallis's product written as an
    /// alternating series, `ln(pi/2) = sum (-1)^(n-1) ln((n+1)/n)`.
    pub fn wallis_log() -> Self {
        Self::new(|n, ctx| HPReal::from_ratio(1, n as i64, ctx).ln1p())
    }

    /// `a_n = 1/n` (alternating harmonic series, sum `ln 2`).
    pub fn harmonic() -> Self {
        Self::new(|n, ctx| Ok(HPReal::from_ratio(1, n as i64, ctx)))
    }

    /// `a_n = coeffs[n-1]`, zero past the end.
    pub fn finite(coeffs: Vec<BigRational>) -> Self {
        Self::new(move |n, ctx| {
            Ok(match coeffs.get(n as usize - 1) {
                Some(c) => HPReal::from_rational(c, ctx),
                None => HPReal::zero(ctx),
            })
        })
    }
}

impl std::fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SeriesSpec { .. }")
    }
}

/// Next row of Pascal's triangle.
pub(crate) fn next_pascal_row(row: &[BigInt]) -> Vec<BigInt> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(BigInt::from(1));
    next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
    next.push(BigInt::from(1));
    next
}

/// `sum_k (-1)^k C(n,k) values[k]` for `row = [C(n,0), .., C(n,n)]`.
///
/// Even and odd `k` are summed separately and subtracted once. The caller
/// provides `values` at (at least) the escalated precision for index `n`.
pub(crate) fn alternating_binomial_sum(
    row: &[BigInt],
    values: &[HPReal],
    ctx: &PrecisionContext,
) -> HPReal {
    debug_assert_eq!(row.len(), values.len());
    let mut even = HPReal::zero(ctx);
    let mut odd = HPReal::zero(ctx);
    for (k, (c, v)) in row.iter().zip(values).enumerate() {
        let term = HPReal::from_bigint(c, ctx) * v;
        if k % 2 == 0 {
            even += term;
        } else {
            odd += term;
        }
    }
    even - odd
}

/// `ln 1, ln 2, .., ln m` under `ctx`.
pub(crate) fn log_table(m: u64, ctx: &PrecisionContext) -> Result<Vec<HPReal>> {
    (1..=m).map(|k| HPReal::from_u64(k, ctx).ln()).collect()
}

/// `sum_{k=0}^n (-1)^(k+1) C(n,k) ln(k+1)`, the logarithm of the `n`-th factor
/// base `prod (k+1)^((-1)^(k+1) C(n,k))` shared by the binomial products.
pub fn log_core(n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    let work = ctx.for_inner_sum(n)?;
    let logs = log_table(n + 1, &work)?;
    let row = crate::precision::binomial_row(n);
    Ok(alternating_binomial_sum(&row, &logs, &work)
        .negate()
        .with_ctx(ctx))
}

/// `[log_core(0), .., log_core(n_max)]`, sharing one log table.
pub fn log_cores(n_max: u64, ctx: &PrecisionContext) -> Result<Vec<HPReal>> {
    let work = ctx.for_inner_sum(n_max)?;
    let logs = log_table(n_max + 1, &work)?;
    let mut row = vec![BigInt::from(1)];
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n > 0 {
            row = next_pascal_row(&row);
        }
        let core = alternating_binomial_sum(&row, &logs[..=n as usize], &work).negate();
        out.push(core.with_ctx(ctx));
    }
    Ok(out)
}

/// `sum_{n=1}^{big_n} (-1)^(n-1) a_n`, in ascending order.
pub fn alternating_partial(
    series: &SeriesSpec,
    big_n: u64,
    ctx: &PrecisionContext,
) -> Result<HPReal> {
    let mut sum = HPReal::zero(ctx);
    for n in 1..=big_n {
        let a = series.term(n, ctx)?;
        if n % 2 == 1 {
            sum += a;
        } else {
            sum -= a;
        }
    }
    Ok(sum)
}

/// Euler-transformed partial sum
/// `sum_{n=0}^{big_n} 2^-(n+1) sum_{k=0}^n (-1)^k C(n,k) a_{k+1}`.
pub fn euler_transform_partial(
    series: &SeriesSpec,
    big_n: u64,
    ctx: &PrecisionContext,
) -> Result<HPReal> {
    let work = ctx.for_inner_sum(big_n)?;
    let terms = (1..=big_n + 1)
        .map(|k| series.term(k, &work))
        .collect::<Result<Vec<_>>>()?;
    let mut row = vec![BigInt::from(1)];
    let mut sum = HPReal::zero(&work);
    for n in 0..=big_n {
        if n > 0 {
            row = next_pascal_row(&row);
        }
        let delta = alternating_binomial_sum(&row, &terms[..=n as usize], &work);
        sum += delta.mul_pow2(-(n as i64) - 1);
    }
    Ok(sum.with_ctx(ctx))
}

/// One row of a [`ConvergenceTrace`].
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub n: u64,
    pub partial: HPReal,
    pub abs_error: HPReal,
}

/// Partial values of an approximation sequence against a reference value.
#[derive(Debug, Clone, Default)]
pub struct ConvergenceTrace {
    entries: Vec<TraceEntry>,
}

impl ConvergenceTrace {
    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last(&self) -> Option<&TraceEntry> {
        self.entries.last()
    }

    /// True when the errors from index position `from` on never increase.
    pub fn is_non_increasing_from(&self, from: usize) -> bool {
        self.entries[from.min(self.entries.len())..]
            .windows(2)
            .all(|w| w[1].abs_error <= w[0].abs_error)
    }
}

/// Records `partials(n)` for `n = 1..=n_max` with `|partial - reference|`.
///
/// `partials` is called once per index, in ascending order, so it may keep
/// running state.
pub fn convergence_trace<F>(
    mut partials: F,
    reference: &HPReal,
    n_max: u64,
    ctx: &PrecisionContext,
) -> Result<ConvergenceTrace>
where
    F: FnMut(u64) -> Result<HPReal>,
{
    let reference = reference.with_ctx(ctx);
    let mut entries = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max.max(1) {
        let partial = partials(n)?.with_ctx(ctx);
        let abs_error = (&partial - &reference).abs();
        entries.push(TraceEntry {
            n,
            partial,
            abs_error,
        });
    }
    Ok(ConvergenceTrace { entries })
}
