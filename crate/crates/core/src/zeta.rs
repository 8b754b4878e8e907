//! The alternating zeta function `eta(s) = sum_{k>=1} (-1)^(k-1) k^-s`.
//!
//! Two routes are provided: the Dirichlet series itself (for `Re s > 0`)
//! and the globally convergent binomial series
//! `sum_n 2^-(n+1) sum_k (-1)^k C(n,k) (k+1)^-s`, valid for every complex `s`,
//! together with its termwise derivative in `s`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::precision::{euler_polynomials_at_zero, HPComplex, HPReal, PrecisionContext};
use crate::series::{alternating_binomial_sum, log_table, next_pascal_row};

/// A point `s` of the complex plane.
#[derive(Debug, Clone)]
pub struct ZetaArgument {
    s: HPComplex,
}

impl ZetaArgument {
    pub fn new(s: HPComplex) -> Self {
        Self { s }
    }

    pub fn real(s: HPReal) -> Self {
        Self::new(HPComplex::from_real(s))
    }

    pub fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        HPComplex::parse(text, ctx).map(Self::new)
    }

    pub fn s(&self) -> &HPComplex {
        &self.s
    }

    fn at(&self, ctx: &PrecisionContext) -> HPComplex {
        self.s.with_ctx(ctx)
    }
}

impl From<HPComplex> for ZetaArgument {
    fn from(s: HPComplex) -> Self {
        Self::new(s)
    }
}

impl From<HPReal> for ZetaArgument {
    fn from(s: HPReal) -> Self {
        Self::real(s)
    }
}

/// `exp(-s * logs[i])` for each entry of a log table.
pub(crate) fn neg_powers(s: &HPComplex, logs: &[HPReal]) -> Result<Vec<HPComplex>> {
    if s.is_zero() {
        return Ok(logs.iter().map(|l| HPComplex::one(l.ctx())).collect());
    }
    logs.iter()
        .map(|l| {
            if s.is_real() {
                Ok(HPComplex::from_real((s.re() * l).negate().exp()?))
            } else {
                s.neg_power_of(l)
            }
        })
        .collect()
}

/// Working context for binomial differences of `(k+1)^-s` up to order `n_max`:
/// cancellation digits plus the growth `(n+1)^(-Re s)` of the terms when
/// `Re s < 0`.
pub(crate) fn difference_context(
    s: &HPComplex,
    n_max: u64,
    ctx: &PrecisionContext,
) -> Result<PrecisionContext> {
    let sigma = s.re().to_f64();
    let growth = if sigma < 0.0 {
        (-sigma * ((n_max + 1) as f64).log10()).ceil() as u32
    } else {
        0
    };
    ctx.escalate(PrecisionContext::cancellation_digits(n_max) + growth)
}

/// `[sum_k (-1)^k C(n,k) values[k] for n in 0..=n_max]`.
pub(crate) fn binomial_differences(
    values: &[HPComplex],
    n_max: u64,
    work: &PrecisionContext,
) -> Vec<HPComplex> {
    let re: Vec<HPReal> = values.iter().map(|v| v.re().clone()).collect();
    let im: Vec<HPReal> = values.iter().map(|v| v.im().clone()).collect();
    let real_input = im.iter().all(HPReal::is_zero);
    let mut row = vec![BigInt::from(1)];
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max as usize {
        if n > 0 {
            row = next_pascal_row(&row);
        }
        let d_re = alternating_binomial_sum(&row, &re[..=n], work);
        let d_im = if real_input {
            HPReal::zero(work)
        } else {
            alternating_binomial_sum(&row, &im[..=n], work)
        };
        out.push(HPComplex::new(d_re, d_im));
    }
    out
}

/// Differences `sum_k (-1)^k C(n,k) (k+1)^-s` for `n = 0..=n_max`, and the
/// context they were computed under.
pub(crate) fn power_differences(
    s: &HPComplex,
    n_max: u64,
    ctx: &PrecisionContext,
) -> Result<(Vec<HPComplex>, PrecisionContext)> {
    let work = difference_context(s, n_max, ctx)?;
    let logs = log_table(n_max + 1, &work)?;
    let powers = neg_powers(&s.with_ctx(&work), &logs)?;
    Ok((binomial_differences(&powers, n_max, &work), work))
}

/// Differences of the `s`-derivative, `sum_k (-1)^(k+1) C(n,k) ln(k+1) (k+1)^-s`.
pub(crate) fn log_power_differences(
    s: &HPComplex,
    n_max: u64,
    ctx: &PrecisionContext,
) -> Result<(Vec<HPComplex>, PrecisionContext)> {
    let work = difference_context(s, n_max, ctx)?;
    let logs = log_table(n_max + 1, &work)?;
    let powers = neg_powers(&s.with_ctx(&work), &logs)?;
    let weighted: Vec<HPComplex> = powers
        .iter()
        .zip(&logs)
        .map(|(p, l)| p.scale(&l.negate()))
        .collect();
    Ok((binomial_differences(&weighted, n_max, &work), work))
}

fn halving_sum(differences: &[HPComplex], work: &PrecisionContext) -> HPComplex {
    let mut sum = HPComplex::zero(work);
    for (n, d) in differences.iter().enumerate() {
        sum += &d.mul_pow2(-(n as i64) - 1);
    }
    sum
}

/// Globally convergent series for `eta(s)`, truncated after outer index `big_n`.
pub fn alt_zeta_global(s: &ZetaArgument, big_n: u64, ctx: &PrecisionContext) -> Result<HPComplex> {
    let (diffs, work) = power_differences(&s.at(ctx), big_n, ctx)?;
    Ok(halving_sum(&diffs, &work).with_ctx(ctx))
}

/// Termwise `s`-derivative of [`alt_zeta_global`].
pub fn alt_zeta_deriv_global(
    s: &ZetaArgument,
    big_n: u64,
    ctx: &PrecisionContext,
) -> Result<HPComplex> {
    let (diffs, work) = log_power_differences(&s.at(ctx), big_n, ctx)?;
    Ok(halving_sum(&diffs, &work).with_ctx(ctx))
}

/// `ln(pi/2) ~ sum_{n=1}^{big_n} 2^-n log_core(n)`.
///
/// Computed as twice the derivative series at `s = 0` with the same
/// truncation index (the `n = 0` term of that series is zero).
pub fn ln_pi_over_2_series(big_n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    if big_n == 0 {
        return Err(Error::Domain(
            "ln(pi/2) series needs at least one term".into(),
        ));
    }
    let origin = ZetaArgument::real(HPReal::zero(ctx));
    Ok(alt_zeta_deriv_global(&origin, big_n, ctx)?.re().mul_pow2(1))
}

/// Number of leading terms summed directly before the Euler–Boole tail.
fn direct_terms(s: &HPComplex, ctx: &PrecisionContext) -> u64 {
    let by_precision = 10 * u64::from(ctx.working_digits());
    let by_size = (10.0 * s.abs().to_f64()).ceil() as u64;
    by_precision.max(by_size).max(1000)
}

/// Dirichlet series `sum_{k=1}^{big_n} (-1)^(k-1) k^-s`, `Re s > 0`.
///
/// The value is the exact partial sum (up to rounding) for every `big_n`.
/// Past a few thousand terms the remaining segment is evaluated in closed form
/// by Euler–Boole summation, so `big_n` may be as large as `u64::MAX - 1`.
pub fn alt_zeta_dirichlet(
    s: &ZetaArgument,
    big_n: u64,
    ctx: &PrecisionContext,
) -> Result<HPComplex> {
    let s = s.at(ctx);
    if !s.re().is_positive() {
        return Err(Error::Domain(
            "Dirichlet series for the alternating zeta function needs Re(s) > 0".into(),
        ));
    }
    let head = big_n.min(direct_terms(&s, ctx));
    let mut sum = HPComplex::zero(ctx);
    let logs = log_table(head, ctx)?;
    for (k, p) in neg_powers(&s, &logs)?.iter().enumerate() {
        if k % 2 == 0 {
            sum += p;
        } else {
            sum -= p;
        }
    }
    if big_n > head {
        sum += &alternating_tail(&s, head + 1, big_n, ctx)?;
    }
    Ok(sum)
}

/// Plain term-by-term summation of the Dirichlet series (no tail formula).
pub fn alt_zeta_dirichlet_direct(
    s: &ZetaArgument,
    big_n: u64,
    ctx: &PrecisionContext,
) -> Result<HPComplex> {
    let s = s.at(ctx);
    let logs = log_table(big_n, ctx)?;
    let mut sum = HPComplex::zero(ctx);
    for (k, p) in neg_powers(&s, &logs)?.iter().enumerate() {
        if k % 2 == 0 {
            sum += p;
        } else {
            sum -= p;
        }
    }
    Ok(sum)
}

/// `sum_{k=from}^{to} (-1)^(k-1) k^-s` by Euler–Boole summation:
/// `-(1/2) [(-1)^from B(from) - (-1)^(to+1) B(to+1)]` with
/// `B(x) = sum_j E_j(0)/j! * d^j/dx^j x^-s`.
fn alternating_tail(
    s: &HPComplex,
    from: u64,
    to: u64,
    ctx: &PrecisionContext,
) -> Result<HPComplex> {
    let work = ctx.escalate_unchecked(5);
    let s = s.with_ctx(&work);
    let max_order = 2 * work.working_digits() as usize + 40;
    let coeffs = boole_coefficients(max_order, &work);
    let lower = boole_endpoint(&s, from, &coeffs, &work)?;
    let upper = boole_endpoint(&s, to + 1, &coeffs, &work)?;
    let signed = |v: HPComplex, exponent: u64| if exponent % 2 == 0 { v } else { -&v };
    let bracket = &signed(lower, from) - &signed(upper, to + 1);
    Ok((-&bracket.mul_pow2(-1)).with_ctx(ctx))
}

/// `E_j(0) / j!` for `j < count`.
fn boole_coefficients(count: usize, ctx: &PrecisionContext) -> Vec<HPReal> {
    let mut factorial = BigInt::from(1);
    euler_polynomials_at_zero(count)
        .into_iter()
        .enumerate()
        .map(|(j, e)| {
            if j > 0 {
                factorial *= j;
            }
            HPReal::from_rational(
                &(e / num_rational::BigRational::from_integer(factorial.clone())),
                ctx,
            )
        })
        .collect()
}

/// `sum_j coeffs[j] (-s)(-s-1)..(-s-j+1) x^(-s-j)`, truncated once terms
/// fall below the working resolution.
fn boole_endpoint(
    s: &HPComplex,
    x: u64,
    coeffs: &[HPReal],
    ctx: &PrecisionContext,
) -> Result<HPComplex> {
    let xr = HPReal::from_u64(x, ctx);
    let base = s.neg_power_of(&xr.ln()?)?;
    let inv_x = HPReal::one(ctx) / &xr;
    let eps = HPReal::pow10(-(ctx.working_digits() as i64) - 2, ctx);
    let neg_s = -s;
    let mut rising = HPComplex::one(ctx);
    let mut inv_pow = HPReal::one(ctx);
    let mut sum = HPComplex::zero(ctx);
    let mut previous: Option<HPReal> = None;
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let term = rising.scale(&(c * &inv_pow));
            let size = term.abs();
            if size < eps {
                return Ok(&sum * &base);
            }
            if previous.as_ref().is_some_and(|p| &size > p) {
                break;
            }
            previous = Some(size);
            sum += &term;
        }
        let shift = HPComplex::from_real(HPReal::from_u64(j as u64, ctx));
        rising = &rising * &(&neg_s - &shift);
        inv_pow = &inv_pow * &inv_x;
    }
    Err(Error::NotConverged(format!(
        "Euler–Boole tail at x = {x} did not reach working precision"
    )))
}

/// Smallest `N` with `(|s| / Re s) (N+1)^(-Re s) <= tol`, the classical
/// remainder bound of the alternating Dirichlet series.
pub fn dirichlet_terms_for(s: &ZetaArgument, tol: f64) -> Result<u64> {
    let sigma = s.s().re().to_f64();
    if sigma <= 0.0 {
        return Err(Error::Domain("remainder bound needs Re(s) > 0".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let modulus = s.s().abs().to_f64();
    let n_plus_1 = (modulus / (sigma * tol)).powf(1.0 / sigma).ceil();
    if n_plus_1 >= u64::MAX as f64 {
        return Err(Error::Domain(
            "remainder bound needs more than 2^64 terms".into(),
        ));
    }
    Ok((n_plus_1 as u64).saturating_sub(1).max(1))
}
