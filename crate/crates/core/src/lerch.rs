//! The two-variable series
//! `f(t, s) = sum_{n>=0} t^(n+1) sum_k (-1)^k C(n,k) (k+1)^-s`  (`-1 < t < 1`),
//! the polylogarithm-type series `F(t, s) = sum_{k>=1} t^k / k^s`, and the
//! relation `f(t, s) = -F(t/(t-1), s)` for `-1 < t <= 1/2`.
//!
//! At `t = 1/2` the first series is the global series for the alternating
//! zeta function. Its `s`-derivative at `s = 0` is built from the same log
//! cores as the products for `e^gamma`, `pi/2` and `e`.

use crate::error::{Error, Result};
use crate::precision::{HPComplex, HPReal, PrecisionContext};
use crate::series::log_cores;
use crate::zeta::{neg_powers, power_differences};

/// A point `(t, s)`, `t` real and `s` complex.
#[derive(Debug, Clone)]
pub struct FArgument {
    t: HPReal,
    s: HPComplex,
}

impl FArgument {
    pub fn new(t: HPReal, s: HPComplex) -> Self {
        Self { t, s }
    }

    pub fn t(&self) -> &HPReal {
        &self.t
    }

    pub fn s(&self) -> &HPComplex {
        &self.s
    }
}

fn check_open_unit(t: &HPReal) -> Result<()> {
    let one = HPReal::one(t.ctx());
    if t <= &one.negate() || t >= &one {
        return Err(Error::Domain("t must lie in (-1, 1)".into()));
    }
    Ok(())
}

/// `f(t, s)` truncated after outer index `big_n`.
pub fn f_series(arg: &FArgument, big_n: u64, ctx: &PrecisionContext) -> Result<HPComplex> {
    check_open_unit(&arg.t)?;
    let (diffs, work) = power_differences(&arg.s.with_ctx(ctx), big_n, ctx)?;
    let t = arg.t.with_ctx(&work);
    let mut power = t.clone();
    let mut sum = HPComplex::zero(&work);
    for d in &diffs {
        sum += &d.scale(&power);
        power = &power * &t;
    }
    Ok(sum.with_ctx(ctx))
}

/// Integer exponent `m` if `s = m` with `1 <= m <= 64`.
fn small_positive_integer(s: &HPComplex) -> Option<usize> {
    if !s.is_real() {
        return None;
    }
    let v = s.re().to_f64();
    let m = v.round();
    (m >= 1.0 && m <= 64.0 && s.re() == &HPReal::from_f64(m, s.ctx()).ok()?).then_some(m as usize)
}

/// `F(t, s) = sum_{k=1}^{big_n} t^k k^-s` for `-1 <= t < 1` (`Re s > 0` at
/// `t = -1`).
pub fn polylog_series(
    t: &HPReal,
    s: &HPComplex,
    big_n: u64,
    ctx: &PrecisionContext,
) -> Result<HPComplex> {
    let one = HPReal::one(t.ctx());
    if t < &one.negate() || t >= &one {
        return Err(Error::Domain("t must lie in [-1, 1)".into()));
    }
    if t == &one.negate() && !s.re().is_positive() {
        return Err(Error::Domain("F(-1, s) needs Re(s) > 0".into()));
    }
    let t = t.with_ctx(ctx);
    if t.is_zero() {
        return Ok(HPComplex::zero(ctx));
    }
    let s = s.with_ctx(ctx);
    let exponent = small_positive_integer(&s);
    let mut t_power = HPReal::one(ctx);
    let mut sum = HPComplex::zero(ctx);
    for k in 1..=big_n {
        t_power = &t_power * &t;
        let base = HPReal::from_u64(k, ctx);
        let term = match exponent {
            Some(m) => HPComplex::from_real(&t_power / &base.powi(m)),
            None => neg_powers(&s, std::slice::from_ref(&base.ln()?))?
                .remove(0)
                .scale(&t_power),
        };
        sum += &term;
    }
    Ok(sum)
}

/// `-F(t/(t-1), s, big_n)`, equal to `f(t, s)` in the limit, for
/// `-1 < t <= 1/2` (`Re s > 0` at `t = 1/2`).
pub fn f_via_polylog(arg: &FArgument, big_n: u64, ctx: &PrecisionContext) -> Result<HPComplex> {
    let t = arg.t.with_ctx(ctx);
    let one = HPReal::one(ctx);
    if t <= one.negate() || t > HPReal::from_ratio(1, 2, ctx) {
        return Err(Error::Domain("t must lie in (-1, 1/2]".into()));
    }
    let mapped = &t / &(&t - &one);
    Ok(-&polylog_series(&mapped, &arg.s, big_n, ctx)?)
}

/// `d/ds f(t, s)` at `s = 0`: `sum_{n=0}^{big_n} t^(n+1) log_core(n)`.
pub fn f_prime0_series(t: &HPReal, big_n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    check_open_unit(t)?;
    let t = t.with_ctx(ctx);
    let cores = log_cores(big_n, ctx)?;
    let mut power = t.clone();
    let mut sum = HPReal::zero(ctx);
    for core in &cores {
        sum += core * &power;
        power = &power * &t;
    }
    Ok(sum)
}

/// `gamma ~ sum_{n=1}^{big_n} log_core(n) / (n+1)`, the termwise integral of
/// `f'(t, 0) / t` over `[0, 1]`.
pub fn gamma_series_via_f(big_n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    if big_n == 0 {
        return Err(Error::Domain(
            "the gamma series needs at least one term".into(),
        ));
    }
    let cores = log_cores(big_n, ctx)?;
    let mut sum = HPReal::zero(ctx);
    for (n, core) in cores.iter().enumerate().skip(1) {
        sum += core.div_int(n as i64 + 1);
    }
    Ok(sum)
}
