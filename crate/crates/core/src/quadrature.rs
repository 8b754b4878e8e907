//! Double-exponential (tanh-sinh type) quadrature on `[0, 1]` and `[0, 1]^2`.
//!
//! The substitution `x = 1 / (1 + exp(-c sinh t))` pushes the endpoints to
//! `t = ±inf` and makes the transformed integrand decay double exponentially,
//! so the trapezoidal rule in `t` converges very fast even for integrands with
//! logarithmic endpoint behavior. Every node carries `x`, `1 - x`, `ln x` and
//! `ln(1 - x)`, each computed without cancellation, so integrands can be
//! written in whichever form is stable near either endpoint.

use crate::error::{Error, Result};
use crate::precision::{HPReal, PrecisionContext};

/// Refinement levels tried by [`integrate_1d`] before giving up.
pub const MAX_LEVEL_1D: u32 = 12;
/// Refinement levels tried by [`integrate_2d`] before giving up.
pub const MAX_LEVEL_2D: u32 = 7;
/// Successive-level differences are multiplied by this to form the estimate.
pub const SAFETY_FACTOR: i64 = 10;

/// An integral estimate.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: HPReal,
    /// Empirical: a safety factor times the last refinement difference.
    pub error_estimate: HPReal,
    pub evaluations: u64,
}

impl QuadratureResult {
    /// Result of an exact (closed-form) computation.
    pub fn exact(value: HPReal) -> Self {
        let error_estimate = HPReal::zero(value.ctx());
        Self {
            value,
            error_estimate,
            evaluations: 1,
        }
    }
}

/// A point of `(0, 1)` with its complement and both logarithms.
#[derive(Debug, Clone)]
pub struct Abscissa {
    pub x: HPReal,
    pub complement: HPReal,
    pub ln_x: HPReal,
    pub ln_complement: HPReal,
}

impl Abscissa {
    /// Builds the point from `x` itself, `0 < x < 1`.
    pub fn from_x(x: &HPReal) -> Result<Self> {
        let ctx = x.ctx();
        if !x.is_positive() || x >= &HPReal::one(ctx) {
            return Err(Error::Domain(
                "abscissa must lie strictly inside (0, 1)".into(),
            ));
        }
        Ok(Self {
            x: x.clone(),
            complement: HPReal::one(ctx) - x,
            ln_x: x.ln()?,
            ln_complement: x.negate().ln1p()?,
        })
    }
}

struct Node {
    point: Abscissa,
    weight: HPReal,
}

struct DeRule {
    ctx: PrecisionContext,
    scale: HPReal,
    half_width: f64,
}

impl DeRule {
    fn new(ctx: &PrecisionContext) -> Result<Self> {
        // Any positive scale gives a valid change of variables; pi is customary.
        let scale_f = std::f64::consts::PI;
        let decades = f64::from(ctx.working_digits() + 5);
        let half_width = (decades * std::f64::consts::LN_10 / scale_f).asinh();
        Ok(Self {
            ctx: *ctx,
            scale: HPReal::from_f64(scale_f, ctx)?,
            half_width,
        })
    }

    fn step_exponent(level: u32) -> i64 {
        -(i64::from(level) + 1)
    }

    /// Nodes first appearing at `level`, ordered by `t`.
    fn level_nodes(&self, level: u32) -> Result<Vec<Node>> {
        let h_exp = Self::step_exponent(level);
        let reach = (self.half_width * 2f64.powi(-h_exp as i32)).floor() as i64;
        (-reach..=reach)
            .filter(|k| level == 0 || k % 2 != 0)
            .map(|k| self.node(k, h_exp))
            .collect()
    }

    fn node(&self, k: i64, h_exp: i64) -> Result<Node> {
        let ctx = &self.ctx;
        let t = HPReal::from_i64(k, ctx).mul_pow2(h_exp);
        let et = t.exp()?;
        let inv_et = HPReal::one(ctx) / &et;
        let sinh = (&et - &inv_et).mul_pow2(-1);
        let cosh = (&et + &inv_et).mul_pow2(-1);
        let u = &self.scale * &sinh;
        let small = u.abs().negate().exp()?;
        let one_plus = HPReal::one(ctx) + &small;
        let log_one_plus = small.ln1p()?;
        let near = HPReal::one(ctx) / &one_plus;
        let far = &small / &one_plus;
        let point = if u.is_negative() {
            Abscissa {
                x: far,
                complement: near,
                ln_x: u.clone() - &log_one_plus,
                ln_complement: log_one_plus.negate(),
            }
        } else {
            Abscissa {
                x: near,
                complement: far,
                ln_x: log_one_plus.negate(),
                ln_complement: u.negate() - &log_one_plus,
            }
        };
        let weight = &self.scale * &cosh * &point.x * &point.complement;
        Ok(Node { point, weight })
    }
}

/// Smallest estimate reportable at the context's requested digits.
fn resolution(ctx: &PrecisionContext) -> HPReal {
    HPReal::pow10(-i64::from(ctx.digits()), ctx)
}

fn check_tolerance(tol: &HPReal, ctx: &PrecisionContext) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if tol < &resolution(ctx) {
        let needed = (-tol.to_f64().log10()).ceil() as u32;
        let shortfall = needed.saturating_sub(ctx.digits()).max(1);
        return Err(Error::PrecisionExhausted {
            required_extra: shortfall,
            available: 0,
            shortfall,
        });
    }
    Ok(())
}

/// `(estimate, converged)` for two successive level sums.
fn estimate(current: &HPReal, previous: &HPReal, tol: &HPReal) -> (HPReal, bool) {
    let ctx = current.ctx();
    let floor = resolution(ctx) * (HPReal::one(ctx) + current.abs());
    let est = ((current - previous).abs().mul_int(SAFETY_FACTOR)).max(floor);
    let converged = &est <= tol;
    (est, converged)
}

fn not_converged(what: &str, est: &HPReal, tol: &HPReal) -> Error {
    Error::NotConverged(format!(
        "{what}: estimate {} above tolerance {} at the refinement limit",
        est.to_sig_string(3),
        tol.to_sig_string(3)
    ))
}

/// `int_0^1 f(x) dx` to an empirical tolerance.
pub fn integrate_1d<F>(f: F, tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult>
where
    F: Fn(&Abscissa) -> Result<HPReal>,
{
    integrate_1d_limited(f, tol, ctx, MAX_LEVEL_1D)
}

pub fn integrate_1d_limited<F>(
    f: F,
    tol: &HPReal,
    ctx: &PrecisionContext,
    max_level: u32,
) -> Result<QuadratureResult>
where
    F: Fn(&Abscissa) -> Result<HPReal>,
{
    check_tolerance(tol, ctx)?;
    let rule = DeRule::new(ctx)?;
    let mut raw = HPReal::zero(ctx);
    let mut previous: Option<HPReal> = None;
    let mut evaluations = 0u64;
    let mut last_est = HPReal::zero(ctx);
    for level in 0..=max_level {
        for node in rule.level_nodes(level)? {
            raw += f(&node.point)? * &node.weight;
            evaluations += 1;
        }
        let current = raw.mul_pow2(DeRule::step_exponent(level));
        if let Some(prev) = &previous {
            let (est, done) = estimate(&current, prev, tol);
            if done {
                return Ok(QuadratureResult {
                    value: current,
                    error_estimate: est,
                    evaluations,
                });
            }
            last_est = est;
        }
        previous = Some(current);
    }
    Err(not_converged("1-D quadrature", &last_est, tol))
}

/// `int_0^1 int_0^1 f(x, y) dy dx` by a tensor-product rule.
pub fn integrate_2d<F>(f: F, tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult>
where
    F: Fn(&Abscissa, &Abscissa) -> Result<HPReal>,
{
    integrate_2d_limited(f, tol, ctx, MAX_LEVEL_2D)
}

pub fn integrate_2d_limited<F>(
    f: F,
    tol: &HPReal,
    ctx: &PrecisionContext,
    max_level: u32,
) -> Result<QuadratureResult>
where
    F: Fn(&Abscissa, &Abscissa) -> Result<HPReal>,
{
    check_tolerance(tol, ctx)?;
    let rule = DeRule::new(ctx)?;
    let mut old: Vec<Node> = Vec::new();
    let mut raw = HPReal::zero(ctx);
    let mut previous: Option<HPReal> = None;
    let mut evaluations = 0u64;
    let mut last_est = HPReal::zero(ctx);
    for level in 0..=max_level {
        let new = rule.level_nodes(level)?;
        let mut pair = |p: &Node, q: &Node| -> Result<()> {
            raw += f(&p.point, &q.point)? * &(&p.weight * &q.weight);
            evaluations += 1;
            Ok(())
        };
        for p in &old {
            for q in &new {
                pair(p, q)?;
            }
        }
        for p in &new {
            for q in old.iter().chain(&new) {
                pair(p, q)?;
            }
        }
        old.extend(new);
        let current = raw.mul_pow2(2 * DeRule::step_exponent(level));
        if let Some(prev) = &previous {
            let (est, done) = estimate(&current, prev, tol);
            if done {
                return Ok(QuadratureResult {
                    value: current,
                    error_estimate: est,
                    evaluations,
                });
            }
            last_est = est;
        }
        previous = Some(current);
    }
    Err(not_converged("2-D quadrature", &last_est, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{make_context, reference_constant, ReferenceConstant};

    #[test]
    fn nodes_are_accurate_near_both_ends() {
        let ctx = make_context(30, None).unwrap();
        let rule = DeRule::new(&ctx).unwrap();
        for level in 0..3 {
            for node in rule.level_nodes(level).unwrap() {
                let p = &node.point;
                let sum = &p.x + &p.complement;
                assert!((sum - HPReal::one(&ctx)).abs() < HPReal::pow10(-38, &ctx));
                let rel = |a: &HPReal, b: &HPReal| ((a - b) / b).abs().to_f64();
                assert!(rel(&p.ln_x.exp().unwrap(), &p.x) < 1e-35);
                assert!(rel(&p.ln_complement.exp().unwrap(), &p.complement) < 1e-35);
                assert!(node.weight.is_positive());
            }
        }
    }

    #[test]
    fn polynomial_and_log_integrals() {
        let ctx = make_context(30, None).unwrap();
        let tol = HPReal::pow10(-25, &ctx);
        let r = integrate_1d(|p| Ok(p.x.square()), &tol, &ctx).unwrap();
        assert!((r.value - HPReal::from_ratio(1, 3, &ctx)).abs() < tol);
        // int ln x dx = -1
        let r = integrate_1d(|p| Ok(p.ln_x.clone()), &tol, &ctx).unwrap();
        assert!((r.value + HPReal::one(&ctx)).abs() < tol);
        // int 4/(1+x^2) dx = pi
        let r = integrate_1d(
            |p| Ok(HPReal::from_i64(4, &ctx) / (HPReal::one(&ctx) + p.x.square())),
            &tol,
            &ctx,
        )
        .unwrap();
        let pi = reference_constant(ReferenceConstant::Pi, &ctx);
        assert!((r.value - pi).abs() < tol);
        assert!(r.evaluations > 1);
    }

    #[test]
    fn two_dimensional_product() {
        let ctx = make_context(20, None).unwrap();
        let tol = HPReal::pow10(-12, &ctx);
        let r = integrate_2d(|p, q| Ok(&p.x * &q.complement.square()), &tol, &ctx).unwrap();
        assert!((r.value - HPReal::from_ratio(1, 6, &ctx)).abs() < tol);
    }

    #[test]
    fn tolerance_checks() {
        let ctx = make_context(12, None).unwrap();
        let too_fine = HPReal::pow10(-15, &ctx);
        assert!(matches!(
            integrate_1d(|p| Ok(p.x.clone()), &too_fine, &ctx),
            Err(Error::PrecisionExhausted { shortfall: 3, .. })
        ));
        assert!(integrate_1d(|p| Ok(p.x.clone()), &HPReal::zero(&ctx), &ctx).is_err());
    }
}
