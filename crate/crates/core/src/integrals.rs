//! Integral representations of `ln(pi/2)`, `ln(4/pi)`, `gamma` and `1`.
//!
//! Pointwise integrands are exposed with their continuity values at the
//! removable singularities. The quadrature itself never samples an endpoint;
//! it evaluates the node forms, which take `x`, `1 - x` and both logarithms
//! from the node so that no difference of nearly equal numbers is formed.
//!
//! The double integrals over the unit square have a corner singularity at
//! `(1, 1)`, where the integrand has a direction-dependent limit. With
//! `a = 1 - x`, `b = 1 - y` the square is split along `a = b` and each
//! triangle is mapped back to a square (`b = a v` or `a = b v`), which turns
//! the corner into a smooth edge.

use crate::error::{Error, Result};
use crate::precision::{HPReal, PrecisionContext};
use crate::quadrature::{integrate_1d, integrate_2d, Abscissa, QuadratureResult};

/// Below this `u = 1 - x`, numerators that cancel are evaluated by series.
const SERIES_SWITCH: f64 = 0.25;

fn is_small(u: &HPReal) -> bool {
    u < &HPReal::from_f64(SERIES_SWITCH, u.ctx()).expect("finite")
}

/// Pointwise evaluation at `0 <= x <= 1`, with explicit values at the ends.
fn at_point<F>(x: &HPReal, at_zero: HPReal, at_one: HPReal, f: F) -> Result<HPReal>
where
    F: Fn(&Abscissa) -> Result<HPReal>,
{
    let one = HPReal::one(x.ctx());
    if x.is_negative() || x > &one {
        return Err(Error::Domain(
            "integration variable must lie in [0, 1]".into(),
        ));
    }
    if x.is_zero() {
        Ok(at_zero)
    } else if x == &one {
        Ok(at_one)
    } else {
        f(&Abscissa::from_x(x)?)
    }
}

fn half(ctx: &PrecisionContext) -> HPReal {
    HPReal::from_ratio(1, 2, ctx)
}

// ---------------------------------------------------------------------------
// ln(pi/2) and the x-y form of the same integral

/// `(1 - x) / ((1 + x)(-ln x))`, times `1 - x^cutoff` when a cutoff is given.
///
/// With the cutoff this is the y-integral `int_0^Y (1-x)/(1+x) x^y dy` done in
/// closed form; without it, `Y -> inf`.
fn reduced_i_integrand(p: &Abscissa, cutoff: Option<&HPReal>) -> Result<HPReal> {
    let ctx = p.x.ctx();
    let base = &p.complement / &((HPReal::one(ctx) + &p.x) * p.ln_x.negate());
    match cutoff {
        None => Ok(base),
        Some(y) => Ok(base * &(HPReal::one(ctx) - (y * &p.ln_x).exp()?)),
    }
}

/// `-(1 - x) / ((1 + x) ln x)`: 0 at `x = 0`, 1/2 at `x = 1`.
pub fn ln_pi_over_2_integrand(x: &HPReal) -> Result<HPReal> {
    let ctx = x.ctx();
    at_point(x, HPReal::zero(ctx), half(ctx), |p| {
        reduced_i_integrand(p, None)
    })
}

/// `ln(pi/2) = -int_0^1 (1 - x) / ((1 + x) ln x) dx`.
pub fn integral_ln_pi_over_2(tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    integrate_1d(|p| reduced_i_integrand(p, None), tol, ctx)
}

/// `int_0^1 (1-x)/(1+x) (1 - x^Y)/(-ln x) dx`: the y-truncated integral with
/// the y-integration done analytically.
pub fn integral_i_reduced(
    y_cutoff: &HPReal,
    tol: &HPReal,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    check_cutoff(y_cutoff)?;
    let y = y_cutoff.with_ctx(ctx);
    integrate_1d(|p| reduced_i_integrand(p, Some(&y)), tol, ctx)
}

/// The part of the y-integral beyond the cutoff,
/// `int_0^1 (1-x)/(1+x) x^Y / (-ln x) dx`.
pub fn integral_i_tail(
    y_cutoff: &HPReal,
    tol: &HPReal,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    check_cutoff(y_cutoff)?;
    let y = y_cutoff.with_ctx(ctx);
    integrate_1d(
        |p| Ok(reduced_i_integrand(p, None)? * (&y * &p.ln_x).exp()?),
        tol,
        ctx,
    )
}

fn check_cutoff(y: &HPReal) -> Result<()> {
    if !y.is_positive() {
        return Err(Error::Domain("y cutoff must be positive".into()));
    }
    Ok(())
}

/// `(1 - x)/(1 + x) x^y`, the integrand of the x-y form.
pub fn i_2d_integrand(x: &HPReal, y: &HPReal) -> Result<HPReal> {
    let ctx = x.ctx();
    if y.is_negative() {
        return Err(Error::Domain("y must be non-negative".into()));
    }
    let power = if y.is_zero() {
        HPReal::one(ctx)
    } else if x.is_zero() {
        HPReal::zero(ctx)
    } else {
        (y * &x.ln()?).exp()?
    };
    Ok((HPReal::one(ctx) - x) / (HPReal::one(ctx) + x) * power)
}

/// `int_0^1 int_0^Y (1-x)/(1+x) x^y dy dx` by 2-D quadrature (`y = Y v`).
///
/// The value is the truncated integral. The missing part
/// `int_Y^inf int_0^1 ...` decays only like `1/(2Y)`, so the reported error
/// estimate is the quadrature estimate plus a numerical evaluation of that
/// tail (see [`integral_i_tail`]).
pub fn integral_i_2d(
    y_cutoff: &HPReal,
    tol: &HPReal,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    check_cutoff(y_cutoff)?;
    let y = y_cutoff.with_ctx(ctx);
    let body = integrate_2d(
        |p, q| {
            let power = (&y * &q.x * &p.ln_x).exp()?;
            Ok(&p.complement / &(HPReal::one(ctx) + &p.x) * power * &y)
        },
        tol,
        ctx,
    )?;
    let tail = integral_i_tail(&y, tol, ctx)?;
    Ok(QuadratureResult {
        value: body.value,
        error_estimate: body.error_estimate + tail.value.abs() + tail.error_estimate,
        evaluations: body.evaluations + tail.evaluations,
    })
}

// ---------------------------------------------------------------------------
// Double integrals over the unit square

/// Value of a square integrand on its singular edges: along `x = 1` the
/// factor `1 - x` vanishes, and where `xy = 0` the logarithm is infinite.
fn square_edges(x: &HPReal, y: &HPReal) -> Result<Option<HPReal>> {
    let ctx = x.ctx();
    let one = HPReal::one(ctx);
    for v in [x, y] {
        if v.is_negative() || v > &one {
            return Err(Error::Domain(
                "integration variables must lie in [0, 1]".into(),
            ));
        }
    }
    if x == &one || x.is_zero() || y.is_zero() {
        return Ok(Some(HPReal::zero(ctx)));
    }
    Ok(None)
}

/// `-(1 - x) / ((1 - xy) ln xy)`, taken as 0 on the edge `x = 1` and where
/// `xy = 0`.
pub fn gamma_double_integrand(x: &HPReal, y: &HPReal) -> Result<HPReal> {
    if let Some(edge) = square_edges(x, y)? {
        return Ok(edge);
    }
    let xy = x * y;
    let one = HPReal::one(x.ctx());
    Ok((&one - x).negate() / ((&one - &xy) * xy.ln()?))
}

/// `-(1 - x) / ((1 + xy) ln xy)`, taken as 0 on the edge `x = 1` and where
/// `xy = 0`.
pub fn ln4_over_pi_integrand(x: &HPReal, y: &HPReal) -> Result<HPReal> {
    if let Some(edge) = square_edges(x, y)? {
        return Ok(edge);
    }
    let xy = x * y;
    let one = HPReal::one(x.ctx());
    Ok((&one - x).negate() / ((&one + &xy) * xy.ln()?))
}

/// Both triangles of the corner split at outer node `a = 1 - x` (`p`) and
/// inner node `v` (`q`). Returns `(ln xy, xy)` shared by both triangles,
/// where `{x, y} = {1 - a, 1 - a v}`.
fn corner_logs(p: &Abscissa, q: &Abscissa) -> Result<(HPReal, HPReal)> {
    let ctx = p.x.ctx();
    let av = &p.x * &q.x;
    let other = &p.complement + &(&p.x * &q.complement); // 1 - a v
    let ln_other = if av < half(ctx) {
        av.negate().ln1p()?
    } else {
        other.ln()?
    };
    Ok((&p.ln_complement + &ln_other, &p.complement * &other))
}

/// `gamma = -int int (1 - x) / ((1 - xy) ln xy) dx dy` after the corner split:
/// `-a (1 + v) / ((1 + v (1 - a)) ln xy)`.
fn gamma_corner_integrand(p: &Abscissa, q: &Abscissa) -> Result<HPReal> {
    let ctx = p.x.ctx();
    let (log_xy, _) = corner_logs(p, q)?;
    let one = HPReal::one(ctx);
    let numerator = &p.x * &(&one + &q.x);
    let denominator = (&one + &(&q.x * &p.complement)) * log_xy;
    Ok((numerator / denominator).negate())
}

/// `ln(4/pi) = -int int (1 - x) / ((1 + xy) ln xy) dx dy` after the corner
/// split: `-a^2 (1 + v) / ((1 + xy) ln xy)`.
fn ln4_over_pi_corner_integrand(p: &Abscissa, q: &Abscissa) -> Result<HPReal> {
    let ctx = p.x.ctx();
    let (log_xy, xy) = corner_logs(p, q)?;
    let one = HPReal::one(ctx);
    let numerator = p.x.square() * (&one + &q.x);
    let denominator = (&one + &xy) * log_xy;
    Ok((numerator / denominator).negate())
}

/// Euler's constant as a double integral over the unit square.
pub fn double_integral_gamma(tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    integrate_2d(gamma_corner_integrand, tol, ctx)
}

/// `ln(4/pi)` as a double integral over the unit square.
pub fn double_integral_ln4_over_pi(
    tol: &HPReal,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    integrate_2d(ln4_over_pi_corner_integrand, tol, ctx)
}

/// `ln 2 - ln(pi/2)` with the single integral for `ln(pi/2)`; equal to
/// [`double_integral_ln4_over_pi`] by a change of variables.
pub fn ln4_over_pi_via_single_integral(
    tol: &HPReal,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    let single = integral_ln_pi_over_2(tol, ctx)?;
    let ln2 = HPReal::from_u64(2, ctx).ln()?;
    Ok(QuadratureResult {
        value: ln2 - &single.value,
        ..single
    })
}

// ---------------------------------------------------------------------------
// Integrals built on f'(t, 0)

fn check_t(t: &HPReal) -> Result<()> {
    let one = HPReal::one(t.ctx());
    if t <= &one.negate() || t >= &one {
        return Err(Error::Domain("t must lie in (-1, 1)".into()));
    }
    Ok(())
}

fn f_prime0_node(t: &HPReal, p: &Abscissa) -> Result<HPReal> {
    let one = HPReal::one(p.x.ctx());
    let denominator = (&one - &(t * &p.complement)) * &p.ln_x;
    Ok((t.square() * &p.complement / denominator).negate())
}

/// `-t^2 (1 - x) / ((1 - t(1 - x)) ln x)`: 0 at `x = 0`, `t^2` at `x = 1`.
pub fn f_prime0_integrand(t: &HPReal, x: &HPReal) -> Result<HPReal> {
    check_t(t)?;
    let ctx = x.ctx();
    at_point(x, HPReal::zero(ctx), t.square().with_ctx(ctx), |p| {
        f_prime0_node(t, p)
    })
}

/// `f'(t, 0) = -t^2 int_0^1 (1 - x) / ((1 - t(1 - x)) ln x) dx`, `-1 < t < 1`.
pub fn f_prime0_integral(
    t: &HPReal,
    tol: &HPReal,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    check_t(t)?;
    let t = t.with_ctx(ctx);
    if t.is_zero() {
        return Ok(QuadratureResult::exact(HPReal::zero(ctx)));
    }
    integrate_1d(|p| f_prime0_node(&t, p), tol, ctx)
}

/// `u + ln(1 - u)` without cancellation, given `ln(1 - u)`.
fn log_excess(u: &HPReal, ln_complement: &HPReal) -> HPReal {
    if !is_small(u) {
        return u + ln_complement;
    }
    // -(u^2/2 + u^3/3 + ...)
    let ctx = u.ctx();
    let eps = HPReal::pow2(-(ctx.bits() as i64) - 8, ctx);
    let mut power = u.square();
    let mut sum = HPReal::zero(ctx);
    for j in 2i64.. {
        let term = power.div_int(j);
        sum += &term;
        if term <= &eps * &sum {
            break;
        }
        power = &power * u;
    }
    sum.negate()
}

fn gamma_classical_node(p: &Abscissa) -> HPReal {
    log_excess(&p.complement, &p.ln_x) / (&p.complement * &p.ln_x)
}

/// `1/ln x + 1/(1 - x)`: 1 at `x = 0`, 1/2 at `x = 1`.
pub fn gamma_classical_integrand(x: &HPReal) -> Result<HPReal> {
    let ctx = x.ctx();
    at_point(x, HPReal::one(ctx), half(ctx), |p| {
        Ok(gamma_classical_node(p))
    })
}

/// `gamma = int_0^1 (1/ln x + 1/(1 - x)) dx`.
pub fn gamma_classical_integral(tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    integrate_1d(|p| Ok(gamma_classical_node(p)), tol, ctx)
}

/// `int_0^1 t u / (1 - t u) dt = -1 - ln(1 - u)/u`, for `0 <= u < 1`.
pub fn gamma_via_f_inner(u: &HPReal) -> Result<HPReal> {
    let ctx = u.ctx();
    if u.is_negative() || u >= &HPReal::one(ctx) {
        return Err(Error::Domain("u must lie in [0, 1)".into()));
    }
    if u.is_zero() {
        return Ok(HPReal::zero(ctx));
    }
    Ok(inner_with_log(u, &u.negate().ln1p()?))
}

fn inner_with_log(u: &HPReal, ln_complement: &HPReal) -> HPReal {
    // -1 - ln(1-u)/u = -(u + ln(1-u)) / u
    (log_excess(u, ln_complement) / u).negate()
}

fn gamma_via_f_node(p: &Abscissa) -> HPReal {
    (inner_with_log(&p.complement, &p.ln_x) / &p.ln_x).negate()
}

/// `-(int_0^1 t u/(1 - t u) dt) / ln x` with `u = 1 - x`: 1 at `x = 0`,
/// 1/2 at `x = 1`.
pub fn gamma_via_f_integrand(x: &HPReal) -> Result<HPReal> {
    let ctx = x.ctx();
    at_point(x, HPReal::one(ctx), half(ctx), |p| Ok(gamma_via_f_node(p)))
}

/// `gamma = int_0^1 f'(t, 0) / t dt`, as an iterated integral whose inner
/// t-integral is done in closed form.
pub fn gamma_via_f_integral(tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    integrate_1d(|p| Ok(gamma_via_f_node(p)), tol, ctx)
}

/// `int_0^1 u / (1 - t u) dt = -ln(1 - u)`, for `0 <= u < 1`.
pub fn unity_via_f_inner(u: &HPReal) -> Result<HPReal> {
    let ctx = u.ctx();
    if u.is_negative() || u >= &HPReal::one(ctx) {
        return Err(Error::Domain("u must lie in [0, 1)".into()));
    }
    Ok(u.negate().ln1p()?.negate())
}

fn unity_via_f_node(p: &Abscissa) -> Result<HPReal> {
    Ok(unity_via_f_inner(&p.complement)?.negate() / &p.ln_x)
}

/// `-(int_0^1 u/(1 - t u) dt) / ln x = ln(1 - u) / ln x` with `u = 1 - x`,
/// identically 1.
pub fn unity_via_f_integrand(x: &HPReal) -> Result<HPReal> {
    let ctx = x.ctx();
    at_point(x, HPReal::one(ctx), HPReal::one(ctx), unity_via_f_node)
}

/// `1 = int_0^1 f'(t, 0) / t^2 dt`, with the inner t-integral in closed form.
pub fn unity_via_f_integral(tol: &HPReal, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    integrate_1d(unity_via_f_node, tol, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{make_context, reference_constant, ReferenceConstant};

    fn ctx(d: u32) -> PrecisionContext {
        make_context(d, None).unwrap()
    }

    fn tol(e: i64, ctx: &PrecisionContext) -> HPReal {
        HPReal::pow10(-e, ctx)
    }

    fn ln_pi_over_2(ctx: &PrecisionContext) -> HPReal {
        reference_constant(ReferenceConstant::Pi, ctx)
            .mul_pow2(-1)
            .ln()
            .unwrap()
    }

    fn within(r: &QuadratureResult, truth: &HPReal, bound: f64) {
        let err = (&r.value - truth).abs();
        assert!(err.to_f64() < bound, "error {} >= {bound}", err.to_f64());
        assert!(
            err <= r.error_estimate,
            "estimate {} below error {}",
            r.error_estimate.to_f64(),
            err.to_f64()
        );
    }

    #[test]
    fn pointwise_values() {
        let c = ctx(20);
        let h = HPReal::from_ratio(1, 2, &c);
        let one = HPReal::one(&c);
        let zero = HPReal::zero(&c);
        assert_eq!(ln_pi_over_2_integrand(&one).unwrap(), h);
        assert!(ln_pi_over_2_integrand(&zero).unwrap().is_zero());
        let tiny = HPReal::pow10(-300, &c);
        assert!(ln_pi_over_2_integrand(&tiny).unwrap().to_f64() < 0.002);

        assert_eq!(gamma_classical_integrand(&one).unwrap(), h);
        assert_eq!(gamma_classical_integrand(&zero).unwrap(), one);
        assert_eq!(
            gamma_classical_integrand(&h).unwrap().to_sig_string(10),
            "0.5573049591"
        );
        let near_one = &one - &HPReal::pow10(-15, &c);
        assert!(
            (gamma_classical_integrand(&near_one).unwrap() - &h)
                .abs()
                .to_f64()
                < 1e-14
        );

        assert_eq!(
            gamma_double_integrand(&h, &h).unwrap().to_sig_string(10),
            "0.4808983470"
        );
        let y = HPReal::from_ratio(1, 3, &c);
        assert!(ln4_over_pi_integrand(&one, &y).unwrap().is_zero());
        assert!(gamma_double_integrand(&zero, &y).unwrap().is_zero());

        assert!(gamma_via_f_inner(&zero).unwrap().is_zero());
        assert!(gamma_via_f_inner(&HPReal::pow10(-12, &c)).unwrap().to_f64() < 1e-12);
        assert!(unity_via_f_inner(&zero).unwrap().is_zero());
        assert!((unity_via_f_integrand(&h).unwrap() - &one).abs().to_f64() < 1e-25);

        let t = HPReal::from_ratio(1, 4, &c);
        assert_eq!(f_prime0_integrand(&t, &one).unwrap(), t.square());
        assert!(i_2d_integrand(&h, &zero).unwrap() == HPReal::from_ratio(1, 3, &c));
    }

    #[test]
    fn corner_split_matches_raw_integrands() {
        let c = ctx(30);
        for (a, v) in [(0.3, 0.6), (0.05, 0.9), (0.8, 0.25)] {
            let a = HPReal::from_f64(a, &c).unwrap();
            let v = HPReal::from_f64(v, &c).unwrap();
            let p = Abscissa::from_x(&a).unwrap();
            let q = Abscissa::from_x(&v).unwrap();
            let one = HPReal::one(&c);
            let x1 = &one - &a;
            let y1 = &one - &(&a * &v);
            // triangle 1: (x, y) = (1-a, 1-av); triangle 2: swapped
            for (raw, split) in [
                (
                    gamma_double_integrand as fn(&HPReal, &HPReal) -> Result<HPReal>,
                    gamma_corner_integrand as fn(&Abscissa, &Abscissa) -> Result<HPReal>,
                ),
                (ln4_over_pi_integrand, ln4_over_pi_corner_integrand),
            ] {
                let expected = (raw(&x1, &y1).unwrap() + raw(&y1, &x1).unwrap()) * &a;
                let got = split(&p, &q).unwrap();
                assert!((expected - got).abs().to_f64() < 1e-28);
            }
        }
    }

    #[test]
    fn ln_pi_over_2_single() {
        let c = ctx(40);
        let r = integral_ln_pi_over_2(&tol(10, &c), &c).unwrap();
        within(&r, &ln_pi_over_2(&c), 1e-10);
    }

    #[test]
    fn gamma_one_dimensional() {
        let c = ctx(30);
        let g = reference_constant(ReferenceConstant::Gamma, &c);
        within(
            &gamma_classical_integral(&tol(8, &c), &c).unwrap(),
            &g,
            1e-8,
        );
        within(&gamma_via_f_integral(&tol(6, &c), &c).unwrap(), &g, 1e-6);
        let one = HPReal::one(&c);
        within(&unity_via_f_integral(&tol(6, &c), &c).unwrap(), &one, 1e-6);
    }

    #[test]
    fn f_prime0_examples() {
        let c = ctx(30);
        let half = HPReal::from_ratio(1, 2, &c);
        let r = f_prime0_integral(&half, &tol(12, &c), &c).unwrap();
        within(&r, &ln_pi_over_2(&c).mul_pow2(-1), 1e-8);
        assert!(f_prime0_integral(&HPReal::zero(&c), &tol(8, &c), &c)
            .unwrap()
            .value
            .is_zero());
        assert!(f_prime0_integral(&HPReal::one(&c), &tol(8, &c), &c).is_err());
    }

    #[test]
    fn double_integrals() {
        let c = ctx(20);
        let g = reference_constant(ReferenceConstant::Gamma, &c);
        within(&double_integral_gamma(&tol(6, &c), &c).unwrap(), &g, 1e-6);
        let pi = reference_constant(ReferenceConstant::Pi, &c);
        let target = (HPReal::from_u64(4, &c) / pi).ln().unwrap();
        let two_d = double_integral_ln4_over_pi(&tol(6, &c), &c).unwrap();
        within(&two_d, &target, 1e-6);
        let one_d = ln4_over_pi_via_single_integral(&tol(10, &c), &c).unwrap();
        assert!((&two_d.value - &one_d.value).abs().to_f64() < 1e-6);
    }

    #[test]
    fn x_y_form() {
        let c = ctx(20);
        let y = HPReal::from_u64(200, &c);
        let two_d = integral_i_2d(&y, &tol(6, &c), &c).unwrap();
        within(&two_d, &ln_pi_over_2(&c), 1.0);
        let reduced = integral_i_reduced(&y, &tol(10, &c), &c).unwrap();
        assert!((&two_d.value - &reduced.value).abs().to_f64() < 1e-6);
        let tail = integral_i_tail(&y, &tol(10, &c), &c).unwrap();
        let whole = &reduced.value + &tail.value;
        assert!((whole - ln_pi_over_2(&c)).abs().to_f64() < 1e-9);
    }
}
