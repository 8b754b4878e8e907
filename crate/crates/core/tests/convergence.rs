use hpconst::integrals::{
    double_integral_gamma, double_integral_ln4_over_pi, f_prime0_integral,
    gamma_classical_integral, gamma_via_f_integral, integral_ln_pi_over_2, unity_via_f_integral,
};
use hpconst::precision::{reference_constant, ReferenceConstant};
use hpconst::products::{product_limit_reference, product_partials, ProductKind, ProductSpec};
use hpconst::quadrature::QuadratureResult;
use hpconst::{make_context, HPReal, PrecisionContext, Result};

fn errors(kind: ProductKind, n_max: u64, ctx: &PrecisionContext) -> Vec<HPReal> {
    let limit = product_limit_reference(kind, ctx).unwrap();
    product_partials(&ProductSpec::new(kind), n_max, ctx)
        .unwrap()
        .iter()
        .map(|p| (p - &limit).abs())
        .collect()
}

fn strictly_decreasing_from(errs: &[HPReal], from: usize, step: usize) -> bool {
    let sampled: Vec<&HPReal> = errs[from - 1..].iter().step_by(step).collect();
    sampled.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn fast_products_eventually_decrease() {
    let ctx = make_context(60, None).unwrap();
    for kind in [
        ProductKind::WallisTransform,
        ProductKind::Pippenger,
        ProductKind::Wallis,
    ] {
        let errs = errors(kind, 40, &ctx);
        assert!(strictly_decreasing_from(&errs, 2, 1), "{kind}");
    }
}

#[test]
fn slow_products_eventually_decrease() {
    let ctx = make_context(80, None).unwrap();
    for kind in [ProductKind::EGamma, ProductKind::GuilleraE] {
        let errs = errors(kind, 200, &ctx);
        assert!(strictly_decreasing_from(&errs, 10, 10), "{kind}");
    }
}

fn ln_pi_over_2(ctx: &PrecisionContext) -> HPReal {
    let pi = reference_constant(ReferenceConstant::Pi, ctx);
    pi.mul_pow2(-1).ln().unwrap()
}

#[test]
fn halving_the_tolerance_never_hurts() {
    let ctx = make_context(30, None).unwrap();
    type Integral = fn(&HPReal, &PrecisionContext) -> Result<QuadratureResult>;
    let cases: [(Integral, HPReal); 2] = [
        (integral_ln_pi_over_2, ln_pi_over_2(&ctx)),
        (
            gamma_classical_integral,
            reference_constant(ReferenceConstant::Gamma, &ctx),
        ),
    ];
    for (integral, oracle) in cases {
        let mut tol = HPReal::pow10(-4, &ctx);
        let mut previous: Option<HPReal> = None;
        for _ in 0..60 {
            let r = integral(&tol, &ctx).unwrap();
            let err = (&r.value - &oracle).abs();
            if let Some(p) = &previous {
                assert!(&err <= p, "error grew at tol {}", tol.to_sig_string(3));
            }
            previous = Some(err);
            tol = tol.mul_pow2(-1);
        }
    }
}

#[test]
fn error_estimates_cover_the_true_error() {
    let ctx = make_context(20, None).unwrap();
    let gamma = reference_constant(ReferenceConstant::Gamma, &ctx);
    let ln2 = reference_constant(ReferenceConstant::Ln2, &ctx);
    let ln_half_pi = ln_pi_over_2(&ctx);
    let half = HPReal::from_ratio(1, 2, &ctx);
    for digits in [6i64, 8, 10] {
        let tol = HPReal::pow10(-digits, &ctx);
        let cases = [
            (
                integral_ln_pi_over_2(&tol, &ctx).unwrap(),
                ln_half_pi.clone(),
            ),
            (gamma_classical_integral(&tol, &ctx).unwrap(), gamma.clone()),
            (gamma_via_f_integral(&tol, &ctx).unwrap(), gamma.clone()),
            (unity_via_f_integral(&tol, &ctx).unwrap(), HPReal::one(&ctx)),
            (
                f_prime0_integral(&half, &tol, &ctx).unwrap(),
                ln_half_pi.mul_pow2(-1),
            ),
            (double_integral_gamma(&tol, &ctx).unwrap(), gamma.clone()),
            (
                double_integral_ln4_over_pi(&tol, &ctx).unwrap(),
                &ln2 - &ln_half_pi,
            ),
        ];
        for (i, (r, oracle)) in cases.iter().enumerate() {
            let err = (&r.value - oracle).abs();
            assert!(err <= r.error_estimate, "case {i} at 1e-{digits}");
            assert!(r.error_estimate <= tol, "case {i} at 1e-{digits}");
        }
    }
}
