//! Which methods compute which constant, and how each one is evaluated.

use std::fmt;

use clap::ValueEnum;
use hpconst::integrals::{
    double_integral_gamma, double_integral_ln4_over_pi, f_prime0_integral,
    gamma_classical_integral, gamma_via_f_integral, integral_ln_pi_over_2,
    ln4_over_pi_via_single_integral, unity_via_f_integral,
};
use hpconst::lerch::{gamma_series_via_f, polylog_series};
use hpconst::precision::{reference_constant, ReferenceConstant};
use hpconst::products::{product_partial, ProductKind, ProductSpec};
use hpconst::quadrature::QuadratureResult;
use hpconst::series::{euler_transform_partial, SeriesSpec};
use hpconst::zeta::{
    alt_zeta_deriv_global, alt_zeta_dirichlet, alt_zeta_global, ln_pi_over_2_series, ZetaArgument,
};
use hpconst::{HPComplex, HPReal, PrecisionContext, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Constant {
    #[value(name = "pi_over_2")]
    PiOver2,
    #[value(name = "e_gamma")]
    EGamma,
    #[value(name = "e")]
    E,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "ln2")]
    Ln2,
    #[value(name = "ln_pi_over_2")]
    LnPiOver2,
    #[value(name = "ln_4_over_pi")]
    Ln4OverPi,
    #[value(name = "one")]
    One,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::PiOver2 => "pi_over_2",
            Constant::EGamma => "e_gamma",
            Constant::E => "e",
            Constant::Gamma => "gamma",
            Constant::Ln2 => "ln2",
            Constant::LnPiOver2 => "ln_pi_over_2",
            Constant::Ln4OverPi => "ln_4_over_pi",
            Constant::One => "one",
        }
    }

    /// Value from the independent reference constants.
    pub fn reference(self, ctx: &PrecisionContext) -> Result<HPReal> {
        let c = |k| reference_constant(k, ctx);
        let pi = || c(ReferenceConstant::Pi);
        Ok(match self {
            Constant::PiOver2 => pi().mul_pow2(-1),
            Constant::EGamma => c(ReferenceConstant::Gamma).exp()?,
            Constant::E => c(ReferenceConstant::E),
            Constant::Gamma => c(ReferenceConstant::Gamma),
            Constant::Ln2 => c(ReferenceConstant::Ln2),
            Constant::LnPiOver2 => pi().ln()? - c(ReferenceConstant::Ln2),
            Constant::Ln4OverPi => c(ReferenceConstant::Ln2).mul_pow2(1) - pi().ln()?,
            Constant::One => HPReal::one(ctx),
        })
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a method is truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// A term or factor count.
    Terms,
    /// A quadrature tolerance, with the default used when none is given.
    Tolerance { default: f64 },
}

/// What a method produced.
pub struct Computed {
    pub value: HPReal,
    /// Terms for series and products, integrand evaluations for integrals.
    pub count: u64,
    pub error_estimate: Option<HPReal>,
}

impl Computed {
    fn terms(value: HPReal, n: u64) -> Self {
        Self {
            value,
            count: n,
            error_estimate: None,
        }
    }

    fn quadrature(r: QuadratureResult) -> Self {
        Self {
            value: r.value,
            count: r.evaluations,
            error_estimate: Some(r.error_estimate),
        }
    }

    fn map(self, f: impl FnOnce(HPReal) -> Result<HPReal>) -> Result<Self> {
        Ok(Self {
            value: f(self.value)?,
            ..self
        })
    }
}

/// The truncation argument handed to an evaluator.
pub enum Budget {
    Terms(u64),
    Tolerance(HPReal),
}

type Evaluator = fn(&Budget, &PrecisionContext) -> Result<Computed>;

/// One legal `(constant, method)` pair.
pub struct MethodEntry {
    pub constant: Constant,
    pub method: &'static str,
    pub truncation: Truncation,
    /// Largest accepted term count.
    pub max_terms: u64,
    evaluate: Evaluator,
}

impl MethodEntry {
    pub fn evaluate(&self, budget: &Budget, ctx: &PrecisionContext) -> Result<Computed> {
        (self.evaluate)(budget, ctx)
    }
}

pub const DEFAULT_TERMS: u64 = 40;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default tolerance of the double integrals over the unit square.
pub const DEFAULT_TOL_2D: f64 = 1e-6;

const TERMS: Truncation = Truncation::Terms;
const TOL: Truncation = Truncation::Tolerance {
    default: DEFAULT_TOL,
};
const TOL_2D: Truncation = Truncation::Tolerance {
    default: DEFAULT_TOL_2D,
};

/// Term cap for methods whose cost grows at least linearly in the count.
pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

macro_rules! method {
    ($constant:ident, $name:literal, $trunc:expr, $eval:expr) => {
        method!($constant, $name, $trunc, $eval, DEFAULT_MAX_TERMS)
    };
    ($constant:ident, $name:literal, $trunc:expr, $eval:expr, $max:expr) => {
        MethodEntry {
            constant: Constant::$constant,
            method: $name,
            truncation: $trunc,
            max_terms: $max,
            evaluate: $eval,
        }
    };
}

/// The legality table.
pub static METHODS: &[MethodEntry] = &[
    method!(PiOver2, "product:sondow", TERMS, |b, c| product(
        ProductKind::WallisTransform,
        b,
        c
    )),
    method!(PiOver2, "product:wallis", TERMS, |b, c| product(
        ProductKind::Wallis,
        b,
        c
    )),
    method!(PiOver2, "series:log-core+exp", TERMS, |b, c| {
        log_core_series(b, c)?.map(|v| v.exp())
    }),
    method!(PiOver2, "series:euler-wallis+exp", TERMS, |b, c| {
        euler_wallis(b, c)?.map(|v| v.exp())
    }),
    method!(PiOver2, "integral:single+exp", TOL, |b, c| single_integral(
        b, c
    )?
    .map(|v| v.exp())),
    method!(EGamma, "product:egamma", TERMS, |b, c| product(
        ProductKind::EGamma,
        b,
        c
    )),
    method!(EGamma, "series:log-core+exp", TERMS, |b, c| gamma_series(
        b, c
    )?
    .map(|v| v.exp())),
    method!(E, "product:guillera", TERMS, |b, c| product(
        ProductKind::GuilleraE,
        b,
        c
    )),
    method!(E, "product:pippenger", TERMS, |b, c| {
        product(ProductKind::Pippenger, b, c)?.map(|v| Ok(v.mul_pow2(1)))
    }),
    method!(Gamma, "integral:classical", TOL, |b, c| quad(
        gamma_classical_integral,
        b,
        c
    )),
    method!(Gamma, "integral:double", TOL_2D, |b, c| quad(
        double_integral_gamma,
        b,
        c
    )),
    method!(Gamma, "integral:via-f", TOL, |b, c| quad(
        gamma_via_f_integral,
        b,
        c
    )),
    method!(Gamma, "series:log-core", TERMS, gamma_series),
    method!(
        Ln2,
        "series:dirichlet",
        TERMS,
        |b, c| zeta_at_one(alt_zeta_dirichlet, b, c),
        u64::MAX - 1
    ),
    method!(Ln2, "series:global", TERMS, |b, c| zeta_at_one(
        alt_zeta_global,
        b,
        c
    )),
    method!(Ln2, "series:polylog", TERMS, polylog_at_half),
    method!(Ln2, "series:euler-harmonic", TERMS, |b, c| {
        let n = terms(b);
        Ok(Computed::terms(
            euler_transform_partial(&SeriesSpec::harmonic(), n, c)?,
            n,
        ))
    }),
    method!(LnPiOver2, "series:log-core", TERMS, log_core_series),
    method!(LnPiOver2, "series:euler-wallis", TERMS, euler_wallis),
    method!(LnPiOver2, "series:zeta-derivative", TERMS, |b, c| {
        let n = terms(b);
        let origin = ZetaArgument::real(HPReal::zero(c));
        let v = alt_zeta_deriv_global(&origin, n, c)?;
        Ok(Computed::terms(v.re().mul_pow2(1), n))
    }),
    method!(LnPiOver2, "integral:single", TOL, single_integral),
    method!(LnPiOver2, "integral:f-prime", TOL, |b, c| {
        let half = HPReal::from_ratio(1, 2, c);
        let r = f_prime0_integral(&half, tolerance(b), c)?;
        Computed::quadrature(r).map(|v| Ok(v.mul_pow2(1)))
    }),
    method!(Ln4OverPi, "integral:double", TOL_2D, |b, c| quad(
        double_integral_ln4_over_pi,
        b,
        c
    )),
    method!(Ln4OverPi, "integral:ln2-minus-single", TOL, |b, c| {
        quad(ln4_over_pi_via_single_integral, b, c)
    }),
    method!(One, "integral:via-f", TOL, |b, c| quad(
        unity_via_f_integral,
        b,
        c
    )),
];

/// The entry for a pair, if legal.
pub fn lookup(constant: Constant, method: &str) -> Option<&'static MethodEntry> {
    METHODS
        .iter()
        .find(|m| m.constant == constant && m.method == method)
}

/// Legal method names for a constant, in table order.
pub fn methods_for(constant: Constant) -> Vec<&'static str> {
    METHODS
        .iter()
        .filter(|m| m.constant == constant)
        .map(|m| m.method)
        .collect()
}

fn terms(b: &Budget) -> u64 {
    match b {
        Budget::Terms(n) => *n,
        Budget::Tolerance(_) => unreachable!("term-count method called with a tolerance"),
    }
}

fn tolerance(b: &Budget) -> &HPReal {
    match b {
        Budget::Tolerance(t) => t,
        Budget::Terms(_) => unreachable!("quadrature method called with a term count"),
    }
}

fn product(kind: ProductKind, b: &Budget, c: &PrecisionContext) -> Result<Computed> {
    let n = terms(b);
    Ok(Computed::terms(
        product_partial(&ProductSpec::new(kind), n, c)?,
        n,
    ))
}

fn log_core_series(b: &Budget, c: &PrecisionContext) -> Result<Computed> {
    let n = terms(b);
    Ok(Computed::terms(ln_pi_over_2_series(n, c)?, n))
}

fn euler_wallis(b: &Budget, c: &PrecisionContext) -> Result<Computed> {
    let n = terms(b);
    Ok(Computed::terms(
        euler_transform_partial(&SeriesSpec::wallis_log(), n, c)?,
        n,
    ))
}

fn gamma_series(b: &Budget, c: &PrecisionContext) -> Result<Computed> {
    let n = terms(b);
    Ok(Computed::terms(gamma_series_via_f(n, c)?, n))
}

fn single_integral(b: &Budget, c: &PrecisionContext) -> Result<Computed> {
    quad(integral_ln_pi_over_2, b, c)
}

fn quad(
    f: fn(&HPReal, &PrecisionContext) -> Result<QuadratureResult>,
    b: &Budget,
    c: &PrecisionContext,
) -> Result<Computed> {
    Ok(Computed::quadrature(f(tolerance(b), c)?))
}

fn zeta_at_one(
    f: fn(&ZetaArgument, u64, &PrecisionContext) -> Result<HPComplex>,
    b: &Budget,
    c: &PrecisionContext,
) -> Result<Computed> {
    let n = terms(b);
    let v = f(&ZetaArgument::real(HPReal::one(c)), n, c)?;
    Ok(Computed::terms(v.re().clone(), n))
}

fn polylog_at_half(b: &Budget, c: &PrecisionContext) -> Result<Computed> {
    let n = terms(b);
    let half = HPReal::from_ratio(1, 2, c);
    let v = polylog_series(&half, &HPComplex::one(c), n, c)?;
    Ok(Computed::terms(v.re().clone(), n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_no_duplicates() {
        for (i, a) in METHODS.iter().enumerate() {
            for b in &METHODS[i + 1..] {
                assert!(!(a.constant == b.constant && a.method == b.method));
            }
        }
    }

    #[test]
    fn every_constant_has_a_method() {
        for c in Constant::value_variants() {
            assert!(!methods_for(*c).is_empty(), "{c}");
        }
    }

    #[test]
    fn flag_names_match_display_names() {
        for c in Constant::value_variants() {
            assert_eq!(c.to_possible_value().unwrap().get_name(), c.name());
        }
    }

    #[test]
    fn illegal_pairs_are_absent() {
        assert!(lookup(Constant::E, "product:wallis").is_none());
        assert!(lookup(Constant::PiOver2, "product:wallis").is_some());
    }
}
