//! Partial products of five infinite products:
//!
//! | kind         | limit   | n-th factor                                   |
//! |--------------|---------|-----------------------------------------------|
//! | `egamma`     | e^gamma | `exp(log_core(n))^(1/(n+1))`                  |
//! | `sondow_pi`  | pi/2    | `exp(log_core(n))^(1/2^n)`                    |
//! | `guillera_e` | e       | `exp(log_core(n))^(1/n)`                      |
//! | `wallis`     | pi/2    | `(2n+2)^2 / ((2n+1)(2n+3))`, n from 0         |
//! | `pippenger`  | e/2     | (n-th group of Wallis ratios)^(1/2^n)         |
//!
//! Pippenger's groups continue the pattern `2/1 | 2/3 4/3 | 4/5 6/5 6/7 8/7 | ..`:
//! group `n` holds the `2^(n-1)` Wallis ratios `r_j` with
//! `2^(n-1) <= j < 2^n`, where `r_(2i-1) = 2i/(2i-1)` and `r_(2i) = 2i/(2i+1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::precision::{
    bernoulli_numbers, reference_constant, HPReal, PrecisionContext, ReferenceConstant,
};
use crate::series::log_cores;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    EGamma,
    WallisTransform,
    GuilleraE,
    Wallis,
    Pippenger,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::EGamma,
        ProductKind::WallisTransform,
        ProductKind::GuilleraE,
        ProductKind::Wallis,
        ProductKind::Pippenger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::EGamma => "egamma",
            ProductKind::WallisTransform => "sondow_pi",
            ProductKind::GuilleraE => "guillera_e",
            ProductKind::Wallis => "wallis",
            ProductKind::Pippenger => "pippenger",
        }
    }

    /// Exponent applied to the `n`-th factor.
    pub fn exponent(self, n: u64) -> BigRational {
        let one = BigInt::one();
        match self {
            ProductKind::EGamma => BigRational::new(one, BigInt::from(n + 1)),
            ProductKind::WallisTransform | ProductKind::Pippenger => {
                BigRational::new(one, BigInt::one() << n)
            }
            ProductKind::GuilleraE => BigRational::new(one, BigInt::from(n)),
            ProductKind::Wallis => BigRational::one(),
        }
    }

    fn uses_log_core(self) -> bool {
        matches!(
            self,
            ProductKind::EGamma | ProductKind::WallisTransform | ProductKind::GuilleraE
        )
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// A product family: its kind and the exponent schedule of its factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductSpec {
    kind: ProductKind,
}

/// Indices over which a caller-supplied schedule is compared with the kind's.
const SCHEDULE_CHECK_LIMIT: u64 = 64;

impl ProductSpec {
    pub fn new(kind: ProductKind) -> Self {
        Self { kind }
    }

    /// Builds a spec from an explicit schedule, rejecting one that does not
    /// belong to `kind`.
    pub fn with_schedule(kind: ProductKind, schedule: impl Fn(u64) -> BigRational) -> Result<Self> {
        match (1..=SCHEDULE_CHECK_LIMIT).find(|&n| schedule(n) != kind.exponent(n)) {
            None => Ok(Self::new(kind)),
            Some(n) => Err(Error::Domain(format!(
                "exponent schedule does not match `{kind}` at n = {n}"
            ))),
        }
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn exponent(&self, n: u64) -> BigRational {
        self.kind.exponent(n)
    }
}

impl From<ProductKind> for ProductSpec {
    fn from(kind: ProductKind) -> Self {
        Self::new(kind)
    }
}

/// Product of the first `big_n` factors.
pub fn product_partial(spec: &ProductSpec, big_n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    check_terms(big_n)?;
    match spec.kind {
        ProductKind::Wallis => Ok(HPReal::from_rational(&wallis_exact(big_n), ctx)),
        _ => {
            let logs = log_partial_sums(spec.kind, big_n, ctx)?;
            logs.last().expect("at least one factor").exp()
        }
    }
}

/// Partial products for every `N = 1..=n_max`.
pub fn product_partials(
    spec: &ProductSpec,
    n_max: u64,
    ctx: &PrecisionContext,
) -> Result<Vec<HPReal>> {
    check_terms(n_max)?;
    match spec.kind {
        ProductKind::Wallis => {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            (0..n_max)
                .map(|n| {
                    let (a, b) = wallis_factor(n);
                    num *= a;
                    den *= b;
                    Ok(HPReal::from_rational(
                        &BigRational::new(num.clone(), den.clone()),
                        ctx,
                    ))
                })
                .collect()
        }
        _ => log_partial_sums(spec.kind, n_max, ctx)?
            .iter()
            .map(HPReal::exp)
            .collect(),
    }
}

/// The limit of the product, from the independent reference constants.
pub fn product_limit_reference(kind: ProductKind, ctx: &PrecisionContext) -> Result<HPReal> {
    let constant = |c| reference_constant(c, ctx);
    Ok(match kind {
        ProductKind::EGamma => constant(ReferenceConstant::Gamma).exp()?,
        ProductKind::WallisTransform | ProductKind::Wallis => {
            constant(ReferenceConstant::Pi).mul_pow2(-1)
        }
        ProductKind::GuilleraE => constant(ReferenceConstant::E),
        ProductKind::Pippenger => constant(ReferenceConstant::E).mul_pow2(-1),
    })
}

fn check_terms(big_n: u64) -> Result<()> {
    if big_n == 0 {
        return Err(Error::Domain(
            "a partial product needs at least one factor".into(),
        ));
    }
    Ok(())
}

/// `(2n+2)^2 / ((2n+1)(2n+3))` as (numerator, denominator).
fn wallis_factor(n: u64) -> (BigInt, BigInt) {
    let even = BigInt::from(2 * n + 2);
    (
        &even * &even,
        BigInt::from(2 * n + 1) * BigInt::from(2 * n + 3),
    )
}

fn wallis_exact(big_n: u64) -> BigRational {
    let (num, den) = (0..big_n).fold((BigInt::one(), BigInt::one()), |(num, den), n| {
        let (a, b) = wallis_factor(n);
        (num * a, den * b)
    });
    BigRational::new(num, den)
}

/// Cumulative sums `sum_{n<=N} exponent(n) * ln(factor base n)`, N = 1..=n_max.
fn log_partial_sums(kind: ProductKind, n_max: u64, ctx: &PrecisionContext) -> Result<Vec<HPReal>> {
    let logs = if kind.uses_log_core() {
        let mut cores = log_cores(n_max, ctx)?;
        cores.remove(0);
        cores
    } else {
        pippenger_group_logs(n_max, ctx)?
    };
    let mut sum = HPReal::zero(ctx);
    Ok(logs
        .iter()
        .zip(1u64..)
        .map(|(l, n)| {
            sum += l * &HPReal::from_rational(&kind.exponent(n), ctx);
            sum.clone()
        })
        .collect())
}

/// Largest group index evaluated as an exact rational product.
const EXACT_GROUP_LIMIT: u64 = 13;

/// Wallis ratio `r_j`.
fn wallis_ratio(j: u64) -> (BigInt, BigInt) {
    let i = j.div_ceil(2);
    if j % 2 == 1 {
        (BigInt::from(2 * i), BigInt::from(2 * i - 1))
    } else {
        (BigInt::from(2 * i), BigInt::from(2 * i + 1))
    }
}

/// Exact value of Pippenger's `n`-th group.
pub(crate) fn pippenger_group_exact(n: u64) -> BigRational {
    let start = 1u64 << (n - 1);
    let (num, den) = (start..2 * start).fold((BigInt::one(), BigInt::one()), |(num, den), j| {
        let (a, b) = wallis_ratio(j);
        (num * a, den * b)
    });
    BigRational::new(num, den)
}

/// `ln` of groups `1..=n_max`.
fn pippenger_group_logs(n_max: u64, ctx: &PrecisionContext) -> Result<Vec<HPReal>> {
    let mut asymptotic = None;
    (1..=n_max)
        .map(|n| {
            if n <= EXACT_GROUP_LIMIT {
                HPReal::from_rational(&pippenger_group_exact(n), ctx).ln()
            } else {
                let series = match &asymptotic {
                    Some(series) => series,
                    None => asymptotic.insert(CentralBinomialSeries::new(
                        1u64 << (EXACT_GROUP_LIMIT - 2),
                        ctx,
                    )?),
                };
                series.group_log(n, ctx)
            }
        })
        .collect()
}

/// Asymptotic expansion of `ln S(m)`, `S(m) = C(2m,m) sqrt(pi m) / 4^m`:
/// `ln S(m) = sum_k B_2k / (2k(2k-1)) (2^(1-2k) - 2) m^(1-2k)`.
///
/// Pippenger's group `n >= 2` equals `(S(m) / S(2m))^2` with `m = 2^(n-2)`.
pub(crate) struct CentralBinomialSeries {
    coeffs: Vec<HPReal>,
}

impl CentralBinomialSeries {
    /// Enough terms for full working precision at every `m >= min_m`.
    pub(crate) fn new(min_m: u64, ctx: &PrecisionContext) -> Result<Self> {
        let eps = HPReal::pow10(-(ctx.working_digits() as i64) - 5, ctx);
        let m = HPReal::from_u64(min_m, ctx);
        let inv_m2 = (HPReal::one(ctx) / &m).square();
        let mut coeffs = Vec::new();
        let mut count = 16;
        loop {
            let bernoulli = bernoulli_numbers(2 * count + 2);
            coeffs.clear();
            let mut scale = HPReal::one(ctx) / &m;
            let mut previous: Option<HPReal> = None;
            for k in 1..=count as u64 {
                let b = &bernoulli[2 * k as usize];
                let two_k = BigInt::from(2 * k);
                let factor = BigRational::new(BigInt::one(), BigInt::one() << (2 * k - 1))
                    - BigRational::from_integer(BigInt::from(2));
                let c = b * factor / BigRational::from_integer(&two_k * (&two_k - 1));
                let c = HPReal::from_rational(&c, ctx);
                let size = (&c * &scale).abs();
                if size < eps {
                    return Ok(Self { coeffs });
                }
                if previous.as_ref().is_some_and(|p| &size > p) {
                    return Err(Error::NotConverged(format!(
                        "central binomial expansion diverges before working precision at m = {min_m}"
                    )));
                }
                previous = Some(size);
                coeffs.push(c);
                scale = &scale * &inv_m2;
            }
            count *= 2;
        }
    }

    pub(crate) fn ln_s(&self, m: &HPReal) -> HPReal {
        let inv_m = HPReal::one(m.ctx()) / m;
        let inv_m2 = inv_m.square();
        let mut scale = inv_m;
        let mut sum = HPReal::zero(m.ctx());
        for c in &self.coeffs {
            sum += c * &scale;
            scale = &scale * &inv_m2;
        }
        sum
    }

    pub(crate) fn group_log(&self, n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
        if n < 2 {
            return Err(Error::Domain(
                "the asymptotic group form needs n >= 2".into(),
            ));
        }
        let m = HPReal::pow2(n as i64 - 2, ctx);
        Ok((self.ln_s(&m) - self.ln_s(&m.mul_pow2(1))).mul_pow2(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{binomial, make_context};
    use crate::series::log_core;

    fn err(kind: ProductKind, n: u64, ctx: &PrecisionContext) -> HPReal {
        let v = product_partial(&ProductSpec::new(kind), n, ctx).unwrap();
        (v - product_limit_reference(kind, ctx).unwrap()).abs()
    }

    #[test]
    fn first_factors() {
        let ctx = make_context(30, None).unwrap();
        let p = |k, n| product_partial(&ProductSpec::new(k), n, &ctx).unwrap();
        let sqrt2 = HPReal::from_u64(2, &ctx).sqrt().unwrap();
        assert!((p(ProductKind::WallisTransform, 1) - &sqrt2).abs().to_f64() < 1e-29);
        assert!((p(ProductKind::Pippenger, 1) - &sqrt2).abs().to_f64() < 1e-29);
        assert!(
            (p(ProductKind::GuilleraE, 1) - HPReal::from_u64(2, &ctx))
                .abs()
                .to_f64()
                < 1e-29
        );
        assert_eq!(
            p(ProductKind::WallisTransform, 2).to_sig_string(11),
            "1.5196713713"
        );
        assert_eq!(p(ProductKind::EGamma, 2).to_sig_string(11), "1.5565434325");
        assert_eq!(p(ProductKind::Wallis, 2), HPReal::from_ratio(64, 45, &ctx));
        assert_eq!(p(ProductKind::Wallis, 1), HPReal::from_ratio(4, 3, &ctx));
    }

    #[test]
    fn limits() {
        let ctx = make_context(20, None).unwrap();
        let r = |k| product_limit_reference(k, &ctx).unwrap().to_sig_string(11);
        assert_eq!(r(ProductKind::WallisTransform), "1.5707963268");
        assert_eq!(r(ProductKind::EGamma), "1.7810724180");
        assert_eq!(r(ProductKind::Pippenger), "1.3591409142");
        assert!(matches!(
            "nope".parse::<ProductKind>(),
            Err(Error::UnknownKind(_))
        ));
        for k in ProductKind::ALL {
            assert_eq!(k.name().parse::<ProductKind>().unwrap(), k);
        }
    }

    #[test]
    fn schedule_is_checked() {
        let ok = ProductSpec::with_schedule(ProductKind::GuilleraE, |n| {
            BigRational::new(BigInt::one(), BigInt::from(n))
        });
        assert_eq!(ok.unwrap().kind(), ProductKind::GuilleraE);
        let bad = ProductSpec::with_schedule(ProductKind::EGamma, |n| {
            BigRational::new(BigInt::one(), BigInt::from(n))
        });
        assert!(bad.is_err());
    }

    #[test]
    fn factor_bases_match_exact_rationals() {
        let ctx = make_context(40, None).unwrap();
        for n in 1..=10u64 {
            let mut base = BigRational::one();
            for k in 0..=n {
                let c = binomial(n, k as i64).into_inner();
                let e: u32 = c.try_into().unwrap();
                let p = BigRational::from_integer(BigInt::from(k + 1).pow(e));
                base = if k % 2 == 1 { base * p } else { base / p };
            }
            let exact = HPReal::from_rational(&base, &ctx);
            let via_log = log_core(n, &ctx).unwrap().exp().unwrap();
            assert!((exact - via_log).abs() < HPReal::pow10(-35, &ctx), "n={n}");
        }
    }

    #[test]
    fn pippenger_groups() {
        let ctx = make_context(30, None).unwrap();
        assert_eq!(
            pippenger_group_exact(1),
            BigRational::from_integer(2.into())
        );
        assert_eq!(
            pippenger_group_exact(2),
            BigRational::new(8.into(), 9.into())
        );
        assert_eq!(
            pippenger_group_exact(3),
            BigRational::new((4 * 6 * 6 * 8).into(), (5 * 5 * 7 * 7).into())
        );
        let series = CentralBinomialSeries::new(1 << 6, &ctx).unwrap();
        for n in [8u64, 10, 14] {
            let exact = HPReal::from_rational(&pippenger_group_exact(n), &ctx)
                .ln()
                .unwrap();
            let approx = series.group_log(n, &ctx).unwrap();
            assert!((exact - approx).abs() < HPReal::pow10(-38, &ctx), "n={n}");
        }
    }

    #[test]
    fn transformed_beats_wallis_up_to_25() {
        let ctx = make_context(40, None).unwrap();
        let limit = product_limit_reference(ProductKind::WallisTransform, &ctx).unwrap();
        let w = product_partials(&ProductSpec::new(ProductKind::Wallis), 25, &ctx).unwrap();
        let s =
            product_partials(&ProductSpec::new(ProductKind::WallisTransform), 25, &ctx).unwrap();
        for n in 2..=25 {
            let ew = (&w[n - 1] - &limit).abs();
            let es = (&s[n - 1] - &limit).abs();
            assert!(es < ew, "n={n}");
        }
    }

    #[test]
    fn rate_ordering_at_one_hundred() {
        let ctx = make_context(60, None).unwrap();
        assert!(err(ProductKind::WallisTransform, 100, &ctx) < err(ProductKind::EGamma, 100, &ctx));
        assert!(err(ProductKind::Pippenger, 100, &ctx) < err(ProductKind::GuilleraE, 100, &ctx));
    }

    #[test]
    fn batched_partials_match_single() {
        let ctx = make_context(20, None).unwrap();
        for kind in ProductKind::ALL {
            let spec = ProductSpec::new(kind);
            let all = product_partials(&spec, 12, &ctx).unwrap();
            assert_eq!(all.len(), 12);
            let last = product_partial(&spec, 12, &ctx).unwrap();
            assert!(
                (&all[11] - &last).abs() < HPReal::pow10(-25, &ctx),
                "{kind}"
            );
        }
    }

    #[test]
    fn slow_products_fail_loudly() {
        let ctx = make_context(20, None).unwrap();
        let r = product_partial(&ProductSpec::new(ProductKind::GuilleraE), 150, &ctx);
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
        assert!(product_partial(&ProductSpec::new(ProductKind::Wallis), 0, &ctx).is_err());
    }
}
