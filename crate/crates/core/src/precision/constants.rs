//! Reference values of pi, gamma, e and ln 2.
//!
//! These are computed from classical series that share nothing with the rest
//! of the crate (Machin's arctangent formula, the factorial series, a
//! Machin-like arctanh formula and the Brent-McMillan algorithm), so they can
//! serve as independent oracles for every other representation. Only basic
//! field operations of [`HPReal`] are used.

use std::fmt;
use std::str::FromStr;

use super::context::PrecisionContext;
use super::real::HPReal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceConstant {
    Pi,
    Gamma,
    E,
    Ln2,
}

impl ReferenceConstant {
    pub const ALL: [ReferenceConstant; 4] = [Self::Pi, Self::Gamma, Self::E, Self::Ln2];

    pub fn name(self) -> &'static str {
        match self {
            Self::Pi => "pi",
            Self::Gamma => "gamma",
            Self::E => "e",
            Self::Ln2 => "ln2",
        }
    }
}

impl fmt::Display for ReferenceConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

/// Computes `name` to the full precision of `ctx`.
pub fn reference_constant(name: ReferenceConstant, ctx: &PrecisionContext) -> HPReal {
    let wide = ctx.escalate_unchecked(10);
    let v = match name {
        ReferenceConstant::Pi => machin_pi(&wide),
        ReferenceConstant::Gamma => brent_mcmillan_gamma(&wide),
        ReferenceConstant::E => factorial_series_e(&wide),
        ReferenceConstant::Ln2 => arctanh_ln2(&wide),
    };
    v.with_ctx(ctx)
}

/// Looks a constant up by its name (`pi`, `gamma`, `e`, `ln2`).
pub fn reference_constant_by_name(name: &str, ctx: &PrecisionContext) -> Result<HPReal> {
    Ok(reference_constant(name.parse()?, ctx))
}

fn epsilon(ctx: &PrecisionContext) -> HPReal {
    HPReal::pow2(-(ctx.bits() as i64) - 4, ctx)
}

/// `atan(1/m) = sum (-1)^k / ((2k+1) m^(2k+1))`.
fn arctan_inv(m: i64, ctx: &PrecisionContext) -> HPReal {
    let eps = epsilon(ctx);
    let m2 = m * m;
    let mut power = HPReal::from_ratio(1, m, ctx);
    let mut sum = HPReal::zero(ctx);
    for k in 0i64.. {
        let term = power.div_int(2 * k + 1);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power = power.div_int(m2);
        if power < eps {
            break;
        }
    }
    sum
}

/// `atanh(1/m) = sum 1 / ((2k+1) m^(2k+1))`.
fn arctanh_inv(m: i64, ctx: &PrecisionContext) -> HPReal {
    let eps = epsilon(ctx);
    let m2 = m * m;
    let mut power = HPReal::from_ratio(1, m, ctx);
    let mut sum = HPReal::zero(ctx);
    for k in 0i64.. {
        sum += power.div_int(2 * k + 1);
        power = power.div_int(m2);
        if power < eps {
            break;
        }
    }
    sum
}

fn machin_pi(ctx: &PrecisionContext) -> HPReal {
    arctan_inv(5, ctx).mul_int(16) - arctan_inv(239, ctx).mul_int(4)
}

fn arctanh_ln2(ctx: &PrecisionContext) -> HPReal {
    arctanh_inv(26, ctx).mul_int(18) - arctanh_inv(4801, ctx).mul_int(2)
        + arctanh_inv(8749, ctx).mul_int(8)
}

fn factorial_series_e(ctx: &PrecisionContext) -> HPReal {
    let eps = epsilon(ctx);
    let mut term = HPReal::one(ctx);
    let mut sum = HPReal::one(ctx);
    for k in 1i64.. {
        term = term.div_int(k);
        sum += &term;
        if term < eps {
            break;
        }
    }
    sum
}

/// Brent-McMillan: with `B_k = (n^k/k!)^2` and `A_k = B_k (H_k - ln n)`,
/// `gamma = sum A_k / sum B_k + O(exp(-4n))`. Taking `n` a power of two keeps
/// `ln n` a multiple of the independently computed `ln 2`.
fn brent_mcmillan_gamma(ctx: &PrecisionContext) -> HPReal {
    let bits = ctx.bits() as f64;
    let target = bits * std::f64::consts::LN_2 / 4.0 + 2.0;
    let p = target.log2().ceil().max(1.0) as u32;
    let n = 1i64 << p;
    // Terms grow to about exp(2n) before decaying.
    let extra_bits = 2.0 * n as f64 * std::f64::consts::LOG2_E + 64.0;
    let work = ctx.escalate_unchecked((extra_bits / std::f64::consts::LOG2_10).ceil() as u32);
    let eps = epsilon(ctx);

    let ln_n = arctanh_ln2(&work).mul_int(i64::from(p));
    let n2 = HPReal::from_i64(n * n, &work);
    let mut a = ln_n.negate();
    let mut b = HPReal::one(&work);
    let mut u = a.clone();
    let mut v = b.clone();
    for k in 1i64.. {
        b = (&b * &n2).div_int(k * k);
        a = ((&a * &n2).div_int(k) + &b).div_int(k);
        u += &a;
        v += &b;
        if k > n && b < &eps * &v && a.abs() < &eps * &v {
            break;
        }
    }
    (u / v).with_ctx(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::make_context;

    const PI_100: &str = "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117068";
    const GAMMA_100: &str = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";
    const E_100: &str = "2.718281828459045235360287471352662497757247093699959574966967627724076630353547594571382178525166427";
    const LN2_100: &str = "0.6931471805599453094172321214581765680755001343602552541206800094933936219696947156058633269964186875";

    fn agrees(name: ReferenceConstant, published: &str, digits: u32) {
        let ctx = make_context(digits, None).unwrap();
        let v = reference_constant(name, &ctx);
        let truth = HPReal::parse(published, &make_context(110, None).unwrap());
        let err = (v - truth.unwrap()).abs();
        assert!(
            err < HPReal::pow10(-(digits as i64) + 1, &ctx),
            "{name} at {digits} digits off by {err:.3}"
        );
    }

    #[test]
    fn published_digits() {
        for digits in [10, 20, 30, 60, 95] {
            agrees(ReferenceConstant::Pi, PI_100, digits);
            agrees(ReferenceConstant::Gamma, GAMMA_100, digits);
            agrees(ReferenceConstant::E, E_100, digits);
            agrees(ReferenceConstant::Ln2, LN2_100, digits);
        }
    }

    #[test]
    fn rendered_examples() {
        let c30 = make_context(30, None).unwrap();
        assert_eq!(
            reference_constant(ReferenceConstant::Pi, &c30).to_sig_string(30),
            "3.14159265358979323846264338328"
        );
        let c20 = make_context(20, None).unwrap();
        assert_eq!(
            reference_constant(ReferenceConstant::Gamma, &c20).to_sig_string(20),
            "0.57721566490153286061"
        );
        assert_eq!(
            reference_constant(ReferenceConstant::Ln2, &c20).to_sig_string(20),
            "0.69314718055994530942"
        );
    }

    #[test]
    fn reproducible_bits() {
        let ctx = make_context(80, None).unwrap();
        for c in ReferenceConstant::ALL {
            let a = reference_constant(c, &ctx).to_dyadic();
            let b = reference_constant(c, &ctx).to_dyadic();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn unknown_name() {
        let ctx = make_context(20, None).unwrap();
        assert_eq!(
            reference_constant_by_name("phi", &ctx).unwrap_err(),
            Error::UnknownConstant("phi".into())
        );
        assert!(reference_constant_by_name("e", &ctx).is_ok());
    }
}
