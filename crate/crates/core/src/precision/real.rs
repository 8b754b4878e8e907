use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::context::PrecisionContext;
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    // astro-float caches pi/e/ln2 for its elementary functions; the cache
    // only memoizes values, results do not depend on its state.
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("failed to allocate constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Arbitrary-precision real bound to a [`PrecisionContext`].
///
/// Binary operations run at the larger of the two operand precisions and
/// round to nearest (ties to even). Values are always finite: fallible
/// functions (`exp`, `ln`, ...) report overflow or domain violations as errors,
/// and division by an exact zero panics like integer division.
#[derive(Clone, Debug)]
pub struct HPReal {
    value: BigFloat,
    ctx: PrecisionContext,
}

impl HPReal {
    fn wrap(value: BigFloat, ctx: PrecisionContext) -> Self {
        debug_assert!(!value.is_nan() && !value.is_inf());
        Self { value, ctx }
    }

    fn checked(value: BigFloat, ctx: PrecisionContext, what: &'static str) -> Result<Self> {
        if value.is_nan() || value.is_inf() {
            Err(Error::NonFinite(what))
        } else {
            Ok(Self { value, ctx })
        }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::wrap(BigFloat::from_u64(0, ctx.bits()), *ctx)
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_u64(1, ctx)
    }

    pub fn from_u64(v: u64, ctx: &PrecisionContext) -> Self {
        // Contexts carry at least 34 bits, rounded up to a 64-bit word, so
        // machine integers convert exactly.
        Self::wrap(BigFloat::from_u64(v, ctx.bits()), *ctx)
    }

    pub fn from_i64(v: i64, ctx: &PrecisionContext) -> Self {
        Self::wrap(BigFloat::from_i64(v, ctx.bits()), *ctx)
    }

    /// `num / den`, rounded once. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64, ctx: &PrecisionContext) -> Self {
        Self::from_i64(num, ctx) / Self::from_i64(den, ctx)
    }

    /// Exact when the integer fits in the context's precision.
    pub fn from_bigint(v: &BigInt, ctx: &PrecisionContext) -> Self {
        let (sign, words) = v.to_u64_digits();
        if words.is_empty() {
            return Self::zero(ctx);
        }
        let sign = if sign == BigSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let exponent = i32::try_from(64 * words.len()).expect("integer too large for exponent");
        let mut value = BigFloat::from_words(&words, sign, exponent);
        value
            .set_precision(ctx.bits(), RM)
            .expect("valid precision");
        Self::wrap(value, *ctx)
    }

    pub fn from_rational(v: &BigRational, ctx: &PrecisionContext) -> Self {
        let wide = ctx.escalate_unchecked(20);
        let num = Self::from_bigint(v.numer(), &wide);
        let den = Self::from_bigint(v.denom(), &wide);
        (num / den).with_ctx(ctx)
    }

    pub fn from_f64(v: f64, ctx: &PrecisionContext) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain(format!("non-finite input {v}")));
        }
        let bits = ctx.bits().max(64);
        let mut value = BigFloat::from_f64(v, bits);
        value
            .set_precision(ctx.bits(), RM)
            .expect("valid precision");
        Ok(Self::wrap(value, *ctx))
    }

    /// Parses a decimal literal such as `-12.5`, `1e-10` or `0.25E+3`; the
    /// literal is read exactly and rounded once.
    pub fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self::from_rational(&parse_decimal(text)?, ctx))
    }

    /// `2^k`, exact.
    pub fn pow2(k: i64, ctx: &PrecisionContext) -> Self {
        let exponent = i32::try_from(k + 1).expect("power of two out of range");
        let mut value = BigFloat::from_words(&[1u64 << 63], Sign::Pos, exponent);
        value
            .set_precision(ctx.bits(), RM)
            .expect("valid precision");
        Self::wrap(value, *ctx)
    }

    /// `10^k` for integer `k` (exact for `k >= 0` within precision).
    pub fn pow10(k: i64, ctx: &PrecisionContext) -> Self {
        let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
        let v = Self::from_bigint(&p, ctx);
        if k >= 0 {
            v
        } else {
            Self::one(ctx) / v
        }
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// Re-rounds to another context.
    pub fn with_ctx(&self, ctx: &PrecisionContext) -> Self {
        let mut value = self.value.clone();
        value
            .set_precision(ctx.bits(), RM)
            .expect("valid precision");
        Self::wrap(value, *ctx)
    }

    fn bits(&self) -> usize {
        self.ctx.bits()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.value.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.ctx)
    }

    pub fn negate(&self) -> Self {
        Self::wrap(self.value.neg(), self.ctx)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        self * &Self::pow2(k, &self.ctx)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self * &Self::from_i64(k, &self.ctx)
    }

    /// Panics if `k == 0`.
    pub fn div_int(&self, k: i64) -> Self {
        self / &Self::from_i64(k, &self.ctx)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.value.powi(n, self.bits(), RM), self.ctx)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        Self::checked(self.value.sqrt(self.bits(), RM), self.ctx, "sqrt")
    }

    pub fn exp(&self) -> Result<Self> {
        let p = self.bits();
        let v = with_consts(|cc| self.value.exp(p, RM, cc));
        Self::checked(v, self.ctx, "exp")
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive number".into()));
        }
        let p = self.bits();
        let v = with_consts(|cc| self.value.ln(p, RM, cc));
        Self::checked(v, self.ctx, "ln")
    }

    /// `ln(1 + self)` without losing the low-order digits of a small argument.
    pub fn ln1p(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let one = Self::one(&self.ctx);
        if self <= &one.negate() {
            return Err(Error::Domain("ln1p argument must exceed -1".into()));
        }
        if self.abs() >= Self::pow2(-4, &self.ctx) {
            return (&one + self).ln();
        }
        // x - x^2/2 + x^3/3 - ...
        let eps = Self::pow2(-(self.bits() as i64) - 8, &self.ctx);
        let mut power = self.clone();
        let mut sum = self.clone();
        for j in 2u64.. {
            power = &power * self;
            let term = power.div_int(j as i64);
            if term.abs() <= &eps * &sum.abs() {
                break;
            }
            if j % 2 == 0 {
                sum -= &term;
            } else {
                sum += &term;
            }
        }
        Ok(sum)
    }

    pub fn sin(&self) -> Self {
        let p = self.bits();
        Self::wrap(with_consts(|cc| self.value.sin(p, RM, cc)), self.ctx)
    }

    pub fn cos(&self) -> Self {
        let p = self.bits();
        Self::wrap(with_consts(|cc| self.value.cos(p, RM, cc)), self.ctx)
    }

    /// `self^e` for `self > 0`, via `exp(e ln self)`.
    pub fn powf(&self, e: &HPReal) -> Result<Self> {
        (e * &self.ln()?).exp()
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Exact decomposition `mantissa * 2^exponent`; zero is `(0, 0)`.
    pub fn to_dyadic(&self) -> (BigInt, i64) {
        let (words, _, sign, e, _) = self
            .value
            .as_raw_parts()
            .expect("finite value has raw parts");
        let limbs: Vec<u32> = words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect();
        let mut mag = BigUint::new(limbs);
        if mag.is_zero() {
            return (BigInt::zero(), 0);
        }
        let mut exp = i64::from(e) - 64 * words.len() as i64;
        let tz = mag.trailing_zeros().unwrap_or(0);
        mag >>= tz;
        exp += tz as i64;
        let sign = if sign == Sign::Neg {
            BigSign::Minus
        } else {
            BigSign::Plus
        };
        (BigInt::from_biguint(sign, mag), exp)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        let (m, e) = self.to_dyadic();
        if e >= 0 {
            BigRational::from_integer(m << e as usize)
        } else {
            BigRational::new(m, BigInt::one() << (-e) as usize)
        }
    }

    /// Nearest `f64` (approximately; intended for diagnostics and plotting).
    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.to_dyadic();
        let bits = m.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (m.abs() >> shift as usize).to_u64().unwrap_or(0) as f64;
        let v = top * 2f64.powi((e + shift).clamp(-2000, 2000) as i32);
        if m.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with exactly `sig` significant digits, rounded
    /// half-to-even from the exact binary value.
    ///
    /// Positional notation is used for decimal exponents in `-6..sig`,
    /// scientific (`d.ddde-12`) otherwise.
    pub fn to_sig_string(&self, sig: usize) -> String {
        format_significant(&self.to_rational(), sig.max(1))
    }
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(self.ctx.digits() as usize);
        f.write_str(&self.to_sig_string(sig))
    }
}

fn binop(a: &HPReal, b: &HPReal, op: impl Fn(&BigFloat, &BigFloat, usize) -> BigFloat) -> HPReal {
    let ctx = a.ctx.max(b.ctx);
    HPReal::wrap(op(&a.value, &b.value, ctx.bits()), ctx)
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, $body:expr) => {
        impl<'a, 'b> std::ops::$trait<&'b HPReal> for &'a HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &'b HPReal) -> HPReal {
                binop(self, rhs, $body)
            }
        }
        impl std::ops::$trait<HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl<'b> std::ops::$trait<&'b HPReal> for HPReal {
            type Output = HPReal;
            fn $method(self, rhs: &'b HPReal) -> HPReal {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl<'a> std::ops::$trait<HPReal> for &'a HPReal {
            type Output = HPReal;
            fn $method(self, rhs: HPReal) -> HPReal {
                std::ops::$trait::$method(self, &rhs)
            }
        }
        impl<'b> std::ops::$assign_trait<&'b HPReal> for HPReal {
            fn $assign(&mut self, rhs: &'b HPReal) {
                *self = std::ops::$trait::$method(&*self, rhs);
            }
        }
        impl std::ops::$assign_trait<HPReal> for HPReal {
            fn $assign(&mut self, rhs: HPReal) {
                *self = std::ops::$trait::$method(&*self, &rhs);
            }
        }
    };
}

impl_binop!(Add, add, AddAssign, add_assign, |a, b, p| a.add(b, p, RM));
impl_binop!(Sub, sub, SubAssign, sub_assign, |a, b, p| a.sub(b, p, RM));
impl_binop!(Mul, mul, MulAssign, mul_assign, |a, b, p| a.mul(b, p, RM));
impl_binop!(
    Div,
    div,
    DivAssign,
    div_assign,
    |a: &BigFloat, b: &BigFloat, p| {
        assert!(!b.is_zero(), "division by zero");
        a.div(b, p, RM)
    }
);

impl std::ops::Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        self.negate()
    }
}

impl std::ops::Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        self.negate()
    }
}

/// Exact rational value of a decimal literal.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("invalid decimal literal `{text}`"));
    let t = text.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (
            &t[..i],
            t[i + 1..]
                .trim_start_matches('+')
                .parse::<i64>()
                .map_err(|_| err())?,
        ),
        None => (t, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    if exponent.abs() > 100_000 {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| err())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    })
}

fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice: BigInt = &r << 1;
    match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Significant-digit decimal formatting of an exact rational.
pub fn format_significant(v: &BigRational, sig: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let negative = v.is_negative();
    let p = v.numer().abs();
    let q = v.denom().clone();
    let ten = BigInt::from(10u32);
    let upper = ten.pow(sig as u32);
    let lower = ten.pow(sig as u32 - 1);
    // log10 estimate from bit lengths, corrected below.
    let mut d = ((p.bits() as f64 - q.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let digits = loop {
        let scale = sig as i64 - 1 - d;
        let n = if scale >= 0 {
            round_half_even(&(&p * ten.pow(scale as u32)), &q)
        } else {
            round_half_even(&p, &(&q * ten.pow((-scale) as u32)))
        };
        if n >= upper {
            d += 1;
        } else if n < lower {
            d -= 1;
        } else {
            break n.to_string();
        }
    };
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-6..sig as i64).contains(&d) {
        if d >= 0 {
            let split = d as usize + 1;
            out.push_str(&digits[..split]);
            if split < digits.len() {
                out.push('.');
                out.push_str(&digits[split..]);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-d - 1) as usize));
            out.push_str(&digits);
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&d.to_string());
    }
    out
}
