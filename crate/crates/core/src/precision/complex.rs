use std::fmt;

use super::context::PrecisionContext;
use super::real::HPReal;
use crate::error::{Error, Result};

/// Complex number with arbitrary-precision parts sharing one context.
#[derive(Clone, Debug, PartialEq)]
pub struct HPComplex {
    re: HPReal,
    im: HPReal,
}

impl HPComplex {
    /// Builds a complex number; both parts are re-rounded to the more precise context.
    pub fn new(re: HPReal, im: HPReal) -> Self {
        let ctx = re.ctx().max(*im.ctx());
        Self {
            re: re.with_ctx(&ctx),
            im: im.with_ctx(&ctx),
        }
    }

    pub fn from_real(re: HPReal) -> Self {
        let im = HPReal::zero(re.ctx());
        Self { re, im }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::from_real(HPReal::zero(ctx))
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_real(HPReal::one(ctx))
    }

    pub fn re(&self) -> &HPReal {
        &self.re
    }

    pub fn im(&self) -> &HPReal {
        &self.im
    }

    pub fn ctx(&self) -> &PrecisionContext {
        self.re.ctx()
    }

    pub fn with_ctx(&self, ctx: &PrecisionContext) -> Self {
        Self {
            re: self.re.with_ctx(ctx),
            im: self.im.with_ctx(ctx),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.negate(),
        }
    }

    pub fn scale(&self, k: &HPReal) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self {
            re: self.re.mul_pow2(k),
            im: self.im.mul_pow2(k),
        }
    }

    pub fn abs(&self) -> HPReal {
        (self.re.square() + self.im.square())
            .sqrt()
            .expect("sum of squares is non-negative")
    }

    pub fn exp(&self) -> Result<Self> {
        let modulus = self.re.exp()?;
        Ok(Self::new(
            &modulus * self.im.cos(),
            &modulus * self.im.sin(),
        ))
    }

    /// `base^(-self)` for a positive real base given by its logarithm, using
    /// the principal branch (`exp(-self * ln base)`).
    pub fn neg_power_of(&self, ln_base: &HPReal) -> Result<Self> {
        self.scale(&ln_base.negate()).exp()
    }

    /// Parses `a`, `bi`, `a+bi`, `a-bi` (with `i` alone meaning `1i`).
    pub fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        let err = || Error::Parse(format!("invalid complex literal `{text}`"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix(['i', 'j']) else {
            return Ok(Self::from_real(HPReal::parse(&t, ctx).map_err(|_| err())?));
        };
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&i| {
            (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
        });
        let (re_text, im_text) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im_text = match im_text {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re = HPReal::parse(re_text, ctx).map_err(|_| err())?;
        let im = HPReal::parse(im_text, ctx).map_err(|_| err())?;
        Ok(Self::new(re, im))
    }

    /// `a+bi` rendering with `sig` significant digits per part; real values print as `a`.
    pub fn to_sig_string(&self, sig: usize) -> String {
        if self.is_real() {
            return self.re.to_sig_string(sig);
        }
        let im = self.im.to_sig_string(sig);
        let sep = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sep}{im}i", self.re.to_sig_string(sig))
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(self.ctx().digits() as usize);
        f.write_str(&self.to_sig_string(sig))
    }
}

impl std::ops::Add<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn add(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn sub(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul<&HPComplex> for &HPComplex {
    type Output = HPComplex;
    fn mul(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl std::ops::Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex {
            re: self.re.negate(),
            im: self.im.negate(),
        }
    }
}

impl std::ops::AddAssign<&HPComplex> for HPComplex {
    fn add_assign(&mut self, rhs: &HPComplex) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&HPComplex> for HPComplex {
    fn sub_assign(&mut self, rhs: &HPComplex) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::make_context;

    #[test]
    fn parses_common_forms() {
        let ctx = make_context(20, None).unwrap();
        let cases = [
            ("1", 1.0, 0.0),
            ("0.5", 0.5, 0.0),
            ("1+i", 1.0, 1.0),
            ("1-2i", 1.0, -2.0),
            ("-1.5+0.25i", -1.5, 0.25),
            ("2i", 0.0, 2.0),
            ("-i", 0.0, -1.0),
            ("1e-3+2e+1i", 1e-3, 20.0),
            (" 3 - 4i ", 3.0, -4.0),
        ];
        for (text, re, im) in cases {
            let z = HPComplex::parse(text, &ctx).unwrap();
            assert_eq!((z.re().to_f64(), z.im().to_f64()), (re, im), "{text}");
        }
        for bad in ["", "i+", "1+xi", "abc", "1++2i"] {
            assert!(HPComplex::parse(bad, &ctx).is_err(), "{bad}");
        }
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let ctx = make_context(30, None).unwrap();
        let pi =
            crate::precision::reference_constant(crate::precision::ReferenceConstant::Pi, &ctx);
        let z = HPComplex::new(HPReal::zero(&ctx), pi).exp().unwrap();
        let err = (&z - &HPComplex::from_real(HPReal::from_i64(-1, &ctx))).abs();
        assert!(err < HPReal::pow10(-35, &ctx));
    }

    #[test]
    fn modulus_and_render() {
        let ctx = make_context(20, None).unwrap();
        let z = HPComplex::new(HPReal::from_i64(3, &ctx), HPReal::from_i64(-4, &ctx));
        assert_eq!(z.abs(), HPReal::from_i64(5, &ctx));
        assert_eq!(z.to_sig_string(3), "3.00-4.00i");
        assert_eq!((&z * &z.conj()).to_sig_string(3), "25.0");
    }
}
