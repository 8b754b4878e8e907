//! Run reports and decimal rendering.

use std::fmt::Write as _;

use hpconst::precision::{format_significant, parse_decimal};
use hpconst::{HPComplex, HPReal, Result};
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

/// Significant digits of every printed decimal.
pub const OUTPUT_DIGITS: usize = 20;

/// Result of one `compute` or `zeta` invocation.
///
/// Serializes to a flat JSON object; absent fields are `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub constant: Option<String>,
    pub s: Option<String>,
    pub method: String,
    pub precision: u32,
    pub terms: Option<u64>,
    pub tol: Option<String>,
    pub value: String,
    pub reference: Option<String>,
    pub abs_error: Option<String>,
    pub error_estimate: Option<String>,
    pub terms_or_evals: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: Option<&str>| {
            let _ = writeln!(out, "{key:<15}{}", value.unwrap_or("absent"));
        };
        line("command", Some(self.command));
        if let Some(c) = &self.constant {
            line("constant", Some(c));
        }
        if let Some(s) = &self.s {
            line("s", Some(s));
        }
        line("method", Some(&self.method));
        line("precision", Some(&self.precision.to_string()));
        if let Some(n) = self.terms {
            line("terms", Some(&n.to_string()));
        }
        if let Some(t) = &self.tol {
            line("tol", Some(t));
        }
        line("value", Some(&self.value));
        line("reference", self.reference.as_deref());
        line("abs_error", self.abs_error.as_deref());
        if let Some(e) = &self.error_estimate {
            line("error_estimate", Some(e));
        }
        line("terms_or_evals", Some(&self.terms_or_evals.to_string()));
        if let Some(ms) = self.elapsed_ms {
            line("elapsed_ms", Some(&ms.to_string()));
        }
        out
    }
}

pub fn render(v: &HPReal) -> String {
    v.to_sig_string(OUTPUT_DIGITS)
}

/// `|value - reference|` of the two printed decimals, exactly, then rendered.
pub fn printed_difference(value: &str, reference: &str) -> Result<String> {
    let d = (parse_decimal(value)? - parse_decimal(reference)?).abs();
    Ok(format_significant(&d, OUTPUT_DIGITS))
}

/// A complex value rendered as `a` (real) or `a+bi`, with its absolute error
/// against a real reference computed from the printed parts.
pub fn render_complex(v: &HPComplex, reference: Option<&str>) -> Result<(String, Option<String>)> {
    let re = render(v.re());
    let text = v.to_sig_string(OUTPUT_DIGITS);
    let Some(reference) = reference else {
        return Ok((text, None));
    };
    if v.is_real() {
        let err = printed_difference(&re, reference)?;
        return Ok((text, Some(err)));
    }
    let dre = parse_decimal(&re)? - parse_decimal(reference)?;
    let dim = parse_decimal(&render(v.im()))?;
    let ctx = v.ctx();
    let sq = |q: &BigRational| HPReal::from_rational(q, ctx).square();
    let err = (sq(&dre) + sq(&dim)).sqrt()?;
    Ok((text, Some(render(&err))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hpconst::make_context;

    #[test]
    fn difference_is_exact_in_printed_digits() {
        assert_eq!(
            printed_difference("1.5707963267948966192", "1.5707963267948966190").unwrap(),
            "2.0000000000000000000e-19"
        );
        assert_eq!(printed_difference("0.5", "0.5").unwrap(), "0");
    }

    #[test]
    fn complex_rendering() {
        let ctx = make_context(20, None).unwrap();
        let v = HPComplex::parse("0.5", &ctx).unwrap();
        let (text, err) = render_complex(&v, Some("0.5")).unwrap();
        assert_eq!(text, "0.50000000000000000000");
        assert_eq!(err.as_deref(), Some("0"));
        let v = HPComplex::parse("3+4i", &ctx).unwrap();
        let (text, err) = render_complex(&v, Some("0")).unwrap();
        assert_eq!(text, "3.0000000000000000000+4.0000000000000000000i");
        assert_eq!(err.as_deref(), Some("5.0000000000000000000"));
    }

    #[test]
    fn json_is_flat_with_nulls() {
        let r = RunReport {
            command: "zeta",
            constant: None,
            s: Some("2".into()),
            method: "global".into(),
            precision: 20,
            terms: Some(40),
            tol: None,
            value: "0.8".into(),
            reference: None,
            abs_error: None,
            error_estimate: None,
            terms_or_evals: 40,
            elapsed_ms: None,
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let obj = v.as_object().unwrap();
        assert!(obj.values().all(|x| !x.is_object() && !x.is_array()));
        assert!(obj["reference"].is_null());
        assert!(!obj.contains_key("elapsed_ms"));
        assert!(r.to_text().contains("reference      absent"));
    }
}
