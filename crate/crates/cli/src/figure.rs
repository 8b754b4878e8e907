//! Wallis partial products against their Euler-transformed counterpart.

use hpconst::products::{product_limit_reference, product_partials, ProductKind, ProductSpec};
use hpconst::{PrecisionContext, Result};
use serde::Serialize;

use crate::report::render;

pub const CSV_HEADER: &str = "n,wallis,sondow,wallis_err,sondow_err";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigureRow {
    pub n: u64,
    pub wallis: String,
    #[serde(rename = "sondow")]
    pub transformed: String,
    pub wallis_err: String,
    #[serde(rename = "sondow_err")]
    pub transformed_err: String,
}

/// Rows for `n = 1..=n_max`; errors are measured at the context's precision.
pub fn figure1_rows(n_max: u64, ctx: &PrecisionContext) -> Result<Vec<FigureRow>> {
    let limit = product_limit_reference(ProductKind::Wallis, ctx)?;
    let wallis = product_partials(&ProductSpec::new(ProductKind::Wallis), n_max, ctx)?;
    let transformed =
        product_partials(&ProductSpec::new(ProductKind::WallisTransform), n_max, ctx)?;
    Ok(wallis
        .iter()
        .zip(&transformed)
        .zip(1..)
        .map(|((w, s), n)| FigureRow {
            n,
            wallis: render(w),
            transformed: render(s),
            wallis_err: render(&(w - &limit).abs()),
            transformed_err: render(&(s - &limit).abs()),
        })
        .collect())
}

pub fn to_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.wallis, r.transformed, r.wallis_err, r.transformed_err
        ));
    }
    out
}

pub fn to_json(rows: &[FigureRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hpconst::make_context;

    #[test]
    fn first_row_is_the_first_factors() {
        let ctx = make_context(40, None).unwrap();
        let rows = figure1_rows(1, &ctx).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].wallis, "1.3333333333333333333");
        assert_eq!(rows[0].transformed, "1.4142135623730950488");
        let csv = to_csv(&rows);
        assert!(csv.starts_with("n,wallis,sondow,wallis_err,sondow_err\n1,"));
        assert!(!csv.contains('\r'));
    }
}
