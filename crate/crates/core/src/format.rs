//! Fixed-width scientific formatting and CSV serialization of reports.
//!
//! Numbers are written like C's `%.17e` (`1.50000000000000000e+00`), which
//! round-trips every `f64` and makes output byte-stable.

use std::fmt::Write;

use crate::verify::ResidualReport;

pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.17e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// `rho,re_residual,im_residual,rel_residual` with a header row and LF endings.
pub fn residual_csv(report: &ResidualReport) -> String {
    let mut out = String::from("rho,re_residual,im_residual,rel_residual\n");
    for ((x, r), rel) in report.grid.iter().zip(&report.residuals).zip(&report.relative) {
        writeln!(out, "{},{},{},{}", sci(*x), sci(r.re), sci(r.im), sci(*rel)).unwrap();
    }
    out
}
