//! Byte-stable numeric formatting and flag parsing helpers.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

/// C-style `%.12e`: 12 digits after the point, signed two-digit exponent.
/// Reparses losslessly (13 significant digits > f64's 17-digit round trip
/// is not needed for the 12-digit contract).
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let raw = format!("{x:.12e}");
    let (mantissa, exponent) = raw.split_once('e').expect("exponential format");
    let exponent: i32 = exponent.parse().expect("exponent digits");
    let sign = if exponent < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exponent.abs())
}

/// Option values are printed as numbers when present and `nan` when the
/// quantity is undefined, keeping column shapes fixed.
pub fn sci_opt(x: Option<f64>) -> String {
    sci(x.unwrap_or(f64::NAN))
}

/// Parse a complex amplitude given as `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let (re, im) = text
        .split_once(',')
        .with_context(|| format!("expected `re,im`, got `{text}`"))?;
    let re: f64 = re
        .trim()
        .parse()
        .with_context(|| format!("bad real part in `{text}`"))?;
    let im: f64 = im
        .trim()
        .parse()
        .with_context(|| format!("bad imaginary part in `{text}`"))?;
    Ok(Complex64::new(re, im))
}

/// Convert an integer or half-integer spin literal to its twice-integer
/// label, rejecting anything else.
pub fn half_integer_label(value: f64, flag: &str) -> Result<i32> {
    let doubled = 2.0 * value;
    let rounded = doubled.round();
    if !(doubled - rounded).abs().le(&1e-9) {
        bail!("{flag} = {value} is not an integer or half-integer");
    }
    if rounded < 1.0 || rounded > i32::MAX as f64 {
        bail!("{flag} = {value} is out of range (needs at least 1/2)");
    }
    Ok(rounded as i32)
}
