//! Log-domain evaluation helpers for large binomials and large integer powers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Roundoff window for the clamping policy: violations inside it clamp,
/// violations beyond it are treated as bugs.
pub const ROUNDOFF_TOL: f64 = 1e-12;

/// ln C(n, k) via log-gamma, exact enough for n up to 10^4 and beyond.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    statrs::function::factorial::ln_binomial(n, k)
}

/// z^n for integer n >= 0 as exp(n ln z), stable for n up to 10^4.
///
/// The principal branch is fine here: e^{n ln z} = z^n exactly for integer n.
pub fn complex_int_pow(base: Complex64, n: i32) -> Complex64 {
    debug_assert!(n >= 0);
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if base == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    (f64::from(n) * base.ln()).exp()
}

/// Compensated (Neumaier) summation; keeps thousands-term norms and
/// probability totals accurate to a few ulps instead of O(n) ulps.
pub fn neumaier_sum<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for value in values {
        let tentative = sum + value;
        if sum.abs() >= value.abs() {
            compensation += (sum - tentative) + value;
        } else {
            compensation += (value - tentative) + sum;
        }
        sum = tentative;
    }
    sum + compensation
}

/// Clamp a probability-like quantity to [0, 1].
///
/// Values in [-1e-12, 0) clamp to 0 and (1, 1+1e-12] clamp to 1; anything
/// further out is a numerical-consistency error, not roundoff.
pub fn clamp_unit_interval(x: f64, what: &str) -> Result<f64> {
    if !(-ROUNDOFF_TOL..=1.0 + ROUNDOFF_TOL).contains(&x) {
        return Err(Error::NumericalConsistency(format!(
            "{what} = {x:e} outside [0, 1] beyond roundoff"
        )));
    }
    Ok(x.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn binomial_matches_reference_values() {
        assert_relative_eq!(ln_binomial(4, 2).exp(), 6.0, max_relative = 1e-12);
        assert_relative_eq!(ln_binomial(7, 3), 3.5553480614894137, max_relative = 1e-14);
        assert_relative_eq!(ln_binomial(100, 50), 66.783_841_652_017_43, max_relative = 1e-14);
        assert_relative_eq!(ln_binomial(4000, 2000), 2768.2158435670861, max_relative = 1e-13);
        assert_relative_eq!(ln_binomial(10000, 3333), 6_360.138_534_701_304, max_relative = 1e-13);
    }

    #[test]
    fn int_pow_handles_zero_base_and_exponent() {
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(complex_int_pow(z, 3), Complex64::new(0.0, 0.0));
        assert_eq!(complex_int_pow(z, 0), Complex64::new(1.0, 0.0));
        let w = Complex64::new(-0.3, 0.4);
        let direct = w * w * w;
        let logged = complex_int_pow(w, 3);
        assert_relative_eq!(logged.re, direct.re, max_relative = 1e-12);
        assert_relative_eq!(logged.im, direct.im, max_relative = 1e-12);
    }

    #[test]
    fn compensated_sum_beats_plain_accumulation() {
        // 0.1 is inexact in binary; plain summation of 10^5 copies drifts
        let values = std::iter::repeat_n(0.1, 100_000);
        let compensated = neumaier_sum(values);
        assert_relative_eq!(compensated, 10_000.0, max_relative = 1e-15);
        assert_eq!(neumaier_sum(std::iter::empty::<f64>()), 0.0);
    }

    #[test]
    fn clamping_policy() {
        assert_eq!(clamp_unit_interval(-5e-13, "x").unwrap(), 0.0);
        assert_eq!(clamp_unit_interval(1.0 + 5e-13, "x").unwrap(), 1.0);
        assert_eq!(clamp_unit_interval(0.5, "x").unwrap(), 0.5);
        assert!(clamp_unit_interval(-1e-11, "x").is_err());
        assert!(clamp_unit_interval(1.0 + 1e-11, "x").is_err());
    }
}
