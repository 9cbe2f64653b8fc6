//! Closed-form large-spin evaluation: central-limit fidelity, recovery
//! window classification, and leading-order scaling laws.
//!
//! Everything here is O(1) arithmetic on real-valued s and j, usable far
//! beyond the exact-sum ceiling (s, j up to 1e12). Exponentials are taken
//! in log domain with explicit underflow to zero below e^{-700}.

use std::fmt;

/// Trig factors smaller than this count as an exactly degenerate angle.
const DEGENERATE_TRIG: f64 = 1e-12;

/// Log-domain exponent below which the fidelity is reported as zero.
const UNDERFLOW_LN: f64 = -700.0;

/// Log of the central-limit squared fidelity after the environment:
/// -2 g^2 s j^2 cos^2(theta) / (1 + 2 g^2 s j sin^2(theta))
/// - (1/2) ln(1 + 2 g^2 s j sin^2(theta)).
///
/// Always finite for finite inputs; use this accessor when the value
/// itself underflows.
pub fn clt_log_fidelity_squared(s: f64, j: f64, theta: f64, g: f64) -> f64 {
    let gsj = g * g * s * j;
    let cos_sq = theta.cos() * theta.cos();
    let sin_sq = theta.sin() * theta.sin();
    let widened = 1.0 + 2.0 * gsj * sin_sq;
    -2.0 * gsj * j * cos_sq / widened - 0.5 * widened.ln()
}

/// Central-limit squared fidelity in (0, 1]; zero once the log-domain
/// value drops below -700.
pub fn clt_fidelity_squared(s: f64, j: f64, theta: f64, g: f64) -> f64 {
    let ln_value = clt_log_fidelity_squared(s, j, theta, g);
    if ln_value < UNDERFLOW_LN {
        0.0
    } else {
        ln_value.exp()
    }
}

/// Where a parameter point sits relative to the recovery window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// s below the decay threshold: the cat has not yet dephased.
    BelowDecay,
    /// Decayed fidelity and near-unit recovered purity both attainable.
    InWindow,
    /// s too large for the purity expansion to hold.
    AbovePurityLimit,
    /// An angle or coupling makes one of the thresholds infinite.
    Degenerate,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regime::BelowDecay => "below-decay",
            Regime::InWindow => "in-window",
            Regime::AbovePurityLimit => "above-purity-limit",
            Regime::Degenerate => "degenerate",
        };
        f.write_str(name)
    }
}

/// Both window thresholds and the classification of a parameter point.
#[derive(Debug, Clone, Copy)]
pub struct RegimeReport {
    /// Decay threshold pi^2 / (4 g^2 j^2 cos^2 theta).
    pub s_lower: f64,
    /// Purity-expansion ceiling 1 / (g^2 j sin^2 theta).
    pub s_upper: f64,
    pub classification: Regime,
}

/// Classify (s, j, theta, g) against the recovery window. The qualitative
/// "well below the ceiling" is quantified as s <= s_upper / 10.
pub fn regime_check(s: f64, j: f64, theta: f64, g: f64) -> RegimeReport {
    let cos_sq = theta.cos() * theta.cos();
    let sin_sq = theta.sin() * theta.sin();
    let gj = g * g * j;
    let s_lower = if theta.cos().abs() < DEGENERATE_TRIG || gj * j == 0.0 {
        f64::INFINITY
    } else {
        std::f64::consts::PI.powi(2) / (4.0 * gj * j * cos_sq)
    };
    let s_upper = if theta.sin().abs() < DEGENERATE_TRIG || gj == 0.0 {
        f64::INFINITY
    } else {
        1.0 / (gj * sin_sq)
    };
    let classification = if !s_lower.is_finite() || !s_upper.is_finite() {
        Regime::Degenerate
    } else if s < s_lower {
        Regime::BelowDecay
    } else if s <= s_upper / 10.0 {
        Regime::InWindow
    } else {
        Regime::AbovePurityLimit
    };
    RegimeReport {
        s_lower,
        s_upper,
        classification,
    }
}

/// The five leading-order scaling laws, evaluated as pure arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct ScalingLaws {
    /// 2 g^2 s j sin^2(theta): second-order loss of purity.
    pub purity_loss_second_order: f64,
    /// 1 - g^2 s j sin^2(theta): conditioned squared fidelity.
    pub conditioned_fidelity_sq_second_order: f64,
    /// 1 - 2 g^2 s j sin^2(theta): outcome-averaged squared fidelity.
    pub mean_fidelity_sq_second_order: f64,
    /// 8 g^4 s^2 j^2 sin^4(theta): fourth-order purity gain of recovery.
    pub purity_gain_fourth_order: f64,
    /// 4 g^2 s j sin^2(theta): second-order recovery ratio.
    pub recovery_ratio_second_order: f64,
}

/// Evaluate the scaling laws at real-valued (s, j).
pub fn scaling_laws(s: f64, j: f64, theta: f64, g: f64) -> ScalingLaws {
    let sin_sq = theta.sin() * theta.sin();
    let loss = g * g * s * j * sin_sq;
    ScalingLaws {
        purity_loss_second_order: 2.0 * loss,
        conditioned_fidelity_sq_second_order: 1.0 - loss,
        mean_fidelity_sq_second_order: 1.0 - 2.0 * loss,
        purity_gain_fourth_order: 8.0 * loss * loss,
        recovery_ratio_second_order: 4.0 * loss,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn fidelity_is_one_without_coupling() {
        assert_eq!(clt_fidelity_squared(50.0, 50.0, PI / 6.0, 0.0), 1.0);
    }

    #[test]
    fn reference_point_value() {
        let f_sq = clt_fidelity_squared(50.0, 50.0, PI / 6.0, 0.01);
        assert_relative_eq!(f_sq, 5.447313544096e-8, max_relative = 1e-11);
        assert_relative_eq!(f_sq.sqrt(), 2.333948059425e-4, max_relative = 1e-11);
    }

    #[test]
    fn photonic_scale_underflows_cleanly() {
        let s = 1e8;
        let j = 1e8;
        let ln_value = clt_log_fidelity_squared(s, j, 0.01, 1e-8);
        assert!(ln_value.is_finite());
        assert!(ln_value < -1e8);
        assert_eq!(clt_fidelity_squared(s, j, 0.01, 1e-8), 0.0);
    }

    #[test]
    fn window_thresholds_at_reference_point() {
        let report = regime_check(50.0, 50.0, PI / 6.0, 0.01);
        assert_relative_eq!(report.s_lower, 13.159472534785811, max_relative = 1e-12);
        assert_relative_eq!(report.s_upper, 800.0, max_relative = 1e-12);
        assert_eq!(report.classification, Regime::InWindow);
    }

    #[test]
    fn transverse_angle_is_degenerate() {
        let report = regime_check(50.0, 50.0, PI / 2.0, 0.01);
        assert!(report.s_lower.is_infinite());
        assert!(report.s_upper.is_finite());
        assert_eq!(report.classification, Regime::Degenerate);
    }

    #[test]
    fn aligned_angle_is_degenerate() {
        let report = regime_check(50.0, 50.0, 0.0, 0.01);
        assert!(report.s_lower.is_finite());
        assert!(report.s_upper.is_infinite());
        assert_eq!(report.classification, Regime::Degenerate);
    }

    #[test]
    fn photonic_scale_sits_in_window() {
        let report = regime_check(1e8, 1e8, 0.01, 1e-8);
        assert_eq!(report.classification, Regime::InWindow);
    }

    #[test]
    fn small_s_is_below_decay() {
        let report = regime_check(5.0, 50.0, PI / 6.0, 0.01);
        assert_eq!(report.classification, Regime::BelowDecay);
    }

    #[test]
    fn large_s_is_above_purity_limit() {
        let report = regime_check(500.0, 50.0, PI / 6.0, 0.01);
        assert_eq!(report.classification, Regime::AbovePurityLimit);
    }

    #[test]
    fn scaling_laws_at_reference_point() {
        let laws = scaling_laws(50.0, 50.0, PI / 6.0, 0.01);
        assert_relative_eq!(laws.purity_loss_second_order, 0.125, epsilon = 1e-15);
        assert_relative_eq!(laws.recovery_ratio_second_order, 0.25, epsilon = 1e-15);
        assert_relative_eq!(laws.purity_gain_fourth_order, 0.03125, epsilon = 1e-15);
    }

    #[test]
    fn scaling_laws_vanish_for_aligned_environment() {
        let laws = scaling_laws(50.0, 50.0, 0.0, 0.01);
        assert_eq!(laws.purity_loss_second_order, 0.0);
        assert_eq!(laws.recovery_ratio_second_order, 0.0);
    }

    #[test]
    fn scaling_laws_are_homogeneous_in_coupling() {
        let full = scaling_laws(50.0, 50.0, PI / 6.0, 0.01);
        let half = scaling_laws(50.0, 50.0, PI / 6.0, 0.005);
        assert_relative_eq!(
            half.purity_loss_second_order,
            full.purity_loss_second_order / 4.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            half.purity_gain_fourth_order,
            full.purity_gain_fourth_order / 16.0,
            epsilon = 1e-15
        );
    }
}
