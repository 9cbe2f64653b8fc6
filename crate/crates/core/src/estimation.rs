//! Recovery of environment parameters from experimentally accessible
//! quantities: the thermal mixing angle from an energy gap and a
//! temperature, and (j, g0) from a fidelity-collapse time together with
//! the purity measured there.

use crate::error::{Error, Result};

/// Trig factors smaller than this make the inversion degenerate.
const DEGENERATE_TRIG: f64 = 1e-12;

/// Purity losses smaller than this carry no usable information.
const ILL_CONDITIONED_LOSS: f64 = 1e-15;

/// Mixing angle of a thermal two-level environment spin:
/// theta = 2 atan(e^{-delta_e / (2 kT)}).
///
/// A non-positive gap is allowed and simply lands at theta >= pi/2
/// (inverted or maximally mixed population).
pub fn theta_from_thermal(delta_e: f64, temperature: f64) -> Result<f64> {
    if temperature <= 0.0 || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be positive and finite, got {temperature}"
        )));
    }
    if !delta_e.is_finite() {
        return Err(Error::Domain(format!("energy gap must be finite, got {delta_e}")));
    }
    Ok(2.0 * (-delta_e / (2.0 * temperature)).exp().atan())
}

/// Environment estimate inverted from decay data.
#[derive(Debug, Clone, Copy)]
pub struct EnvEstimate {
    /// Mixing angle the inversion was performed at.
    pub theta: f64,
    /// Estimated environment spin magnitude, not forced integral.
    pub j: f64,
    /// j rounded to the nearest half-integer, as a twice-integer label,
    /// for feeding back into the exact model.
    pub two_j_rounded: i64,
    /// Coupling at the collapse time t0.
    pub g0: f64,
    /// Collapse time the estimate is anchored to.
    pub t0: f64,
}

impl EnvEstimate {
    /// Linear-in-time coupling g(t_e) = g0 t_e / t0.
    pub fn coupling_at(&self, t_e: f64) -> f64 {
        self.g0 * t_e / self.t0
    }
}

/// Invert the two decay relations g0^2 j^2 = pi^2 / (4 s cos^2 theta) and
/// g0^2 j = (1 - p0') / (2 s sin^2 theta) for (j, g0), given the collapse
/// time t0 and the purity p0' measured there.
pub fn env_from_decay(t0: f64, p0_prime: f64, s: f64, theta: f64) -> Result<EnvEstimate> {
    if t0 <= 0.0 || !t0.is_finite() {
        return Err(Error::Domain(format!(
            "collapse time must be positive and finite, got {t0}"
        )));
    }
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::Domain(format!("spin s must be positive and finite, got {s}")));
    }
    if p0_prime <= 0.0 || !p0_prime.is_finite() {
        return Err(Error::Domain(format!(
            "purity at collapse must be positive and finite, got {p0_prime}"
        )));
    }
    if p0_prime >= 1.0 || 1.0 - p0_prime < ILL_CONDITIONED_LOSS {
        return Err(Error::IllConditioned(format!(
            "purity at collapse {p0_prime} shows no loss; estimated j diverges"
        )));
    }
    let cos_theta = theta.cos();
    let sin_theta = theta.sin();
    if cos_theta.abs() < DEGENERATE_TRIG {
        return Err(Error::Domain(
            "cos(theta) vanishes; the collapse-time relation carries no information".into(),
        ));
    }
    if sin_theta.abs() < DEGENERATE_TRIG {
        return Err(Error::Domain(
            "sin(theta) vanishes; the purity relation carries no information".into(),
        ));
    }
    let g0_sq_j_sq = std::f64::consts::PI.powi(2) / (4.0 * s * cos_theta * cos_theta);
    let g0_sq_j = (1.0 - p0_prime) / (2.0 * s * sin_theta * sin_theta);
    let j = g0_sq_j_sq / g0_sq_j;
    let g0 = (g0_sq_j / j).sqrt();
    Ok(EnvEstimate {
        theta,
        j,
        two_j_rounded: (2.0 * j).round() as i64,
        g0,
        t0,
    })
}
