//! Dicke-basis simulation of a macroscopic spin-cat state dephased by a
//! weak Ising coupling to a finite spin environment, and of the
//! probabilistic measurement that reverses the dephasing.
//!
//! The library is organized around a structured density representation
//! rho = (c c^dagger) .* K / norm, where c are the cat amplitudes and K is
//! a positive kernel with unit diagonal. Diagonal interactions keep every
//! operation in this form, so headline-scale systems (s = j = 50) and
//! beyond (two_s up to 4000) stay exact:
//!
//! - [`model`]: cat amplitudes, the exact and Gaussian dephasing kernels,
//!   the probe amplitude matrix, and the three state transformations
//!   (environment, conditioned probe outcome, average unitary).
//! - [`observables`]: fidelity, purity, outcome tables, recovery reports.
//! - [`kraus`]: explicit operator-sum form of the channel, its truncated
//!   weak-coupling form, approximate reversal operators, cat moments, and
//!   the perturbative predictors built from them.
//! - [`asymptotics`]: closed-form large-spin fidelity, recovery-window
//!   classification, and scaling laws usable at s, j ~ 1e8.
//! - [`estimation`]: inversion of decay data into environment parameters.
//! - [`oracle`]: dense unitary-dilation ground truth on small systems,
//!   independent of every analytic kernel above.

pub mod asymptotics;
pub mod error;
pub mod estimation;
pub mod kraus;
pub mod model;
pub mod numeric;
pub mod observables;
pub mod oracle;

pub use asymptotics::{
    clt_fidelity_squared, clt_log_fidelity_squared, regime_check, scaling_laws, Regime,
    RegimeReport, ScalingLaws,
};
pub use error::{Error, Result};
pub use estimation::{env_from_decay, theta_from_thermal, EnvEstimate};
pub use kraus::{
    approximate_left_inverse, cat_moments, channel_apply, fidelity_gap_prediction,
    ising_kraus_family, perturbative_predictions, purity_gain_prediction, CatMoments,
    KrausFamily, KrausTerm, PerturbativePredictions, PROBE_ZETA,
};
pub use model::{
    apply_average_unitary, apply_environment, apply_probe_measurement, cat_coefficients,
    dephasing_kernel, dephasing_kernel_approx, hermiticity_defect, probe_model, spin_labels,
    CatState, DephasingKernel, ProbeModel, SpinLabel, StructuredDensity,
};
pub use observables::{
    fidelity_sq_against, fidelity_sq_to_cat, fidelity_to_cat, outcome_table, purity,
    recovery_report, OutcomeTable, RecoveryReport,
};
