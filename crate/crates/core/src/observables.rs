//! Fidelity, purity, outcome statistics, and recovery ratios computed from
//! structured densities.
//!
//! Every sum runs in ascending sigma, then ascending sigma', so repeated
//! runs are bit-stable.

use crate::error::{Error, Result};
use crate::model::{apply_probe_measurement, CatState, ProbeModel, SpinLabel, StructuredDensity};
use crate::numeric::{clamp_unit_interval, neumaier_sum};

/// Per-outcome probabilities, fidelities, and purities of the conditional
/// post-measurement states. Entries where p_m underflows are flagged with
/// `None` statistics.
#[derive(Debug, Clone)]
pub struct OutcomeTable {
    pub outcomes: Vec<SpinLabel>,
    pub p: Vec<f64>,
    pub fidelity: Vec<Option<f64>>,
    pub purity: Vec<Option<f64>>,
}

impl OutcomeTable {
    /// Exact expectation of the outcome, sum_m m p_m.
    pub fn mean_outcome(&self) -> f64 {
        let mut sum = 0.0;
        for (label, p) in self.outcomes.iter().zip(&self.p) {
            sum += label.value() * p;
        }
        sum
    }

    /// Probability-weighted mean fidelity over realized outcomes.
    pub fn mean_fidelity(&self) -> f64 {
        let mut sum = 0.0;
        for (f, p) in self.fidelity.iter().zip(&self.p) {
            if let Some(f) = f {
                sum += f * p;
            }
        }
        sum
    }

    /// Probability-weighted mean purity over realized outcomes.
    pub fn mean_purity(&self) -> f64 {
        let mut sum = 0.0;
        for (q, p) in self.purity.iter().zip(&self.p) {
            if let Some(q) = q {
                sum += q * p;
            }
        }
        sum
    }

    pub fn total_probability(&self) -> f64 {
        crate::numeric::neumaier_sum(self.p.iter().copied())
    }
}

/// Fraction of lost fidelity and purity regained by the reversing
/// operation. Ratios are `None` when nothing was lost.
#[derive(Debug, Clone, Copy)]
pub struct RecoveryReport {
    pub f_before: f64,
    pub f_after: f64,
    pub p_before: f64,
    pub p_after: f64,
    pub r_f: Option<f64>,
    pub r_p: Option<f64>,
}

impl RecoveryReport {
    /// Decoherence-time amplification 1/(1 - r_p).
    pub fn decoherence_gain(&self) -> Option<f64> {
        match self.r_p {
            Some(r) if r < 1.0 => Some(1.0 / (1.0 - r)),
            _ => None,
        }
    }
}

/// Squared overlap <ref|rho|ref> of a structured density with a reference
/// cat state, clamped to [0, 1] after a roundoff tolerance check.
pub fn fidelity_sq_against(rho: &StructuredDensity, reference: &CatState) -> Result<f64> {
    if reference.two_s() != rho.two_s() {
        return Err(Error::DimensionMismatch {
            expected: rho.cat().dim(),
            got: reference.dim(),
        });
    }
    let c = rho.cat().coeffs();
    let r = reference.coeffs();
    let dim = c.len();
    // q_i = conj(ref_i) c_i reduces to |c_i|^2 when the reference is the
    // density's own cat
    let q: Vec<_> = (0..dim).map(|i| r[i].conj() * c[i]).collect();
    let sum = neumaier_sum(
        (0..dim).flat_map(|i| (0..dim).map(move |k| (i, k))).map(|(i, k)| {
            (q[i] * q[k].conj() * rho.kernel()[(i, k)]).re
        }),
    );
    clamp_unit_interval(sum / rho.norm(), "squared fidelity")
}

/// Squared fidelity against the density's own cat state.
pub fn fidelity_sq_to_cat(rho: &StructuredDensity) -> Result<f64> {
    let weights = rho.cat().weights();
    let dim = weights.len();
    let sum = neumaier_sum(
        (0..dim).flat_map(|i| (0..dim).map(move |k| (i, k))).map(|(i, k)| {
            weights[i] * weights[k] * rho.kernel()[(i, k)].re
        }),
    );
    clamp_unit_interval(sum / rho.norm(), "squared fidelity")
}

/// Fidelity F = sqrt(<psi|rho|psi>) against the density's own cat.
pub fn fidelity_to_cat(rho: &StructuredDensity) -> Result<f64> {
    Ok(fidelity_sq_to_cat(rho)?.sqrt())
}

/// Purity Tr rho^2 = sum |c|^2 |c'|^2 |K|^2 / norm^2.
pub fn purity(rho: &StructuredDensity) -> Result<f64> {
    let weights = rho.cat().weights();
    let dim = weights.len();
    let sum = neumaier_sum(
        (0..dim).flat_map(|i| (0..dim).map(move |k| (i, k))).map(|(i, k)| {
            weights[i] * weights[k] * rho.kernel()[(i, k)].norm_sqr()
        }),
    );
    let value = sum / (rho.norm() * rho.norm());
    let floor = 1.0 / dim as f64;
    if value < floor - 1e-12 || value > 1.0 + 1e-12 {
        return Err(Error::NumericalConsistency(format!(
            "purity = {value} outside [{floor}, 1] beyond roundoff"
        )));
    }
    Ok(value.min(1.0))
}

/// Probability, fidelity, and purity for every outcome m = -j..j.
pub fn outcome_table(
    rho_prime: &StructuredDensity,
    probe: &ProbeModel,
    cat_reference: &CatState,
) -> Result<OutcomeTable> {
    let outcomes = probe.outcome_labels();
    let mut p = Vec::with_capacity(outcomes.len());
    let mut fidelity = Vec::with_capacity(outcomes.len());
    let mut purity_col = Vec::with_capacity(outcomes.len());
    for label in &outcomes {
        match apply_probe_measurement(rho_prime, probe, label.two_value) {
            Ok((p_m, post)) => {
                p.push(p_m);
                fidelity.push(Some(fidelity_sq_against(&post, cat_reference)?.sqrt()));
                purity_col.push(Some(purity(&post)?));
            }
            Err(Error::OutcomeImpossible { .. }) => {
                p.push(0.0);
                fidelity.push(None);
                purity_col.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(OutcomeTable {
        outcomes,
        p,
        fidelity,
        purity: purity_col,
    })
}

/// Recovery ratios of a reversing operation, r = (after - before)/(1 - before).
pub fn recovery_report(
    before: &StructuredDensity,
    after: &StructuredDensity,
    cat_reference: &CatState,
) -> Result<RecoveryReport> {
    let f_before = fidelity_sq_against(before, cat_reference)?.sqrt();
    let f_after = fidelity_sq_against(after, cat_reference)?.sqrt();
    let p_before = purity(before)?;
    let p_after = purity(after)?;
    // losses below roundoff carry no information about the recovery
    let ratio = |before: f64, after: f64| {
        if 1.0 - before > crate::numeric::ROUNDOFF_TOL {
            Some((after - before) / (1.0 - before))
        } else {
            None
        }
    };
    Ok(RecoveryReport {
        f_before,
        f_after,
        p_before,
        p_after,
        r_f: ratio(f_before, f_after),
        r_p: ratio(p_before, p_after),
    })
}
