//! Brute-force ground truth by unitary dilation on small systems.
//!
//! Nothing here touches the analytic kernels: the environment is an
//! explicit product of 2j spin-1/2 sites enumerated configuration by
//! configuration, and the probe is a coherent state in the collective
//! (2j+1)-dimensional space evolved densely and projected outcome by
//! outcome. Agreement with the structured model is what validates the
//! analytic route, so independence is the point; cost guards keep the
//! enumeration honest.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::CatState;

/// Largest two_j the 2^(2j)-configuration environment enumeration accepts.
pub const MAX_ENV_TWO_J: i32 = 10;

/// Largest two_j the collective-space probe dilation accepts.
pub const MAX_PROBE_TWO_J: i32 = 20;

/// Probabilities at or below this are reported as impossible outcomes.
const OUTCOME_FLOOR: f64 = 1e-300;

/// Residual allowed when verifying the coherent state's eigenvalue
/// equation.
const COHERENT_RESIDUAL: f64 = 1e-10;

/// z component of the collective spin, diagonal with ascending m.
pub fn collective_jz(two_j: i32) -> DMatrix<Complex64> {
    let dim = (two_j + 1) as usize;
    DMatrix::from_fn(dim, dim, |row, col| {
        if row == col {
            Complex64::new(-f64::from(two_j) / 2.0 + row as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// y component of the collective spin from the ladder construction.
pub fn collective_jy(two_j: i32) -> DMatrix<Complex64> {
    let dim = (two_j + 1) as usize;
    let j = f64::from(two_j) / 2.0;
    let mut jy = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for a in 0..dim - 1 {
        let m = -j + a as f64;
        let ladder = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        // <m+1| J+ |m> = ladder; Jy = (J+ - J-) / 2i
        jy[(a + 1, a)] = Complex64::new(0.0, -ladder / 2.0);
        jy[(a, a + 1)] = Complex64::new(0.0, ladder / 2.0);
    }
    jy
}

/// e^{-i angle Jy} by eigendecomposition.
///
/// Conjugating Jy by diag(i^a) turns it into a real symmetric tridiagonal
/// matrix; the rotation is assembled from that eigensystem, so no general
/// matrix exponential is involved.
pub fn wigner_rotation_y(two_j: i32, angle: f64) -> DMatrix<Complex64> {
    let dim = (two_j + 1) as usize;
    let j = f64::from(two_j) / 2.0;
    let mut tridiagonal = DMatrix::from_element(dim, dim, 0.0f64);
    for a in 0..dim - 1 {
        let m = -j + a as f64;
        let ladder = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        tridiagonal[(a + 1, a)] = ladder / 2.0;
        tridiagonal[(a, a + 1)] = ladder / 2.0;
    }
    let eigen = tridiagonal.symmetric_eigen();
    let phases: Vec<Complex64> = eigen
        .eigenvalues
        .iter()
        .map(|lambda| Complex64::from_polar(1.0, -angle * lambda))
        .collect();
    let quarter_turn: Vec<Complex64> = (0..dim)
        .map(|a| Complex64::new(0.0, 1.0).powu(a as u32 % 4))
        .collect();
    DMatrix::from_fn(dim, dim, |a, b| {
        let mut total = Complex64::new(0.0, 0.0);
        for (l, phase) in phases.iter().enumerate() {
            total += eigen.eigenvectors[(a, l)] * phase * eigen.eigenvectors[(b, l)];
        }
        quarter_turn[a].conj() * total * quarter_turn[b]
    })
}

/// Coherent spin state pointing along (sin theta) y - (cos theta) z,
/// built as e^{-i (pi/2) Jz} e^{-i (pi - theta) Jy} applied to the
/// highest-weight state, then verified against its eigenvalue equation
/// (eigenvector of sin(theta) Jy - cos(theta) Jz with eigenvalue j).
pub fn coherent_probe_state(two_j: i32, theta: f64) -> Result<DVector<Complex64>> {
    let dim = (two_j + 1) as usize;
    let j = f64::from(two_j) / 2.0;
    let mut highest = DVector::from_element(dim, Complex64::new(0.0, 0.0));
    highest[dim - 1] = Complex64::new(1.0, 0.0);
    let tilted = wigner_rotation_y(two_j, std::f64::consts::PI - theta) * highest;
    let state = DVector::from_fn(dim, |a, _| {
        let m = -j + a as f64;
        Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_2 * m) * tilted[a]
    });
    let axis_operator = collective_jy(two_j) * Complex64::new(theta.sin(), 0.0)
        - collective_jz(two_j) * Complex64::new(theta.cos(), 0.0);
    let residual = (&axis_operator * &state - &state * Complex64::new(j, 0.0))
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()));
    if residual > COHERENT_RESIDUAL {
        return Err(Error::NumericalConsistency(format!(
            "coherent state eigenvalue residual {residual:e} exceeds {COHERENT_RESIDUAL:e}"
        )));
    }
    Ok(state)
}

/// Reduced system state after coupling to a thermal product of 2j
/// spin-1/2 environment sites, including the free environment phases
/// e^{i delta_e_t k} that must cancel in the partial trace.
///
/// Enumerates all 2^(2j) z-basis configurations: a configuration with
/// n_up up sites carries weight cos^2(theta/2)^n_up sin^2(theta/2)^(2j-n_up)
/// and net magnetization k = n_up - j, and imprints the diagonal phase
/// e^{-i 2 g k sigma} on the system.
pub fn dilated_environment_with_free_phase(
    cat: &CatState,
    two_j: i32,
    theta: f64,
    g: f64,
    delta_e_t: f64,
) -> Result<DMatrix<Complex64>> {
    if !(1..=MAX_ENV_TWO_J).contains(&two_j) {
        return Err(Error::CostGuard(format!(
            "environment dilation enumerates 2^(2j) configurations; two_j = {two_j} outside 1..={MAX_ENV_TWO_J}"
        )));
    }
    let dim = cat.dim();
    let psi = cat.dense();
    let labels = cat.labels();
    let up_weight = (theta / 2.0).cos().powi(2);
    let down_weight = (theta / 2.0).sin().powi(2);
    let mut rho = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for mask in 0u32..(1u32 << two_j) {
        let n_up = mask.count_ones() as i32;
        let weight = up_weight.powi(n_up) * down_weight.powi(two_j - n_up);
        if weight == 0.0 {
            continue;
        }
        let k = f64::from(2 * n_up - two_j) / 2.0;
        let free_phase = Complex64::from_polar(1.0, delta_e_t * k);
        let branch = DVector::from_fn(dim, |a, _| {
            free_phase * Complex64::from_polar(1.0, -2.0 * g * k * labels[a].value()) * psi[a]
        });
        for row in 0..dim {
            for col in 0..dim {
                rho[(row, col)] += weight * branch[row] * branch[col].conj();
            }
        }
    }
    Ok(rho)
}

/// Reduced system state after the environment coupling, with the free
/// environment evolution switched off.
pub fn dilated_environment(
    cat: &CatState,
    two_j: i32,
    theta: f64,
    g: f64,
) -> Result<DMatrix<Complex64>> {
    dilated_environment_with_free_phase(cat, two_j, theta, g, 0.0)
}

/// Dense probe measurement: couple to the coherent probe state, rotate
/// the probe by e^{-i (pi/2) Jy}, and project on each probe magnetization.
///
/// Returns (p_m, conditional system state) in ascending m; outcomes with
/// probability at or below the floor carry no state.
pub fn dilated_probe(
    rho_prime: &DMatrix<Complex64>,
    two_j: i32,
    theta: f64,
    g: f64,
) -> Result<Vec<(f64, Option<DMatrix<Complex64>>)>> {
    if !(1..=MAX_PROBE_TWO_J).contains(&two_j) {
        return Err(Error::CostGuard(format!(
            "probe dilation works in the collective space; two_j = {two_j} outside 1..={MAX_PROBE_TWO_J}"
        )));
    }
    if rho_prime.nrows() != rho_prime.ncols() || rho_prime.nrows() == 0 {
        return Err(Error::Validation(format!(
            "system state must be square and nonempty, got {}x{}",
            rho_prime.nrows(),
            rho_prime.ncols()
        )));
    }
    let ns = rho_prime.nrows();
    let two_s = ns as i32 - 1;
    let np = (two_j + 1) as usize;
    let chi = coherent_probe_state(two_j, theta)?;
    let probe_rho = DMatrix::from_fn(np, np, |a, b| chi[a] * chi[b].conj());
    // joint index = system * np + probe
    let mut joint = rho_prime.kronecker(&probe_rho);
    let coupling = |idx: usize| -> Complex64 {
        let a = (idx / np) as i32;
        let b = (idx % np) as i32;
        let two_sigma = 2 * a - two_s;
        let two_m = 2 * b - two_j;
        Complex64::from_polar(1.0, -g * f64::from(two_sigma) * f64::from(two_m) / 2.0)
    };
    for row in 0..ns * np {
        for col in 0..ns * np {
            joint[(row, col)] *= coupling(row) * coupling(col).conj();
        }
    }
    let readout = DMatrix::identity(ns, ns)
        .kronecker(&wigner_rotation_y(two_j, std::f64::consts::FRAC_PI_2));
    let rotated = &readout * joint * readout.adjoint();
    let mut outcomes = Vec::with_capacity(np);
    for b in 0..np {
        let p: f64 = (0..ns).map(|a| rotated[(a * np + b, a * np + b)].re).sum();
        if p <= OUTCOME_FLOOR {
            outcomes.push((p.max(0.0), None));
            continue;
        }
        let conditional = DMatrix::from_fn(ns, ns, |row, col| {
            rotated[(row * np + b, col * np + b)] / p
        });
        outcomes.push((p, Some(conditional)));
    }
    Ok(outcomes)
}

/// sqrt of the cat-state expectation of a dense density matrix.
pub fn fidelity_dense(cat: &CatState, rho: &DMatrix<Complex64>) -> f64 {
    let psi = cat.dense();
    let mut overlap = Complex64::new(0.0, 0.0);
    for row in 0..rho.nrows() {
        for col in 0..rho.ncols() {
            overlap += psi[row].conj() * rho[(row, col)] * psi[col];
        }
    }
    overlap.re.max(0.0).sqrt()
}

/// Trace of rho^2 for a dense density matrix.
pub fn purity_dense(rho: &DMatrix<Complex64>) -> f64 {
    rho.iter().map(|z| z.norm_sqr()).sum()
}

/// Smallest eigenvalue of a Hermitian matrix, via the real symmetric
/// embedding [[X, -Y], [Y, X]] of X + iY.
pub fn min_eigenvalue_hermitian(matrix: &DMatrix<Complex64>) -> f64 {
    let n = matrix.nrows();
    let mut embedded = DMatrix::from_element(2 * n, 2 * n, 0.0f64);
    for row in 0..n {
        for col in 0..n {
            let z = 0.5 * (matrix[(row, col)] + matrix[(col, row)].conj());
            embedded[(row, col)] = z.re;
            embedded[(n + row, n + col)] = z.re;
            embedded[(row, n + col)] = -z.im;
            embedded[(n + row, col)] = z.im;
        }
    }
    embedded
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &x| acc.min(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        apply_environment, apply_probe_measurement, cat_coefficients, dephasing_kernel,
        probe_model,
    };
    use approx::assert_relative_eq;

    const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;
    const PI: f64 = std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        a.iter()
            .zip(b.iter())
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
    }

    #[test]
    fn rotation_by_zero_is_identity() {
        let u = wigner_rotation_y(3, 0.0);
        let diff = max_abs_diff(&u, &DMatrix::identity(4, 4));
        assert!(diff < 1e-14);
    }

    #[test]
    fn rotations_are_unitary() {
        for (two_j, angle) in [(1, PI), (2, 1.234), (5, PI / 2.0), (20, 2.8)] {
            let u = wigner_rotation_y(two_j, angle);
            let dim = (two_j + 1) as usize;
            let defect = max_abs_diff(&(&u * u.adjoint()), &DMatrix::identity(dim, dim));
            assert!(defect < 1e-12, "two_j={two_j} defect {defect:e}");
        }
    }

    #[test]
    fn half_turn_flips_the_z_component() {
        let u = wigner_rotation_y(1, PI);
        let jz = collective_jz(1);
        let flipped = u.adjoint() * &jz * &u;
        let diff = max_abs_diff(&flipped, &(-&jz));
        assert!(diff < 1e-12);
    }

    #[test]
    fn coherent_state_satisfies_its_eigenvalue_equation() {
        for (two_j, theta) in [(1, 0.1), (3, PI / 6.0), (8, 2.8), (20, 1.0)] {
            let state = coherent_probe_state(two_j, theta).unwrap();
            assert_relative_eq!(state.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn uncoupled_environment_leaves_the_cat_pure() {
        let cat = cat_coefficients(3, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        let rho = dilated_environment(&cat, 2, PI / 6.0, 0.0).unwrap();
        let psi = cat.dense();
        let projector = DMatrix::from_fn(4, 4, |a, b| psi[a] * psi[b].conj());
        assert!(max_abs_diff(&rho, &projector) < 1e-14);
    }

    #[test]
    fn aligned_environment_keeps_purity() {
        let cat = cat_coefficients(4, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        let rho = dilated_environment(&cat, 4, 0.0, 0.3).unwrap();
        assert_relative_eq!(purity_dense(&rho), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn free_environment_phases_cancel() {
        let cat = cat_coefficients(2, re(INV_SQRT2), Complex64::new(0.0, INV_SQRT2)).unwrap();
        let without = dilated_environment_with_free_phase(&cat, 3, 0.9, 0.3, 0.0).unwrap();
        let with = dilated_environment_with_free_phase(&cat, 3, 0.9, 0.3, 1.7).unwrap();
        assert!(max_abs_diff(&without, &with) < 1e-14);
    }

    #[test]
    fn environment_enumeration_matches_structured_model() {
        let cat = cat_coefficients(2, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        let kernel = dephasing_kernel(2, PI / 6.0, 0.3, 2).unwrap();
        let structured = apply_environment(&cat, &kernel).unwrap().dense();
        let dense = dilated_environment(&cat, 2, PI / 6.0, 0.3).unwrap();
        assert!(max_abs_diff(&structured, &dense) < 1e-12);
    }

    #[test]
    fn environment_guard_rejects_large_spins() {
        let cat = cat_coefficients(2, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        match dilated_environment(&cat, 12, PI / 6.0, 0.3) {
            Err(Error::CostGuard(_)) => {}
            other => panic!("expected cost guard, got {other:?}"),
        }
    }

    #[test]
    fn probe_probabilities_are_normalized() {
        let cat = cat_coefficients(3, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        let rho = dilated_environment(&cat, 2, PI / 6.0, 0.3).unwrap();
        let outcomes = dilated_probe(&rho, 2, PI / 6.0, 0.3).unwrap();
        let total: f64 = outcomes.iter().map(|(p, _)| p).sum();
        assert_relative_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uncoupled_probe_learns_and_disturbs_nothing() {
        let cat = cat_coefficients(3, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        let rho = dilated_environment(&cat, 2, PI / 6.0, 0.3).unwrap();
        let outcomes = dilated_probe(&rho, 2, PI / 6.0, 0.0).unwrap();
        for (p, state) in &outcomes {
            if let Some(state) = state {
                assert!(max_abs_diff(state, &rho) < 1e-12, "p = {p}");
            }
        }
    }

    #[test]
    fn probe_matches_structured_model_at_a_spot_point() {
        let cat = cat_coefficients(2, re(INV_SQRT2), re(INV_SQRT2)).unwrap();
        let kernel = dephasing_kernel(2, PI / 6.0, 0.3, 2).unwrap();
        let structured = apply_environment(&cat, &kernel).unwrap();
        let probe = probe_model(2, PI / 6.0, 0.3, 2).unwrap();
        let dense_input = dilated_environment(&cat, 2, PI / 6.0, 0.3).unwrap();
        let outcomes = dilated_probe(&dense_input, 2, PI / 6.0, 0.3).unwrap();
        for (slot, (p_dense, state_dense)) in outcomes.iter().enumerate() {
            let two_m = 2 * slot as i32 - 2;
            let (p, post) = apply_probe_measurement(&structured, &probe, two_m).unwrap();
            assert_relative_eq!(p, *p_dense, epsilon = 1e-12);
            let state_dense = state_dense.as_ref().unwrap();
            assert!(max_abs_diff(&post.dense(), state_dense) < 1e-12);
        }
    }

    #[test]
    fn joint_states_stay_positive() {
        let cat = cat_coefficients(3, re(INV_SQRT2), Complex64::new(0.0, INV_SQRT2)).unwrap();
        let rho = dilated_environment(&cat, 3, 2.8, 1.0).unwrap();
        assert!(min_eigenvalue_hermitian(&rho) > -1e-10);
        let outcomes = dilated_probe(&rho, 3, 2.8, 1.0).unwrap();
        for (_, state) in outcomes.iter() {
            if let Some(state) = state {
                assert!(min_eigenvalue_hermitian(state) > -1e-10);
            }
        }
    }
}
