//! Dense-dilation ground truth against the structured analytic route,
//! over the full small-system grid.
//!
//! The dilation enumerates environment configurations and evolves the
//! joint probe space densely; it never touches the analytic kernels, so
//! elementwise agreement here validates the kernel and probe amplitude
//! constructions end to end.

use nalgebra::DMatrix;
use num_complex::Complex64;
use spincat::oracle::{
    dilated_environment, dilated_environment_with_free_phase, dilated_probe, fidelity_dense,
    min_eigenvalue_hermitian, purity_dense,
};
use spincat::{
    apply_environment, apply_probe_measurement, cat_coefficients, dephasing_kernel,
    fidelity_to_cat, probe_model, purity, Error,
};

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;
const PI: f64 = std::f64::consts::PI;

fn amplitude_pairs() -> [(Complex64, Complex64); 3] {
    [
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        (
            Complex64::new(INV_SQRT2, 0.0),
            Complex64::new(INV_SQRT2, 0.0),
        ),
        (
            Complex64::new(INV_SQRT2, 0.0),
            Complex64::new(0.0, INV_SQRT2),
        ),
    ]
}

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}

#[test]
fn environment_and_probe_agree_with_dense_dilation_on_the_grid() {
    let mut points = 0usize;
    for two_s in [1, 2, 3, 4] {
        for two_j in [1, 2, 3] {
            for theta in [0.1, PI / 6.0, PI / 2.0, 2.8] {
                for g in [0.0, 0.05, 0.3, 1.0] {
                    for (amp_plus, amp_minus) in amplitude_pairs() {
                        check_point(two_s, two_j, theta, g, amp_plus, amp_minus);
                        points += 1;
                    }
                }
            }
        }
    }
    assert_eq!(points, 576);
}

fn check_point(
    two_s: i32,
    two_j: i32,
    theta: f64,
    g: f64,
    amp_plus: Complex64,
    amp_minus: Complex64,
) {
    let context = format!(
        "two_s={two_s} two_j={two_j} theta={theta} g={g} c=({amp_plus}, {amp_minus})"
    );
    let cat = cat_coefficients(two_s, amp_plus, amp_minus).unwrap();

    let kernel = dephasing_kernel(two_j, theta, g, two_s).unwrap();
    let structured = apply_environment(&cat, &kernel).unwrap();
    let dense = dilated_environment(&cat, two_j, theta, g).unwrap();

    let env_gap = max_abs_diff(&structured.dense(), &dense);
    assert!(env_gap < 1e-10, "{context}: environment gap {env_gap:e}");

    let trace: f64 = (0..dense.nrows()).map(|i| dense[(i, i)].re).sum();
    assert!((trace - 1.0).abs() < 1e-10, "{context}: trace {trace}");
    let min_eig = min_eigenvalue_hermitian(&dense);
    assert!(min_eig > -1e-10, "{context}: min eigenvalue {min_eig:e}");

    let f_gap = (fidelity_to_cat(&structured).unwrap() - fidelity_dense(&cat, &dense)).abs();
    assert!(f_gap < 1e-10, "{context}: fidelity gap {f_gap:e}");
    let p_gap = (purity(&structured).unwrap() - purity_dense(&dense)).abs();
    assert!(p_gap < 1e-10, "{context}: purity gap {p_gap:e}");

    let probe = probe_model(two_j, theta, g, two_s).unwrap();
    let outcomes = dilated_probe(&dense, two_j, theta, g).unwrap();
    let mut total = 0.0;
    for (slot, (p_dense, state_dense)) in outcomes.iter().enumerate() {
        total += p_dense;
        let two_m = 2 * slot as i32 - two_j;
        match apply_probe_measurement(&structured, &probe, two_m) {
            Ok((p, post)) => {
                assert!(
                    (p - p_dense).abs() < 1e-10,
                    "{context} m={two_m}: p {p} vs {p_dense}"
                );
                let state_dense = state_dense
                    .as_ref()
                    .unwrap_or_else(|| panic!("{context} m={two_m}: missing dense state"));
                let state_gap = max_abs_diff(&post.dense(), state_dense);
                assert!(state_gap < 1e-10, "{context} m={two_m}: state gap {state_gap:e}");
                let f_gap =
                    (fidelity_to_cat(&post).unwrap() - fidelity_dense(&cat, state_dense)).abs();
                assert!(f_gap < 1e-10, "{context} m={two_m}: fidelity gap {f_gap:e}");
                let p_gap = (purity(&post).unwrap() - purity_dense(state_dense)).abs();
                assert!(p_gap < 1e-10, "{context} m={two_m}: purity gap {p_gap:e}");
            }
            Err(Error::OutcomeImpossible { .. }) => {
                assert!(
                    *p_dense < 1e-12,
                    "{context} m={two_m}: structured impossible, dense p {p_dense:e}"
                );
            }
            Err(e) => panic!("{context} m={two_m}: {e}"),
        }
    }
    assert!((total - 1.0).abs() < 1e-10, "{context}: outcome total {total}");
}

#[test]
fn benchmark_point_matches_within_tight_tolerance() {
    let cat = cat_coefficients(2, Complex64::new(INV_SQRT2, 0.0), Complex64::new(INV_SQRT2, 0.0))
        .unwrap();
    let kernel = dephasing_kernel(2, PI / 6.0, 0.3, 2).unwrap();
    let structured = apply_environment(&cat, &kernel).unwrap();
    let dense = dilated_environment(&cat, 2, PI / 6.0, 0.3).unwrap();
    let gap = max_abs_diff(&structured.dense(), &dense);
    assert!(gap < 1e-12, "gap {gap:e}");
}

#[test]
fn free_environment_evolution_never_reaches_the_reduced_state() {
    for (two_s, two_j, theta, g) in [(1, 1, 0.1, 0.05), (2, 3, PI / 6.0, 0.3), (4, 2, 2.8, 1.0)] {
        let cat = cat_coefficients(
            two_s,
            Complex64::new(INV_SQRT2, 0.0),
            Complex64::new(0.0, INV_SQRT2),
        )
        .unwrap();
        let without = dilated_environment_with_free_phase(&cat, two_j, theta, g, 0.0).unwrap();
        let with = dilated_environment_with_free_phase(&cat, two_j, theta, g, 1.7).unwrap();
        let gap = max_abs_diff(&without, &with);
        assert!(gap < 1e-14, "two_s={two_s} two_j={two_j}: gap {gap:e}");
    }
}
