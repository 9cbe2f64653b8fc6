//! End-to-end checks of the binary: flag handling, formatting, parse-back,
//! and byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let output = run(args);
    assert!(
        output.status.success(),
        "`{}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf-8 output")
}

fn value_of(text: &str, key: &str) -> f64 {
    let prefix = format!("{key}=");
    text.lines()
        .find_map(|line| line.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}=` line in:\n{text}"))
        .parse()
        .unwrap_or_else(|_| panic!("unparsable `{key}` value"))
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["fig1", "--s-max", "5"],
        vec!["fig2", "--s", "4", "--j", "3"],
        vec!["headline", "--s", "5", "--j", "3"],
        vec!["estimate", "--delta-e-over-kt", "1.3862943611198906"],
        vec![
            "estimate-env", "--t0", "1", "--p0-prime", "0.875", "--s", "50", "--theta", "0.5",
        ],
        vec!["asymptotic", "--s", "1e8", "--j", "1e8", "--g", "1e-8", "--theta", "0.01"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success(), "`{}` failed", args.join(" "));
        assert_eq!(
            first.stdout,
            second.stdout,
            "non-deterministic output from `{}`",
            args.join(" ")
        );
    }
}

#[test]
fn fig1_rows_parse_back_with_ascending_labels() {
    let text = stdout_of(&["fig1", "--s-max", "5"]);
    let mut expected_two_s = 1;
    let mut saw_header = false;
    for line in text.lines() {
        if line.starts_with('#') {
            continue;
        }
        if !saw_header {
            assert_eq!(line, "two_s,s,F_prime,P_prime");
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4, "bad row `{line}`");
        let two_s: i32 = fields[0].parse().expect("two_s label");
        assert_eq!(two_s, expected_two_s, "rows out of order");
        let s: f64 = fields[1].parse().expect("s value");
        assert_eq!(s, f64::from(two_s) / 2.0);
        let fidelity: f64 = fields[2].parse().expect("F field");
        let purity: f64 = fields[3].parse().expect("P field");
        assert!(fidelity > 0.0 && fidelity <= 1.0 + 1e-12);
        assert!(purity > 0.0 && purity <= 1.0 + 1e-12);
        expected_two_s += 1;
    }
    assert_eq!(expected_two_s, 11, "expected rows up to two_s=10");
}

#[test]
fn zero_coupling_rows_are_exactly_unit() {
    let text = stdout_of(&["fig1", "--s-max", "3", "--g", "0"]);
    for line in text.lines().skip(2) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[2], "1.000000000000e+00", "row `{line}`");
        assert_eq!(fields[3], "1.000000000000e+00", "row `{line}`");
    }
}

#[test]
fn exact_commands_refuse_oversized_labels() {
    for args in [
        vec!["fig2", "--two-s", "4002"],
        vec!["fig2", "--two-j", "4002"],
        vec!["headline", "--two-s", "4002"],
        vec!["fig1", "--s-max", "2500"],
    ] {
        let output = run(&args);
        assert!(!output.status.success(), "`{}` should refuse", args.join(" "));
        let stderr = String::from_utf8_lossy(&output.stderr);
        assert!(
            stderr.contains("asymptotic"),
            "refusal should point at the asymptotic subcommand: {stderr}"
        );
    }
}

#[test]
fn half_integer_flags_match_twice_integer_flags() {
    let via_literal = stdout_of(&["fig2", "--s", "2.5", "--j", "1.5"]);
    let via_label = stdout_of(&["fig2", "--two-s", "5", "--two-j", "3"]);
    assert_eq!(via_literal, via_label);

    let output = run(&["fig2", "--s", "2.3"]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("half-integer"));

    let conflicting = run(&["fig2", "--s", "3", "--two-s", "6"]);
    assert!(!conflicting.status.success(), "conflicting flags must be rejected");
}

#[test]
fn estimate_inverts_the_thermal_ratio() {
    let text = stdout_of(&["estimate", "--delta-e-over-kt", "1.3862943611198906"]);
    let theta = value_of(&text, "theta");
    assert!((theta - 0.9272952180016122).abs() <= 1e-12, "theta {theta}");
    let tan_sq = value_of(&text, "tan_sq_half_theta");
    assert!((tan_sq - 0.25).abs() <= 1e-12, "tan^2 {tan_sq}");

    let split = stdout_of(&["estimate", "--delta-e", "2.772588722239781", "--temperature", "2"]);
    assert_eq!(text, split, "ratio and split forms disagree");

    let neither = run(&["estimate"]);
    assert!(!neither.status.success());
}

#[test]
fn estimate_env_reports_the_inverted_parameters() {
    let text = stdout_of(&[
        "estimate-env",
        "--t0", "1",
        "--p0-prime", "0.875",
        "--s", "50",
        "--theta", "0.5235987755982988",
        "--t-e", "2",
    ]);
    let j = value_of(&text, "j");
    assert!((j - 13.159472534785811).abs() <= 1e-9, "j {j}");
    assert_eq!(value_of(&text, "two_j_rounded"), 26.0);
    let g0 = value_of(&text, "g0");
    assert!((g0 * g0 * j - 0.005).abs() <= 1e-12, "g0^2 j {}", g0 * g0 * j);
    let g_at = value_of(&text, "g_at_t_e");
    assert!((g_at - 2.0 * g0).abs() <= 1e-15, "linear extrapolation");
}

#[test]
fn asymptotic_reports_the_recovery_window() {
    let text = stdout_of(&[
        "asymptotic", "--s", "1e8", "--j", "1e8", "--g", "1e-8", "--theta", "0.01",
    ]);
    assert!(text.contains("regime=in-window"), "{text}");
    assert!(value_of(&text, "clt_ln_F_prime_sq") < -1e8);
    assert_eq!(value_of(&text, "clt_F_prime_sq"), 0.0, "underflow prints as zero");
}

#[test]
fn out_flag_writes_the_stdout_bytes() {
    let path = std::env::temp_dir().join(format!("spincat-fig1-{}.csv", std::process::id()));
    let in_stream = stdout_of(&["fig1", "--s-max", "3"]);
    let status = run(&["fig1", "--s-max", "3", "--out", path.to_str().unwrap()]);
    assert!(status.status.success());
    let on_disk = std::fs::read_to_string(&path).expect("output file");
    std::fs::remove_file(&path).ok();
    assert_eq!(in_stream, on_disk);
}

#[test]
fn oracle_check_passes_on_the_default_grid() {
    let output = run(&["oracle-check"]);
    assert!(output.status.success(), "oracle check must pass");
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("status=ok"), "{text}");
    for key in [
        "environment_gap",
        "probability_gap",
        "state_gap",
        "fidelity_gap",
        "purity_gap",
        "trace_gap",
        "negative_eigenvalue",
        "free_phase_gap",
    ] {
        let residual = value_of(&text, key);
        assert!(residual < 1e-10, "{key} residual {residual:e}");
    }
}

#[test]
fn headline_keeps_purity_under_the_average_unitary() {
    let text = stdout_of(&["headline", "--s", "5", "--j", "3"]);
    let p_prime = value_of(&text, "P_prime");
    let p_u = value_of(&text, "P_u");
    assert!((p_prime - p_u).abs() <= 1e-14, "P_u {p_u} vs P_prime {p_prime}");
    let p0 = value_of(&text, "P0");
    assert!(p0 > p_prime, "conditioned recovery should gain purity");
}
