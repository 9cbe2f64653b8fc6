//! Deterministic command-line surface for the spin-cat dephasing and
//! recovery model: figure sweeps, headline observables, environment
//! estimation, closed-form asymptotics, and the dense-oracle self-check.
//!
//! Output is plain CSV or `key=value` text with `#` comment lines,
//! formatted so identical invocations are byte-identical.

mod format;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use format::{half_integer_label, parse_complex, sci, sci_opt};
use spincat::oracle::{
    dilated_environment, dilated_environment_with_free_phase, dilated_probe, fidelity_dense,
    min_eigenvalue_hermitian, purity_dense,
};
use spincat::{
    apply_average_unitary, apply_environment, apply_probe_measurement, cat_coefficients,
    cat_moments, clt_fidelity_squared, clt_log_fidelity_squared, dephasing_kernel,
    env_from_decay, fidelity_to_cat, outcome_table, perturbative_predictions, probe_model,
    purity, recovery_report, regime_check, scaling_laws, theta_from_thermal, CatState, Error,
};

/// Exact sums cost O((2s+1)^2 (2j+1)); beyond this label the asymptotic
/// forms are the supported route.
const EXACT_LABEL_CEILING: i32 = 4000;

const DEFAULT_TWO_S: i32 = 100;
const DEFAULT_TWO_J: i32 = 100;
const SQRT_HALF: &str = "0.7071067811865476,0";

#[derive(Parser)]
#[command(
    name = "spincat",
    version,
    about = "Dephasing of a spin-cat state by a weak collective environment \
             and its probabilistic recovery by a reversing measurement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep post-dephasing fidelity and purity over the system spin.
    Fig1(Fig1Args),
    /// Tabulate outcome probabilities and conditional recovery per outcome.
    Fig2(Fig2Args),
    /// One-point summary: exact observables next to closed-form predictions.
    Headline(Fig2Args),
    /// Mixing angle of a thermal two-level environment.
    Estimate(EstimateArgs),
    /// Invert a measured fidelity collapse into environment parameters.
    EstimateEnv(EstimateEnvArgs),
    /// Closed-form fidelity, regime window, and scaling laws at large scale.
    Asymptotic(AsymptoticArgs),
    /// Compare the analytic pipeline against dense dilations on a small grid.
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct SystemSpin {
    /// System spin as the twice-integer label 2s.
    #[arg(long = "two-s", value_name = "2S", conflicts_with = "s")]
    two_s: Option<i32>,
    /// System spin s as an integer or half-integer literal.
    #[arg(long, value_name = "S")]
    s: Option<f64>,
}

impl SystemSpin {
    fn resolve(&self, default: i32) -> Result<i32> {
        match (self.two_s, self.s) {
            (Some(label), _) => {
                ensure!(label >= 1, "--two-s must be at least 1");
                Ok(label)
            }
            (None, Some(value)) => half_integer_label(value, "--s"),
            (None, None) => Ok(default),
        }
    }
}

#[derive(Args)]
struct EnvSpin {
    /// Environment spin as the twice-integer label 2j.
    #[arg(long = "two-j", value_name = "2J", conflicts_with = "j")]
    two_j: Option<i32>,
    /// Environment spin j as an integer or half-integer literal.
    #[arg(long, value_name = "J")]
    j: Option<f64>,
}

impl EnvSpin {
    fn resolve(&self, default: i32) -> Result<i32> {
        match (self.two_j, self.j) {
            (Some(label), _) => {
                ensure!(label >= 1, "--two-j must be at least 1");
                Ok(label)
            }
            (None, Some(value)) => half_integer_label(value, "--j"),
            (None, None) => Ok(default),
        }
    }
}

#[derive(Args)]
struct CouplingArgs {
    /// Accumulated coupling phase of the interaction.
    #[arg(long, default_value_t = 0.01)]
    g: f64,
    /// Environment mixing angle in radians.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6)]
    theta: f64,
}

#[derive(Args)]
struct CatArgs {
    /// Amplitude of the all-up branch, as `re,im`.
    #[arg(long = "c-plus", value_name = "RE,IM", default_value = SQRT_HALF)]
    c_plus: String,
    /// Amplitude of the all-down branch, as `re,im`.
    #[arg(long = "c-minus", value_name = "RE,IM", default_value = SQRT_HALF)]
    c_minus: String,
}

impl CatArgs {
    fn amplitudes(&self) -> Result<(Complex64, Complex64)> {
        Ok((parse_complex(&self.c_plus)?, parse_complex(&self.c_minus)?))
    }
}

#[derive(Args)]
struct OutputArg {
    /// Write output to this path instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig1Args {
    /// Smallest swept spin, an integer or half-integer literal.
    #[arg(long = "s-min", default_value_t = 0.5)]
    s_min: f64,
    /// Largest swept spin, an integer or half-integer literal.
    #[arg(long = "s-max", default_value_t = 100.0)]
    s_max: f64,
    #[command(flatten)]
    env: EnvSpin,
    #[command(flatten)]
    coupling: CouplingArgs,
    #[command(flatten)]
    cat: CatArgs,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct Fig2Args {
    #[command(flatten)]
    system: SystemSpin,
    #[command(flatten)]
    env: EnvSpin,
    #[command(flatten)]
    coupling: CouplingArgs,
    #[command(flatten)]
    cat: CatArgs,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct EstimateArgs {
    /// Level-splitting to thermal-energy ratio dE/(kB T).
    #[arg(
        long = "delta-e-over-kt",
        value_name = "RATIO",
        conflicts_with_all = ["delta_e", "temperature"]
    )]
    ratio: Option<f64>,
    /// Level splitting of one environment spin, in energy units.
    #[arg(long = "delta-e", value_name = "ENERGY", requires = "temperature")]
    delta_e: Option<f64>,
    /// Temperature in the same energy units (kB folded in).
    #[arg(long, value_name = "ENERGY", requires = "delta_e")]
    temperature: Option<f64>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct EstimateEnvArgs {
    /// Time of the observed fidelity collapse.
    #[arg(long)]
    t0: f64,
    /// Purity measured at the collapse time.
    #[arg(long = "p0-prime", value_name = "P0")]
    p0_prime: f64,
    /// System spin (a real; the inversion is not label-exact).
    #[arg(long)]
    s: f64,
    /// Environment mixing angle in radians.
    #[arg(long)]
    theta: f64,
    /// Also report the coupling extrapolated to this interaction time.
    #[arg(long = "t-e", value_name = "TIME")]
    t_e: Option<f64>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct AsymptoticArgs {
    /// System spin (a real; scales like 1e8 are the intended range).
    #[arg(long)]
    s: f64,
    /// Environment spin (a real).
    #[arg(long)]
    j: f64,
    /// Accumulated coupling phase.
    #[arg(long)]
    g: f64,
    /// Environment mixing angle in radians.
    #[arg(long)]
    theta: f64,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[command(flatten)]
    output: OutputArg,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Fig1(args) => emit(cmd_fig1(&args)?, &args.output),
        Command::Fig2(args) => emit(cmd_fig2(&args)?, &args.output),
        Command::Headline(args) => emit(cmd_headline(&args)?, &args.output),
        Command::Estimate(args) => emit(cmd_estimate(&args)?, &args.output),
        Command::EstimateEnv(args) => emit(cmd_estimate_env(&args)?, &args.output),
        Command::Asymptotic(args) => emit(cmd_asymptotic(&args)?, &args.output),
        Command::OracleCheck(args) => {
            let (text, failures) = cmd_oracle_check();
            emit(text, &args.output)?;
            if !failures.is_empty() {
                bail!("oracle check failed: {}", failures.join(", "));
            }
            Ok(())
        }
    }
}

fn emit(text: String, output: &OutputArg) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .context("writing standard output")?;
            Ok(())
        }
    }
}

fn ensure_exact_scale(two_s: i32, two_j: i32) -> Result<()> {
    ensure!(
        two_s <= EXACT_LABEL_CEILING && two_j <= EXACT_LABEL_CEILING,
        "exact sums refuse two_s or two_j above {EXACT_LABEL_CEILING} \
         (got two_s={two_s}, two_j={two_j}); use the `asymptotic` subcommand"
    );
    Ok(())
}

fn build_cat(two_s: i32, cat: &CatArgs) -> Result<CatState> {
    let (plus, minus) = cat.amplitudes()?;
    Ok(cat_coefficients(two_s, plus, minus)?)
}

fn cmd_fig1(args: &Fig1Args) -> Result<String> {
    let two_j = args.env.resolve(DEFAULT_TWO_J)?;
    let two_min = half_integer_label(args.s_min, "--s-min")?;
    let two_max = half_integer_label(args.s_max, "--s-max")?;
    ensure!(two_min <= two_max, "empty sweep: --s-min exceeds --s-max");
    ensure_exact_scale(two_max, two_j)?;
    let g = args.coupling.g;
    let theta = args.coupling.theta;

    let mut text = format!(
        "# two_j={two_j} g={} theta={}\ntwo_s,s,F_prime,P_prime\n",
        sci(g),
        sci(theta)
    );
    for two_s in two_min..=two_max {
        let cat = build_cat(two_s, &args.cat)?;
        let kernel = dephasing_kernel(two_j, theta, g, two_s)?;
        let rho = apply_environment(&cat, &kernel)?;
        let fid = fidelity_to_cat(&rho)?;
        let pur = purity(&rho)?;
        writeln!(
            text,
            "{two_s},{},{},{}",
            sci(f64::from(two_s) / 2.0),
            sci(fid),
            sci(pur)
        )
        .expect("string write");
    }
    Ok(text)
}

fn cmd_fig2(args: &Fig2Args) -> Result<String> {
    let two_s = args.system.resolve(DEFAULT_TWO_S)?;
    let two_j = args.env.resolve(DEFAULT_TWO_J)?;
    ensure_exact_scale(two_s, two_j)?;
    let g = args.coupling.g;
    let theta = args.coupling.theta;

    let cat = build_cat(two_s, &args.cat)?;
    let kernel = dephasing_kernel(two_j, theta, g, two_s)?;
    let rho_prime = apply_environment(&cat, &kernel)?;
    let probe = probe_model(two_j, theta, g, two_s)?;
    let table = outcome_table(&rho_prime, &probe, &cat)?;

    let mut text = format!(
        "# two_s={two_s} two_j={two_j} g={} theta={}\ntwo_m,m,p_m,F_m,P_m\n",
        sci(g),
        sci(theta)
    );
    for (i, outcome) in table.outcomes.iter().enumerate() {
        writeln!(
            text,
            "{},{},{},{},{}",
            outcome.two_value,
            sci(outcome.value()),
            sci(table.p[i]),
            sci_opt(table.fidelity[i]),
            sci_opt(table.purity[i])
        )
        .expect("string write");
    }
    writeln!(text, "# total_p={}", sci(table.total_probability())).expect("string write");
    writeln!(text, "# mean_F={}", sci(table.mean_fidelity())).expect("string write");
    writeln!(text, "# mean_P={}", sci(table.mean_purity())).expect("string write");
    Ok(text)
}

fn cmd_headline(args: &Fig2Args) -> Result<String> {
    let two_s = args.system.resolve(DEFAULT_TWO_S)?;
    let two_j = args.env.resolve(DEFAULT_TWO_J)?;
    ensure_exact_scale(two_s, two_j)?;
    ensure!(
        two_j % 2 == 0,
        "the central outcome m=0 needs an integer probe spin (even two_j, got {two_j})"
    );
    let g = args.coupling.g;
    let theta = args.coupling.theta;
    let s = f64::from(two_s) / 2.0;
    let j = f64::from(two_j) / 2.0;

    let cat = build_cat(two_s, &args.cat)?;
    let kernel = dephasing_kernel(two_j, theta, g, two_s)?;
    let rho_prime = apply_environment(&cat, &kernel)?;
    let probe = probe_model(two_j, theta, g, two_s)?;
    let (p0, rho_zero) = apply_probe_measurement(&rho_prime, &probe, 0)?;
    let rho_unitary = apply_average_unitary(&rho_prime);
    let report = recovery_report(&rho_prime, &rho_zero, &cat)?;
    let table = outcome_table(&rho_prime, &probe, &cat)?;

    let mut text = format!(
        "# exact sums at two_s={two_s} two_j={two_j} g={} theta={}\n",
        sci(g),
        sci(theta)
    );
    let mut kv = |key: &str, value: String| {
        writeln!(text, "{key}={value}").expect("string write");
    };
    kv("F_prime", sci(report.f_before));
    kv("P_prime", sci(report.p_before));
    kv("p0", sci(p0));
    kv("F0", sci(report.f_after));
    kv("P0", sci(report.p_after));
    kv("F_u", sci(fidelity_to_cat(&rho_unitary)?));
    kv("P_u", sci(purity(&rho_unitary)?));
    kv("R_f", sci_opt(report.r_f));
    kv("R_p", sci_opt(report.r_p));
    kv("decoherence_gain", sci_opt(report.decoherence_gain()));
    kv("mean_F", sci(table.mean_fidelity()));
    kv("mean_P", sci(table.mean_purity()));
    kv("total_p", sci(table.total_probability()));

    text.push_str("# asymptotic closed forms\n");
    let clt_sq = clt_fidelity_squared(s, j, theta, g);
    let regime = regime_check(s, j, theta, g);
    let laws = scaling_laws(s, j, theta, g);
    let mut kv = |key: &str, value: String| {
        writeln!(text, "{key}={value}").expect("string write");
    };
    kv("clt_F_prime_sq", sci(clt_sq));
    kv("clt_F_prime", sci(clt_sq.sqrt()));
    kv("s_lower", sci(regime.s_lower));
    kv("s_upper", sci(regime.s_upper));
    kv("regime", regime.classification.to_string());
    kv("purity_loss_second_order", sci(laws.purity_loss_second_order));
    kv(
        "conditioned_fidelity_sq_second_order",
        sci(laws.conditioned_fidelity_sq_second_order),
    );
    kv(
        "mean_fidelity_sq_second_order",
        sci(laws.mean_fidelity_sq_second_order),
    );
    kv("purity_gain_fourth_order", sci(laws.purity_gain_fourth_order));
    kv(
        "recovery_ratio_second_order",
        sci(laws.recovery_ratio_second_order),
    );

    text.push_str("# perturbative channel predictions\n");
    let moments = cat_moments(&cat);
    let predictions = perturbative_predictions(two_s, two_j, theta, g, &moments);
    let mut kv = |key: &str, value: String| {
        writeln!(text, "{key}={value}").expect("string write");
    };
    kv("purity_prediction", sci(predictions.purity_second_order));
    kv(
        "unitary_fidelity_sq_prediction",
        sci(predictions.unitary_fidelity_sq_second_order),
    );
    kv(
        "reversed_fidelity_sq_prediction",
        sci(predictions.reversed_fidelity_sq_second_order),
    );
    kv(
        "outcome_probability_prediction",
        sci(predictions.outcome_probability_second_order),
    );
    kv(
        "fidelity_gap_prediction",
        sci(predictions.fidelity_gap_fourth_order),
    );
    kv(
        "purity_gain_prediction",
        sci(predictions.purity_gain_fourth_order),
    );
    kv(
        "recovery_ratio_prediction",
        sci(predictions.recovery_ratio_second_order),
    );
    kv("in_regime", predictions.in_regime.to_string());
    Ok(text)
}

fn cmd_estimate(args: &EstimateArgs) -> Result<String> {
    let theta = match (args.ratio, args.delta_e, args.temperature) {
        (Some(ratio), None, None) => theta_from_thermal(ratio, 1.0)?,
        (None, Some(delta_e), Some(temperature)) => theta_from_thermal(delta_e, temperature)?,
        _ => bail!("provide --delta-e-over-kt, or --delta-e together with --temperature"),
    };
    let tan_half = (theta / 2.0).tan();
    Ok(format!(
        "theta={}\ntan_sq_half_theta={}\n",
        sci(theta),
        sci(tan_half * tan_half)
    ))
}

fn cmd_estimate_env(args: &EstimateEnvArgs) -> Result<String> {
    let estimate = env_from_decay(args.t0, args.p0_prime, args.s, args.theta)?;
    let mut text = String::new();
    writeln!(text, "theta={}", sci(estimate.theta)).expect("string write");
    writeln!(text, "j={}", sci(estimate.j)).expect("string write");
    writeln!(text, "two_j_rounded={}", estimate.two_j_rounded).expect("string write");
    writeln!(text, "g0={}", sci(estimate.g0)).expect("string write");
    writeln!(text, "t0={}", sci(estimate.t0)).expect("string write");
    if let Some(t_e) = args.t_e {
        writeln!(text, "g_at_t_e={}", sci(estimate.coupling_at(t_e))).expect("string write");
    }
    Ok(text)
}

fn cmd_asymptotic(args: &AsymptoticArgs) -> Result<String> {
    ensure!(args.s > 0.0 && args.j > 0.0, "--s and --j must be positive");
    let clt_sq = clt_fidelity_squared(args.s, args.j, args.theta, args.g);
    let regime = regime_check(args.s, args.j, args.theta, args.g);
    let laws = scaling_laws(args.s, args.j, args.theta, args.g);
    let mut text = String::new();
    let mut kv = |key: &str, value: String| {
        writeln!(text, "{key}={value}").expect("string write");
    };
    kv("clt_F_prime_sq", sci(clt_sq));
    kv("clt_F_prime", sci(clt_sq.sqrt()));
    kv(
        "clt_ln_F_prime_sq",
        sci(clt_log_fidelity_squared(args.s, args.j, args.theta, args.g)),
    );
    kv("s_lower", sci(regime.s_lower));
    kv("s_upper", sci(regime.s_upper));
    kv("regime", regime.classification.to_string());
    kv("purity_loss_second_order", sci(laws.purity_loss_second_order));
    kv(
        "conditioned_fidelity_sq_second_order",
        sci(laws.conditioned_fidelity_sq_second_order),
    );
    kv(
        "mean_fidelity_sq_second_order",
        sci(laws.mean_fidelity_sq_second_order),
    );
    kv("purity_gain_fourth_order", sci(laws.purity_gain_fourth_order));
    kv(
        "recovery_ratio_second_order",
        sci(laws.recovery_ratio_second_order),
    );
    Ok(text)
}

struct ResidualTracker {
    name: &'static str,
    tolerance: f64,
    worst: f64,
}

impl ResidualTracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
        }
    }

    fn record(&mut self, residual: f64) {
        if residual > self.worst {
            self.worst = residual;
        }
    }

    fn failed(&self) -> bool {
        self.worst > self.tolerance
    }
}

fn cmd_oracle_check() -> (String, Vec<String>) {
    const GRID_TWO_S: [i32; 4] = [1, 2, 3, 4];
    const GRID_TWO_J: [i32; 3] = [1, 2, 3];
    let thetas = [0.1, std::f64::consts::FRAC_PI_6, std::f64::consts::FRAC_PI_2, 2.8];
    let couplings = [0.0, 0.05, 0.3, 1.0];
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let amplitude_pairs = [
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        (
            Complex64::new(inv_sqrt2, 0.0),
            Complex64::new(inv_sqrt2, 0.0),
        ),
        (
            Complex64::new(inv_sqrt2, 0.0),
            Complex64::new(0.0, inv_sqrt2),
        ),
    ];

    let mut environment_gap = ResidualTracker::new("environment_gap", 1e-10);
    let mut probability_gap = ResidualTracker::new("probability_gap", 1e-10);
    let mut state_gap = ResidualTracker::new("state_gap", 1e-10);
    let mut fidelity_gap = ResidualTracker::new("fidelity_gap", 1e-10);
    let mut purity_gap = ResidualTracker::new("purity_gap", 1e-10);
    let mut trace_gap = ResidualTracker::new("trace_gap", 1e-10);
    let mut eigen_floor = ResidualTracker::new("negative_eigenvalue", 1e-10);
    let mut free_phase_gap = ResidualTracker::new("free_phase_gap", 1e-14);

    for two_s in GRID_TWO_S {
        for two_j in GRID_TWO_J {
            for &theta in &thetas {
                for &g in &couplings {
                    for &(plus, minus) in &amplitude_pairs {
                        let cat = cat_coefficients(two_s, plus, minus)
                            .expect("grid amplitudes are normalized");
                        let kernel = dephasing_kernel(two_j, theta, g, two_s)
                            .expect("grid parameters are valid");
                        let structured =
                            apply_environment(&cat, &kernel).expect("environment applies");
                        let dense = dilated_environment(&cat, two_j, theta, g)
                            .expect("grid dilation is in bounds");

                        let dense_structured = structured.dense();
                        environment_gap.record(max_entry_gap(&dense_structured, &dense));
                        let trace: f64 = (0..dense.nrows()).map(|i| dense[(i, i)].re).sum();
                        trace_gap.record((trace - 1.0).abs());
                        eigen_floor.record((-min_eigenvalue_hermitian(&dense)).max(0.0));
                        fidelity_gap.record(
                            (fidelity_to_cat(&structured).expect("fidelity")
                                - fidelity_dense(&cat, &dense))
                            .abs(),
                        );
                        purity_gap.record(
                            (purity(&structured).expect("purity") - purity_dense(&dense)).abs(),
                        );

                        let with_phase = dilated_environment_with_free_phase(
                            &cat, two_j, theta, g, 1.7,
                        )
                        .expect("grid dilation is in bounds");
                        free_phase_gap.record(max_entry_gap(&dense, &with_phase));

                        let probe =
                            probe_model(two_j, theta, g, two_s).expect("probe parameters");
                        let outcomes = dilated_probe(&dense, two_j, theta, g)
                            .expect("probe dilation is in bounds");
                        for (slot, (p_dense, state_dense)) in outcomes.iter().enumerate() {
                            let two_m = 2 * slot as i32 - two_j;
                            match apply_probe_measurement(&structured, &probe, two_m) {
                                Ok((p, post)) => {
                                    probability_gap.record((p - p_dense).abs());
                                    if let Some(state_dense) = state_dense {
                                        state_gap.record(max_entry_gap(
                                            &post.dense(),
                                            state_dense,
                                        ));
                                        trace_gap.record(
                                            ((0..state_dense.nrows())
                                                .map(|i| state_dense[(i, i)].re)
                                                .sum::<f64>()
                                                - 1.0)
                                                .abs(),
                                        );
                                        eigen_floor.record(
                                            (-min_eigenvalue_hermitian(state_dense)).max(0.0),
                                        );
                                    }
                                }
                                Err(Error::OutcomeImpossible { .. }) => {
                                    probability_gap.record(*p_dense);
                                }
                                Err(e) => unreachable!("grid measurement failed: {e}"),
                            }
                        }
                    }
                }
            }
        }
    }

    let trackers = [
        environment_gap,
        probability_gap,
        state_gap,
        fidelity_gap,
        purity_gap,
        trace_gap,
        eigen_floor,
        free_phase_gap,
    ];
    let mut text = String::new();
    let mut failures = Vec::new();
    for tracker in &trackers {
        writeln!(text, "{}={}", tracker.name, sci(tracker.worst)).expect("string write");
        if tracker.failed() {
            failures.push(tracker.name.to_string());
        }
    }
    writeln!(text, "status={}", if failures.is_empty() { "ok" } else { "fail" })
        .expect("string write");
    (text, failures)
}

fn max_entry_gap(
    a: &nalgebra::DMatrix<Complex64>,
    b: &nalgebra::DMatrix<Complex64>,
) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}
