//! Dicke-basis representation of the cat state, the environment dephasing
//! kernel, the probe amplitudes, and the state transformations built from
//! them.
//!
//! All spin projections are carried as twice-value integers (`two_s`,
//! `two_sigma`, ...) so half-integer spins stay exact; conversion to `f64`
//! happens only at evaluation sites. Vectors and matrices are indexed by
//! ascending twice-value.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{complex_int_pow, ln_binomial, neumaier_sum};

/// Spin projection stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinLabel {
    pub two_value: i32,
}

impl SpinLabel {
    pub fn value(self) -> f64 {
        f64::from(self.two_value) / 2.0
    }
}

/// All projections -s..s for total spin s, ascending.
pub fn spin_labels(two_s: i32) -> Vec<SpinLabel> {
    (-two_s..=two_s)
        .step_by(2)
        .map(|two_value| SpinLabel { two_value })
        .collect()
}

fn validate_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta = {theta} outside [0, pi]"
        )));
    }
    Ok(())
}

fn validate_two_spin(two_value: i32, name: &str) -> Result<()> {
    if two_value < 1 {
        return Err(Error::Domain(format!("{name} = {two_value} must be >= 1")));
    }
    Ok(())
}

/// Superposition of the all-up-x and all-down-x states of 2s spin-1/2
/// particles, expanded in the Dicke basis.
#[derive(Debug, Clone)]
pub struct CatState {
    two_s: i32,
    amp_plus: Complex64,
    amp_minus: Complex64,
    coeffs: Vec<Complex64>,
}

/// Expand amp_plus |all up x> + amp_minus |all down x> over the Dicke
/// projections of total spin s = two_s/2.
///
/// Coefficients use log-gamma binomial roots, so two_s up to 10^4 is exact
/// to roundoff. The amplitudes must be normalized within 1e-9; they are
/// renormalized exactly before expansion.
pub fn cat_coefficients(
    two_s: i32,
    amp_plus: Complex64,
    amp_minus: Complex64,
) -> Result<CatState> {
    validate_two_spin(two_s, "two_s")?;
    let norm_sq = amp_plus.norm_sqr() + amp_minus.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-9 {
        return Err(Error::Validation(format!(
            "|amp_plus|^2 + |amp_minus|^2 = {norm_sq} must be 1 within 1e-9"
        )));
    }
    let scale = norm_sq.sqrt();
    let amp_plus = amp_plus / scale;
    let amp_minus = amp_minus / scale;

    let s = f64::from(two_s) / 2.0;
    let mut coeffs: Vec<Complex64> = spin_labels(two_s)
        .iter()
        .map(|label| {
            let k_up = ((two_s + label.two_value) / 2) as u64;
            let root = (0.5 * ln_binomial(two_s as u64, k_up)
                - s * std::f64::consts::LN_2)
                .exp();
            // parity (-1)^(s - sigma); s - sigma is always an integer
            let sign = if ((two_s - label.two_value) / 2).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            (amp_plus + sign * amp_minus) * root
        })
        .collect();
    // analytically unit norm; renormalize away binomial roundoff so
    // downstream plain sums of |c|^2 land within 1e-12 of 1 at any two_s
    let total = neumaier_sum(coeffs.iter().map(|c| c.norm_sqr()));
    let inv_root = 1.0 / total.sqrt();
    for c in &mut coeffs {
        *c *= inv_root;
    }

    Ok(CatState {
        two_s,
        amp_plus,
        amp_minus,
        coeffs,
    })
}

impl CatState {
    pub fn two_s(&self) -> i32 {
        self.two_s
    }

    pub fn amp_plus(&self) -> Complex64 {
        self.amp_plus
    }

    pub fn amp_minus(&self) -> Complex64 {
        self.amp_minus
    }

    /// Dicke coefficients, ascending two_sigma.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn labels(&self) -> Vec<SpinLabel> {
        spin_labels(self.two_s)
    }

    /// |c_sigma|^2 in ascending order.
    pub fn weights(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    /// State vector as a dense column.
    pub fn dense(&self) -> nalgebra::DVector<Complex64> {
        nalgebra::DVector::from_column_slice(&self.coeffs)
    }
}

/// Environment action on coherences: rho_{ss'} picks up N(sigma - sigma').
#[derive(Debug, Clone)]
pub struct DephasingKernel {
    two_j: i32,
    theta: f64,
    g: f64,
    two_s: i32,
    entries: DMatrix<Complex64>,
}

/// Kernel entry as a function of delta = sigma - sigma' only, so the matrix
/// is filled from a table over two_delta. Negative deltas are conjugates of
/// positive ones, which keeps Hermiticity exact.
fn kernel_from_delta_table<F>(two_s: i32, entry: F) -> DMatrix<Complex64>
where
    F: Fn(i32) -> Complex64,
{
    let dim = (two_s + 1) as usize;
    // two_delta = two_sigma - two_sigma' ranges over -2*two_s..2*two_s step 2;
    // slot = two_s + two_delta/2
    let mut table = vec![Complex64::new(0.0, 0.0); (2 * two_s + 1) as usize];
    for two_delta in (0..=2 * two_s).step_by(2) {
        let value = entry(two_delta);
        table[(two_s + two_delta / 2) as usize] = value;
        table[(two_s - two_delta / 2) as usize] = value.conj();
    }
    DMatrix::from_fn(dim, dim, |row, col| {
        table[(two_s + row as i32 - col as i32) as usize]
    })
}

/// Exact dephasing kernel (cos(g d) - i cos(theta) sin(g d))^{2j} with
/// d = sigma - sigma', evaluated in log domain.
pub fn dephasing_kernel(two_j: i32, theta: f64, g: f64, two_s: i32) -> Result<DephasingKernel> {
    validate_two_spin(two_j, "two_j")?;
    validate_two_spin(two_s, "two_s")?;
    validate_theta(theta)?;
    let cos_theta = theta.cos();
    let entries = kernel_from_delta_table(two_s, |two_delta| {
        if two_delta == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let phi = g * f64::from(two_delta) / 2.0;
        let base = Complex64::new(phi.cos(), -cos_theta * phi.sin());
        complex_int_pow(base, two_j)
    });
    Ok(DephasingKernel {
        two_j,
        theta,
        g,
        two_s,
        entries,
    })
}

/// Gaussian-times-phase approximation of the kernel, for validation and
/// speed experiments; the exact kernel is the default everywhere.
pub fn dephasing_kernel_approx(
    two_j: i32,
    theta: f64,
    g: f64,
    two_s: i32,
) -> Result<DephasingKernel> {
    validate_two_spin(two_j, "two_j")?;
    validate_two_spin(two_s, "two_s")?;
    validate_theta(theta)?;
    let j = f64::from(two_j) / 2.0;
    let sin_sq = theta.sin() * theta.sin();
    let drift = 2.0 * g * j * theta.cos();
    let entries = kernel_from_delta_table(two_s, |two_delta| {
        if two_delta == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let delta = f64::from(two_delta) / 2.0;
        Complex64::from_polar((-g * g * j * sin_sq * delta * delta).exp(), -drift * delta)
    });
    Ok(DephasingKernel {
        two_j,
        theta,
        g,
        two_s,
        entries,
    })
}

impl DephasingKernel {
    pub fn two_j(&self) -> i32 {
        self.two_j
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn two_s(&self) -> i32 {
        self.two_s
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Entry for a coherence at separation two_delta = 2(sigma - sigma').
    pub fn entry_at(&self, two_delta: i32) -> Complex64 {
        let idx = two_delta / 2;
        debug_assert!((idx.unsigned_abs() as usize) < self.entries.nrows());
        if idx >= 0 {
            self.entries[(idx as usize, 0)]
        } else {
            self.entries[(0, (-idx) as usize)]
        }
    }
}

/// Amplitudes A(m, sigma) of the reversing probe measurement; rows are
/// outcomes m ascending, columns system projections sigma ascending.
#[derive(Debug, Clone)]
pub struct ProbeModel {
    two_j: i32,
    theta: f64,
    g: f64,
    two_s: i32,
    amplitudes: DMatrix<Complex64>,
}

/// Probe amplitude matrix from the closed form: a binomial root times the
/// two conjugate interaction factors raised to integer powers, accumulated
/// in log domain. The global phase e^{-ij pi/2} is kept verbatim.
pub fn probe_model(two_j: i32, theta: f64, g: f64, two_s: i32) -> Result<ProbeModel> {
    validate_two_spin(two_j, "two_j")?;
    validate_two_spin(two_s, "two_s")?;
    validate_theta(theta)?;
    let j = f64::from(two_j) / 2.0;
    let half_sin = (theta / 2.0).sin();
    let half_cos = (theta / 2.0).cos();
    let global = Complex64::from_polar(1.0, -j * std::f64::consts::FRAC_PI_2);

    let m_labels = spin_labels(two_j);
    let s_labels = spin_labels(two_s);
    let amplitudes = DMatrix::from_fn(m_labels.len(), s_labels.len(), |row, col| {
        let two_m = m_labels[row].two_value;
        let sigma = s_labels[col].value();
        let root = (0.5 * ln_binomial(two_j as u64, ((two_j + two_m) / 2) as u64)
            - j * std::f64::consts::LN_2)
            .exp();
        let spin_phase = Complex64::from_polar(1.0, -g * sigma);
        let f_plus = spin_phase * half_sin + Complex64::i() * spin_phase.conj() * half_cos;
        let f_minus = spin_phase * half_sin - Complex64::i() * spin_phase.conj() * half_cos;
        global
            * root
            * complex_int_pow(f_plus, (two_j - two_m) / 2)
            * complex_int_pow(f_minus, (two_j + two_m) / 2)
    });
    Ok(ProbeModel {
        two_j,
        theta,
        g,
        two_s,
        amplitudes,
    })
}

impl ProbeModel {
    pub fn two_j(&self) -> i32 {
        self.two_j
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn two_s(&self) -> i32 {
        self.two_s
    }

    pub fn amplitudes(&self) -> &DMatrix<Complex64> {
        &self.amplitudes
    }

    pub fn outcome_labels(&self) -> Vec<SpinLabel> {
        spin_labels(self.two_j)
    }

    fn outcome_row(&self, two_m: i32) -> Result<usize> {
        if two_m.abs() > self.two_j || (self.two_j + two_m) % 2 != 0 {
            return Err(Error::Domain(format!(
                "two_m = {two_m} is not an outcome label for two_j = {}",
                self.two_j
            )));
        }
        Ok(((self.two_j + two_m) / 2) as usize)
    }
}

/// Density operator in factored form rho_{ss'} = c_s c*_{s'} K_{ss'} / norm.
///
/// The norm field keeps post-measurement renormalization explicit instead
/// of rescaling the cat coefficients, so fidelity and purity stay O(dim^2)
/// double sums over |c|^2 weights.
#[derive(Debug, Clone)]
pub struct StructuredDensity {
    cat: CatState,
    kernel: DMatrix<Complex64>,
    norm: f64,
    env_two_j: i32,
    env_theta: f64,
    env_g: f64,
}

impl StructuredDensity {
    pub(crate) fn new(
        cat: CatState,
        kernel: DMatrix<Complex64>,
        norm: f64,
        env_two_j: i32,
        env_theta: f64,
        env_g: f64,
    ) -> Self {
        Self {
            cat,
            kernel,
            norm,
            env_two_j,
            env_theta,
            env_g,
        }
    }

    pub fn cat(&self) -> &CatState {
        &self.cat
    }

    pub fn kernel(&self) -> &DMatrix<Complex64> {
        &self.kernel
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn two_s(&self) -> i32 {
        self.cat.two_s()
    }

    pub fn env_two_j(&self) -> i32 {
        self.env_two_j
    }

    pub fn env_theta(&self) -> f64 {
        self.env_theta
    }

    pub fn env_g(&self) -> f64 {
        self.env_g
    }

    pub fn trace(&self) -> f64 {
        let weights = self.cat.weights();
        let mut sum = 0.0;
        for (i, w) in weights.iter().enumerate() {
            sum += w * self.kernel[(i, i)].re;
        }
        sum / self.norm
    }

    /// Materialize the full density matrix.
    pub fn dense(&self) -> DMatrix<Complex64> {
        let c = self.cat.coeffs();
        DMatrix::from_fn(c.len(), c.len(), |row, col| {
            c[row] * c[col].conj() * self.kernel[(row, col)] / self.norm
        })
    }
}

/// Dephase the cat through the environment kernel: K = N, norm = 1.
pub fn apply_environment(cat: &CatState, kernel: &DephasingKernel) -> Result<StructuredDensity> {
    if kernel.two_s() != cat.two_s() {
        return Err(Error::DimensionMismatch {
            expected: cat.dim(),
            got: (kernel.two_s() + 1) as usize,
        });
    }
    Ok(StructuredDensity::new(
        cat.clone(),
        kernel.entries().clone(),
        1.0,
        kernel.two_j(),
        kernel.theta(),
        kernel.g(),
    ))
}

/// Condition on probe outcome m: kernel becomes K o R elementwise with
/// R = A(m,.) A(m,.)^dagger, and the norm absorbs p_m.
pub fn apply_probe_measurement(
    rho_prime: &StructuredDensity,
    probe: &ProbeModel,
    two_m: i32,
) -> Result<(f64, StructuredDensity)> {
    if probe.two_s() != rho_prime.two_s() {
        return Err(Error::DimensionMismatch {
            expected: rho_prime.cat.dim(),
            got: (probe.two_s() + 1) as usize,
        });
    }
    let row = probe.outcome_row(two_m)?;
    let weights = rho_prime.cat.weights();
    let dim = weights.len();

    let p_m = neumaier_sum((0..dim).map(|i| {
        let a = probe.amplitudes[(row, i)];
        weights[i] * rho_prime.kernel[(i, i)].re * a.norm_sqr()
    })) / rho_prime.norm;
    if p_m < 1e-300 {
        return Err(Error::OutcomeImpossible { two_m });
    }

    let kernel = DMatrix::from_fn(dim, dim, |i, k| {
        rho_prime.kernel[(i, k)] * probe.amplitudes[(row, i)] * probe.amplitudes[(row, k)].conj()
    });
    let post = StructuredDensity::new(
        rho_prime.cat.clone(),
        kernel,
        p_m * rho_prime.norm,
        rho_prime.env_two_j,
        rho_prime.env_theta,
        rho_prime.env_g,
    );
    Ok((p_m, post))
}

/// Undo the average drift with the counter-phase e^{i 2 g j cos(theta) d}.
/// Moduli are untouched, so the purity is exactly preserved.
pub fn apply_average_unitary(rho_prime: &StructuredDensity) -> StructuredDensity {
    let j = f64::from(rho_prime.env_two_j) / 2.0;
    let drift = 2.0 * rho_prime.env_g * j * rho_prime.env_theta.cos();
    let labels = rho_prime.cat.labels();
    let dim = labels.len();
    let kernel = DMatrix::from_fn(dim, dim, |i, k| {
        if i == k {
            rho_prime.kernel[(i, k)]
        } else {
            let delta = labels[i].value() - labels[k].value();
            rho_prime.kernel[(i, k)] * Complex64::from_polar(1.0, drift * delta)
        }
    });
    StructuredDensity::new(
        rho_prime.cat.clone(),
        kernel,
        rho_prime.norm,
        rho_prime.env_two_j,
        rho_prime.env_theta,
        rho_prime.env_g,
    )
}

/// Hermiticity defect of a matrix, max |M - M^dagger| elementwise.
pub fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for k in 0..m.ncols() {
            worst = worst.max((m[(i, k)] - m[(k, i)].conj()).norm());
        }
    }
    worst
}
