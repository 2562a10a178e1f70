// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dissipative two-atom dynamics: the collective spontaneous-emission
//! generator, a fixed-step RK4 propagator (the numerical oracle), and the
//! closed-form propagator for single-excitation initial states.
//!
//! The generator is purely dissipative,
//!
//! L ρ = ½ Σ_{k,l∈{A,B}} γ_kl (2 σ⁻_k ρ σ⁺_l − σ⁺_k σ⁻_l ρ − ρ σ⁺_k σ⁻_l),
//!
//! with γ_AA = γ_BB = γ₀ (single-atom emission rate) and
//! γ_AB = γ_BA = γ = g·γ₀ (photon-exchange rate). For g < 1 the semigroup
//! relaxes every state to |00⟩⟨00|. The zero-pattern classes of
//! [`StateClass`] are invariant under this evolution, which is what makes
//! the closed-form path possible.

use crate::linalg::{kron2, C64, Mat4};
use crate::nonlocality;
use crate::qstate::{StateClass, StateError, Tolerances, TwoQubitState};
use serde::Serialize;

/// Default RK4 step in units of 1/γ₀.
pub const DEFAULT_RK4_STEP: f64 = 1e-3;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("gamma0 must be positive and finite, got {0}")]
    InvalidGamma0(f64),
    #[error(
        "photon-exchange ratio g must lie in [0, 1), got {0}; \
         the equal-rate limit g = 1 (vanishing atomic separation) is outside \
         the domain of the closed forms implemented here"
    )]
    GammaRatioOutOfRange(f64),
    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),
    #[error("analytic propagation requires a single-excitation initial state")]
    NotSingleExcitation,
    #[error("positivity lost at t = {t}: min eigenvalue {min_eig:.3e} (integration failure)")]
    PositivityLost { t: f64, min_eig: f64 },
    #[error(transparent)]
    State(#[from] StateError),
}

/// Decay parameters: single-atom rate γ₀ > 0 and dimensionless
/// photon-exchange ratio g ∈ [0, 1), with γ = g·γ₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayParams {
    gamma0: f64,
    g: f64,
}

impl DecayParams {
    pub fn new(gamma0: f64, g: f64) -> Result<Self, DynamicsError> {
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(DynamicsError::InvalidGamma0(gamma0));
        }
        if !(g.is_finite() && (0.0..1.0).contains(&g)) {
            return Err(DynamicsError::GammaRatioOutOfRange(g));
        }
        Ok(DecayParams { gamma0, g })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Photon-exchange rate γ = g·γ₀.
    pub fn gamma(&self) -> f64 {
        self.g * self.gamma0
    }
}

fn identity2() -> [[C64; 2]; 2] {
    [
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    ]
}

/// σ⁻ = |0⟩⟨1| in the (|1⟩, |0⟩) column convention.
fn sigma_minus2() -> [[C64; 2]; 2] {
    [
        [C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    ]
}

/// Lowering operator of atom A: σ⁻ ⊗ 1.
pub fn sigma_minus_a() -> Mat4 {
    kron2(&sigma_minus2(), &identity2())
}

/// Lowering operator of atom B: 1 ⊗ σ⁻.
pub fn sigma_minus_b() -> Mat4 {
    kron2(&identity2(), &sigma_minus2())
}

/// Apply the dissipative generator to an arbitrary 4×4 matrix.
///
/// The result is traceless, and Hermitian whenever the input is.
pub fn lindblad_rhs(rho: &Mat4, params: &DecayParams) -> Mat4 {
    let sm = [sigma_minus_a(), sigma_minus_b()];
    let sp = [sm[0].dagger(), sm[1].dagger()];
    let gamma0 = params.gamma0();
    let gamma = params.gamma();
    let mut out = Mat4::zeros();
    for k in 0..2 {
        for l in 0..2 {
            let rate = if k == l { gamma0 } else { gamma };
            if rate == 0.0 {
                continue;
            }
            let jump = sm[k].mul(rho).mul(&sp[l]);
            let ortho = sp[k].mul(&sm[l]);
            let anti = ortho.mul(rho).add(&rho.mul(&ortho));
            out = out.add(&jump.scale_re(rate).sub(&anti.scale_re(0.5 * rate)));
        }
    }
    out
}

/// Density matrix flattened row-major: index 4j + k holds ρ_jk.
pub type StateVec = [C64; 16];

pub fn vectorize(m: &Mat4) -> StateVec {
    let mut v = [C64::new(0.0, 0.0); 16];
    for j in 0..4 {
        for k in 0..4 {
            v[4 * j + k] = m.0[j][k];
        }
    }
    v
}

pub fn unvectorize(v: &StateVec) -> Mat4 {
    Mat4::from_fn(|j, k| v[4 * j + k])
}

/// The generator as a dense 16×16 matrix acting on flattened density
/// matrices. Built column-by-column by applying [`lindblad_rhs`] to the
/// matrix units, so it stays definitionally tied to the operator form;
/// the integrator then only does matrix–vector products.
pub struct Liouvillian {
    rows: [[C64; 16]; 16],
}

impl Liouvillian {
    pub fn new(params: &DecayParams) -> Self {
        let mut rows = [[C64::new(0.0, 0.0); 16]; 16];
        for col in 0..16 {
            let mut unit = Mat4::zeros();
            unit.0[col / 4][col % 4] = C64::new(1.0, 0.0);
            let image = vectorize(&lindblad_rhs(&unit, params));
            for (row, value) in image.iter().enumerate() {
                rows[row][col] = *value;
            }
        }
        Liouvillian { rows }
    }

    pub fn apply(&self, v: &StateVec) -> StateVec {
        let mut out = [C64::new(0.0, 0.0); 16];
        for (o, row) in out.iter_mut().zip(self.rows.iter()) {
            let mut acc = C64::new(0.0, 0.0);
            for (l, x) in row.iter().zip(v.iter()) {
                acc += l * x;
            }
            *o = acc;
        }
        out
    }

    /// One classical 4th-order Runge–Kutta step of size `dt`.
    pub fn rk4_step(&self, v: &StateVec, dt: f64) -> StateVec {
        let k1 = self.apply(v);
        let k2 = self.apply(&axpy(v, &k1, 0.5 * dt));
        let k3 = self.apply(&axpy(v, &k2, 0.5 * dt));
        let k4 = self.apply(&axpy(v, &k3, dt));
        let mut out = *v;
        let w = dt / 6.0;
        for i in 0..16 {
            out[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * w;
        }
        out
    }
}

fn axpy(v: &StateVec, k: &StateVec, a: f64) -> StateVec {
    let mut out = *v;
    for i in 0..16 {
        out[i] += k[i] * a;
    }
    out
}

/// Which propagation route produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PropagationPath {
    Analytic,
    Numeric,
}

/// Per-sample derived scalars.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SampleScalars {
    pub concurrence: f64,
    pub m_value: f64,
    pub n_value: f64,
    pub linear_entropy: f64,
    pub trace_error: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: TwoQubitState,
    pub scalars: SampleScalars,
}

/// Time-sampled evolution with derived scalars; times strictly increase
/// starting from 0.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: DecayParams,
    pub path: PropagationPath,
    pub samples: Vec<TrajectorySample>,
}

fn make_sample(t: f64, mat: Mat4) -> Result<TrajectorySample, DynamicsError> {
    let mat = mat.hermitize();
    let state = TwoQubitState::with_tolerances(mat, &Tolerances::trajectory()).map_err(|e| {
        match e {
            StateError::NotPositive(min_eig) => DynamicsError::PositivityLost { t, min_eig },
            other => DynamicsError::State(other),
        }
    })?;
    let m_value = nonlocality::m_value(&state);
    let scalars = SampleScalars {
        concurrence: state.concurrence()?,
        m_value,
        n_value: (m_value - 1.0).max(0.0),
        linear_entropy: state.linear_entropy(),
        trace_error: state.trace_error(),
        min_eigenvalue: state.min_eigenvalue(),
    };
    Ok(TrajectorySample { t, state, scalars })
}

fn uniform_times(t_end: f64, n_samples: usize) -> Result<Vec<f64>, DynamicsError> {
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(DynamicsError::InvalidTimeGrid(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    if n_samples < 2 {
        return Err(DynamicsError::InvalidTimeGrid(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    let dt = t_end / (n_samples - 1) as f64;
    Ok((0..n_samples).map(|i| i as f64 * dt).collect())
}

/// Integrate the master equation with fixed-step RK4, sampling after every
/// step. `n_steps` steps of size `t_end / n_steps`.
pub fn evolve_numeric(
    rho0: &TwoQubitState,
    params: &DecayParams,
    t_end: f64,
    n_steps: usize,
) -> Result<Trajectory, DynamicsError> {
    if n_steps == 0 {
        return Err(DynamicsError::InvalidTimeGrid("n_steps must be ≥ 1".into()));
    }
    let times = uniform_times(t_end, n_steps + 1)?;
    evolve_numeric_sampled(rho0, params, &times, t_end / n_steps as f64)
}

/// Integrate with fixed-step RK4, hitting each requested sample time
/// exactly: the interval between consecutive samples is subdivided into
/// equal steps no longer than `max_step`.
pub fn evolve_numeric_sampled(
    rho0: &TwoQubitState,
    params: &DecayParams,
    times: &[f64],
    max_step: f64,
) -> Result<Trajectory, DynamicsError> {
    check_sample_times(times)?;
    if !(max_step.is_finite() && max_step > 0.0) {
        return Err(DynamicsError::InvalidTimeGrid(format!(
            "max_step must be positive, got {max_step}"
        )));
    }
    let liou = Liouvillian::new(params);
    let mut v = vectorize(rho0.matrix());
    let mut samples = Vec::with_capacity(times.len());
    samples.push(make_sample(times[0], unvectorize(&v))?);
    for w in times.windows(2) {
        let span = w[1] - w[0];
        let n_sub = (span / max_step).ceil().max(1.0) as usize;
        let dt = span / n_sub as f64;
        for _ in 0..n_sub {
            v = liou.rk4_step(&v, dt);
        }
        samples.push(make_sample(w[1], unvectorize(&v))?);
    }
    Ok(Trajectory {
        params: *params,
        path: PropagationPath::Numeric,
        samples,
    })
}

fn check_sample_times(times: &[f64]) -> Result<(), DynamicsError> {
    if times.len() < 2 {
        return Err(DynamicsError::InvalidTimeGrid(
            "need at least 2 sample times".into(),
        ));
    }
    if times[0] != 0.0 {
        return Err(DynamicsError::InvalidTimeGrid(
            "sample times must start at 0".into(),
        ));
    }
    if times.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
        return Err(DynamicsError::InvalidTimeGrid(
            "sample times must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Closed-form time evolution of a single-excitation density matrix,
/// element level. Assumes the zero first row/column pattern; entries
/// outside the pattern are produced as exact zeros.
///
/// ρ22, ρ33 and ρ23 evolve inside the single-excitation block, ρ24/ρ34
/// mix through e^{−γ₀t/2}(·cosh(γt/2) − ·sinh(γt/2)), and ρ44 follows by
/// trace completion (the expanded form is kept as a debug assertion).
pub fn evolve_analytic_elements(mat: &Mat4, params: &DecayParams, t: f64) -> Mat4 {
    if t == 0.0 {
        return *mat;
    }
    let gamma0 = params.gamma0();
    let gamma = params.gamma();
    let x = mat.0[1][2].re;
    let y = mat.0[1][2].im;
    let s = mat.0[1][1].re + mat.0[2][2].re;
    let d = mat.0[1][1].re - mat.0[2][2].re;
    let r24 = mat.0[1][3];
    let r34 = mat.0[2][3];

    let e1 = (-gamma0 * t).exp();
    let ch = (gamma * t).cosh();
    let sh = (gamma * t).sinh();
    let eh = (-0.5 * gamma0 * t).exp();
    let ch2 = (0.5 * gamma * t).cosh();
    let sh2 = (0.5 * gamma * t).sinh();

    let mut out = Mat4::zeros();
    out.0[1][1] = C64::new(e1 * (0.5 * d + 0.5 * s * ch - x * sh), 0.0);
    out.0[2][2] = C64::new(e1 * (-0.5 * d + 0.5 * s * ch - x * sh), 0.0);
    out.0[1][2] = C64::new(e1 * (x * ch - 0.5 * s * sh), e1 * y);
    out.0[2][1] = out.0[1][2].conj();
    out.0[1][3] = (r24 * ch2 - r34 * sh2) * eh;
    out.0[3][1] = out.0[1][3].conj();
    out.0[2][3] = (r34 * ch2 - r24 * sh2) * eh;
    out.0[3][2] = out.0[2][3].conj();
    let s_t = out.0[1][1].re + out.0[2][2].re;
    out.0[3][3] = C64::new(1.0 - s_t, 0.0);

    // Trace completion must agree with the expanded ρ44(t) expression.
    debug_assert!({
        let expanded = 1.0 + e1 * (-s * ch + 2.0 * x * sh);
        (out.0[3][3].re - expanded).abs() <= 1e-12
    });
    out
}

/// Closed-form propagation of a single-excitation state. Rejects general
/// initial states (those are routed to the numerical integrator by
/// callers).
pub fn evolve_analytic(
    rho0: &TwoQubitState,
    params: &DecayParams,
    t: f64,
) -> Result<TwoQubitState, DynamicsError> {
    if !rho0.classify().is_single_excitation() {
        return Err(DynamicsError::NotSingleExcitation);
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(DynamicsError::InvalidTimeGrid(format!(
            "time must be nonnegative and finite, got {t}"
        )));
    }
    let mat = evolve_analytic_elements(rho0.matrix(), params, t);
    Ok(TwoQubitState::with_tolerances(
        mat,
        &Tolerances::trajectory(),
    )?)
}

/// Sample the closed-form evolution on a uniform grid.
pub fn evolve_analytic_trajectory(
    rho0: &TwoQubitState,
    params: &DecayParams,
    t_end: f64,
    n_samples: usize,
) -> Result<Trajectory, DynamicsError> {
    if !rho0.classify().is_single_excitation() {
        return Err(DynamicsError::NotSingleExcitation);
    }
    let times = uniform_times(t_end, n_samples)?;
    let mut samples = Vec::with_capacity(times.len());
    for &t in &times {
        samples.push(make_sample(
            t,
            evolve_analytic_elements(rho0.matrix(), params, t),
        )?);
    }
    Ok(Trajectory {
        params: *params,
        path: PropagationPath::Analytic,
        samples,
    })
}

/// The unique asymptotic state for g < 1: both atoms in the ground state.
pub fn asymptotic_state(_params: &DecayParams) -> TwoQubitState {
    TwoQubitState::ground()
}

/// Max elementwise |analytic − numeric| over a full fixed-step RK4 run,
/// compared after every step. Memory use is O(1); this is the workhorse
/// of the oracle-equivalence suite.
pub fn analytic_numeric_max_deviation(
    rho0: &TwoQubitState,
    params: &DecayParams,
    t_end: f64,
    n_steps: usize,
) -> Result<f64, DynamicsError> {
    if !rho0.classify().is_single_excitation() {
        return Err(DynamicsError::NotSingleExcitation);
    }
    if n_steps == 0 || !(t_end.is_finite() && t_end > 0.0) {
        return Err(DynamicsError::InvalidTimeGrid(
            "need n_steps ≥ 1 and t_end > 0".into(),
        ));
    }
    let liou = Liouvillian::new(params);
    let dt = t_end / n_steps as f64;
    let mut v = vectorize(rho0.matrix());
    let mut worst = 0.0f64;
    for step in 1..=n_steps {
        v = liou.rk4_step(&v, dt);
        let t = step as f64 * dt;
        let numeric = unvectorize(&v).hermitize();
        let analytic = evolve_analytic_elements(rho0.matrix(), params, t);
        worst = worst.max(numeric.max_abs_diff(&analytic));
    }
    Ok(worst)
}
