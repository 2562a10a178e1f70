// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! CHSH nonlocality machinery: correlation matrix, the two-largest-
//! eigenvalue criterion, Bell-operator expectations, the closed shortcut
//! for ground-coherence-free states, and the nonlocality-loss time.
//!
//! A state violates some CHSH inequality iff m(ρ) > 1, where m(ρ) is the
//! sum of the two largest eigenvalues of U = TᵀT built from the spin
//! correlation matrix t_nm = tr(ρ σ_n⊗σ_m); the maximal Bell-operator
//! expectation is 2√m(ρ). The scalar n(ρ) = max(0, m(ρ) − 1) then ranges
//! from 0 (admits a local hidden-variable model) to 1 (maximal violation).

use crate::dynamics::{evolve_analytic_elements, DecayParams, DynamicsError};
use crate::linalg::{self, kron2, C64, Mat4};
use crate::qstate::{StateError, Tolerances, TwoQubitState};
use crate::search;
use serde::Serialize;

/// |ρ23| threshold 1/(2√2) appearing in the coherence branch of the
/// violation criterion.
pub const COHERENCE_THRESHOLD: f64 = 0.353_553_390_593_273_8;

/// Unit-norm acceptance for measurement directions.
pub const UNIT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum BellSettingsError {
    #[error("measurement direction {name} has norm {norm}, expected 1 within {UNIT_NORM_TOL:.0e}")]
    NotUnit { name: &'static str, norm: f64 },
}

/// Pauli matrices in the (|1⟩, |0⟩) column convention, so σ3|1⟩ = +|1⟩.
pub fn pauli(n: usize) -> [[C64; 2]; 2] {
    let zero = C64::new(0.0, 0.0);
    match n {
        0 => [[zero, C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), zero]],
        1 => [[zero, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), zero]],
        2 => [
            [C64::new(1.0, 0.0), zero],
            [zero, C64::new(-1.0, 0.0)],
        ],
        _ => panic!("Pauli index out of range"),
    }
}

/// v·σ for an arbitrary (not necessarily unit) vector.
fn dot_sigma(v: &[f64; 3]) -> [[C64; 2]; 2] {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for (n, &vn) in v.iter().enumerate() {
        let p = pauli(n);
        for j in 0..2 {
            for k in 0..2 {
                out[j][k] += p[j][k] * vn;
            }
        }
    }
    out
}

/// Spin correlation matrix t_nm = tr(ρ σ_n⊗σ_m), n, m ∈ {1, 2, 3}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationMatrix(pub [[f64; 3]; 3]);

impl CorrelationMatrix {
    /// T v (matrix acting on a measurement direction).
    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for n in 0..3 {
            for m in 0..3 {
                out[n] += self.0[n][m] * v[m];
            }
        }
        out
    }

    /// Eigenvalues of U = TᵀT, ascending.
    pub fn gram_eigenvalues(&self) -> [f64; 3] {
        let t = &self.0;
        let mut u = [[0.0; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    u[j][k] += t[l][j] * t[l][k];
                }
            }
        }
        linalg::sym3_eigenvalues(&u)
    }
}

pub fn correlation_matrix(rho: &TwoQubitState) -> CorrelationMatrix {
    let mut t = [[0.0; 3]; 3];
    for n in 0..3 {
        for m in 0..3 {
            let op = kron2(&pauli(n), &pauli(m));
            t[n][m] = rho.matrix().mul(&op).trace().re;
        }
    }
    CorrelationMatrix(t)
}

/// Sum of the two largest eigenvalues of TᵀT; in [0, 2] for states.
pub fn m_value(rho: &TwoQubitState) -> f64 {
    let u = correlation_matrix(rho).gram_eigenvalues();
    u[1] + u[2]
}

/// Largest attainable Bell-operator expectation, 2√m(ρ) ∈ [0, 2√2].
pub fn chsh_max(rho: &TwoQubitState) -> f64 {
    2.0 * m_value(rho).max(0.0).sqrt()
}

/// Nonlocality measure n(ρ) = max(0, m(ρ) − 1) ∈ [0, 1].
pub fn n_value(rho: &TwoQubitState) -> f64 {
    (m_value(rho) - 1.0).max(0.0)
}

/// Four measurement directions defining a CHSH Bell operator
/// B = a·σ ⊗ (b+b′)·σ + a′·σ ⊗ (b−b′)·σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellSettings {
    pub a: [f64; 3],
    pub a_prime: [f64; 3],
    pub b: [f64; 3],
    pub b_prime: [f64; 3],
}

impl BellSettings {
    pub fn new(
        a: [f64; 3],
        a_prime: [f64; 3],
        b: [f64; 3],
        b_prime: [f64; 3],
    ) -> Result<Self, BellSettingsError> {
        for (name, v) in [("a", &a), ("a_prime", &a_prime), ("b", &b), ("b_prime", &b_prime)] {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(BellSettingsError::NotUnit { name, norm });
            }
        }
        Ok(BellSettings {
            a,
            a_prime,
            b,
            b_prime,
        })
    }

    /// The Bell operator as an explicit 4×4 matrix.
    pub fn operator(&self) -> Mat4 {
        let sum = [
            self.b[0] + self.b_prime[0],
            self.b[1] + self.b_prime[1],
            self.b[2] + self.b_prime[2],
        ];
        let diff = [
            self.b[0] - self.b_prime[0],
            self.b[1] - self.b_prime[1],
            self.b[2] - self.b_prime[2],
        ];
        kron2(&dot_sigma(&self.a), &dot_sigma(&sum))
            .add(&kron2(&dot_sigma(&self.a_prime), &dot_sigma(&diff)))
    }
}

/// tr(ρ B) for the explicit Bell operator of the given settings.
pub fn chsh_expectation(rho: &TwoQubitState, settings: &BellSettings) -> f64 {
    rho.matrix().mul(&settings.operator()).trace().re
}

/// Best CHSH settings found by random-restart hill climbing over (b, b′);
/// for fixed (b, b′) the optimal a, a′ align with T(b±b′), so the search
/// space is effectively four angles. This is a test oracle for
/// [`chsh_max`], not a certified optimizer.
pub fn optimize_chsh_settings(
    rho: &TwoQubitState,
    n_restarts: usize,
    rng: &mut impl rand::Rng,
) -> (BellSettings, f64) {
    let t = correlation_matrix(rho);
    let norm = |v: &[f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let score = |b: &[f64; 3], bp: &[f64; 3]| {
        let sum = [b[0] + bp[0], b[1] + bp[1], b[2] + bp[2]];
        let diff = [b[0] - bp[0], b[1] - bp[1], b[2] - bp[2]];
        norm(&t.apply(&sum)) + norm(&t.apply(&diff))
    };

    let mut best_pair = (
        crate::sampling::random_unit_vector(rng),
        crate::sampling::random_unit_vector(rng),
    );
    let mut best_score = score(&best_pair.0, &best_pair.1);
    for _ in 0..n_restarts.max(1) {
        let mut b = crate::sampling::random_unit_vector(rng);
        let mut bp = crate::sampling::random_unit_vector(rng);
        let mut current = score(&b, &bp);
        let renorm = |raw: [f64; 3]| {
            let n = norm(&raw).max(1e-12);
            [raw[0] / n, raw[1] / n, raw[2] / n]
        };
        let mut step = 0.7;
        while step > 1e-7 {
            let mut improved = false;
            for _ in 0..12 {
                let db = crate::sampling::random_unit_vector(rng);
                let dbp = crate::sampling::random_unit_vector(rng);
                let cand_b = renorm([
                    b[0] + step * db[0],
                    b[1] + step * db[1],
                    b[2] + step * db[2],
                ]);
                let cand_bp = renorm([
                    bp[0] + step * dbp[0],
                    bp[1] + step * dbp[1],
                    bp[2] + step * dbp[2],
                ]);
                let cand = score(&cand_b, &cand_bp);
                if cand > current {
                    b = cand_b;
                    bp = cand_bp;
                    current = cand;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if current > best_score {
            best_score = current;
            best_pair = (b, bp);
        }
    }

    let (b, bp) = best_pair;
    let unit_or = |v: [f64; 3], fallback: [f64; 3]| {
        let n = norm(&v);
        if n > 1e-12 {
            [v[0] / n, v[1] / n, v[2] / n]
        } else {
            fallback
        }
    };
    let sum = [b[0] + bp[0], b[1] + bp[1], b[2] + bp[2]];
    let diff = [b[0] - bp[0], b[1] - bp[1], b[2] - bp[2]];
    let a = unit_or(t.apply(&sum), [0.0, 0.0, 1.0]);
    let a_prime = unit_or(t.apply(&diff), [1.0, 0.0, 0.0]);
    let settings = BellSettings::new(a, a_prime, b, bp).expect("normalized directions");
    let value = chsh_expectation(rho, &settings);
    (settings, value)
}

fn require_ground_coherence_free(rho: &TwoQubitState) -> Result<(), StateError> {
    if rho.classify() != crate::qstate::StateClass::GroundCoherenceFree {
        return Err(StateError::NotClass22);
    }
    Ok(())
}

/// Closed shortcut for ground-coherence-free states:
/// m(ρ) = max(2C², (1 − 2ρ44)² + C²) with C = 2|ρ23|.
pub fn m_class22(rho: &TwoQubitState) -> Result<f64, StateError> {
    require_ground_coherence_free(rho)?;
    let c = 2.0 * rho.elem(1, 2).norm();
    let r44 = rho.elem(3, 3).re;
    Ok((2.0 * c * c).max((1.0 - 2.0 * r44).powi(2) + c * c))
}

/// Violation criterion for ground-coherence-free states:
/// |ρ23| > 1/(2√2) or ρ22ρ33 > S_L/2. Equivalent to m(ρ) > 1.
pub fn violates_chsh_class22(rho: &TwoQubitState) -> Result<bool, StateError> {
    require_ground_coherence_free(rho)?;
    let coherence = rho.elem(1, 2).norm();
    let population_product = rho.elem(1, 1).re * rho.elem(2, 2).re;
    Ok(coherence > COHERENCE_THRESHOLD || population_product > 0.5 * rho.linear_entropy())
}

/// Times at which the two branches of the violation criterion shut off.
///
/// `t1`: last time ρ22ρ33 − S_L/2 crosses into the nonpositive region;
/// `t2`: same for |ρ23| − 1/(2√2) (zero if the coherence never exceeds
/// the threshold); nonlocality is lost at `t_n = max(t1, t2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NonlocalityTimes {
    pub t1: f64,
    pub t2: f64,
    pub t_n: f64,
    /// The initial state was already local; all times are zero.
    pub initially_local: bool,
    /// A criterion branch crossed its threshold more than once.
    pub multiple_crossings: bool,
    /// n(ρ(t)) = 0 confirmed on a grid past t_n (via the full
    /// eigenvalue-based m, not the shortcut).
    pub locality_verified: bool,
}

/// Grid resolution for locating criterion crossings.
const CROSSING_GRID: usize = 20_000;
/// Verification grid size past t_n.
const VERIFY_GRID: usize = 1_000;

/// Compute the nonlocality-loss profile of a ground-coherence-free
/// initial state evolving under the closed-form dynamics.
pub fn nonlocality_times(
    rho0: &TwoQubitState,
    params: &DecayParams,
) -> Result<NonlocalityTimes, DynamicsError> {
    require_ground_coherence_free(rho0)?;

    let mat0 = *rho0.matrix();
    let f1 = |t: f64| {
        let m = evolve_analytic_elements(&mat0, params, t);
        let (r22, r33, r44) = (m.0[1][1].re, m.0[2][2].re, m.0[3][3].re);
        let c2 = m.0[1][2].norm_sqr();
        let purity = r22 * r22 + r33 * r33 + r44 * r44 + 2.0 * c2;
        r22 * r33 - 0.5 * (1.0 - purity)
    };
    let f2 = |t: f64| {
        evolve_analytic_elements(&mat0, params, t).0[1][2].norm() - COHERENCE_THRESHOLD
    };

    // Beyond this horizon both criterion branches are strictly negative:
    // the coherence is bounded by (3/2)e^{−(γ₀−γ)t} and the population
    // branch needs ρ22 + ρ33 > 4/5.
    let gamma0 = params.gamma0();
    let horizon = (15.0 / gamma0).max(2.0 / (gamma0 * (1.0 - params.g())));
    let tol_t = 1e-12 / gamma0;

    if n_value(rho0) <= 0.0 {
        let verified = verify_local_after(&mat0, params, 0.0);
        return Ok(NonlocalityTimes {
            t1: 0.0,
            t2: 0.0,
            t_n: 0.0,
            initially_local: true,
            multiple_crossings: false,
            locality_verified: verified,
        });
    }

    let roots1 = search::roots_on_grid(f1, 0.0, horizon, CROSSING_GRID, tol_t);
    let roots2 = search::roots_on_grid(f2, 0.0, horizon, CROSSING_GRID, tol_t);
    let multiple_crossings = roots1.len() > 1 || roots2.len() > 1;
    if multiple_crossings {
        log::warn!(
            "criterion branch crossed its threshold more than once ({} / {} roots); \
             using the final crossing",
            roots1.len(),
            roots2.len()
        );
    }
    let t1 = roots1.last().copied().unwrap_or(0.0);
    let t2 = roots2.last().copied().unwrap_or(0.0);
    let t_n = t1.max(t2);
    let locality_verified = verify_local_after(&mat0, params, t_n);

    Ok(NonlocalityTimes {
        t1,
        t2,
        t_n,
        initially_local: false,
        multiple_crossings,
        locality_verified,
    })
}

/// Confirm n(ρ(t)) = 0 on a grid strictly past `t_start`, using the full
/// eigenvalue-based m(ρ) rather than the class shortcut.
fn verify_local_after(mat0: &Mat4, params: &DecayParams, t_start: f64) -> bool {
    let span = 15.0 / params.gamma0();
    for k in 1..=VERIFY_GRID {
        let t = t_start + span * (k as f64) / (VERIFY_GRID as f64);
        let m = evolve_analytic_elements(mat0, params, t);
        let state = match TwoQubitState::with_tolerances(m, &Tolerances::trajectory()) {
            Ok(s) => s,
            Err(_) => return false,
        };
        if n_value(&state) > 0.0 {
            return false;
        }
    }
    true
}

/// Sample n(ρ(t)) along the closed-form evolution on a uniform grid.
pub fn nonlocality_curve(
    rho0: &TwoQubitState,
    params: &DecayParams,
    t_end: f64,
    n_samples: usize,
) -> Result<Vec<(f64, f64)>, DynamicsError> {
    require_ground_coherence_free(rho0)?;
    if !(t_end.is_finite() && t_end > 0.0) || n_samples < 2 {
        return Err(DynamicsError::InvalidTimeGrid(
            "need t_end > 0 and at least 2 samples".into(),
        ));
    }
    let mat0 = *rho0.matrix();
    let mut out = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let t = t_end * (i as f64) / ((n_samples - 1) as f64);
        let m = evolve_analytic_elements(&mat0, params, t);
        let state = TwoQubitState::with_tolerances(m, &Tolerances::trajectory())?;
        out.push((t, n_value(&state)));
    }
    Ok(out)
}
