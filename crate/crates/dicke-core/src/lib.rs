// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dissipative dynamics of two two-level atoms coupled to a common
//! radiation bath, with entanglement and CHSH-nonlocality tracking.
//!
//! The model is purely dissipative collective spontaneous emission:
//! single-atom rate γ₀ plus a photon-exchange rate γ = g·γ₀ (g < 1 for
//! any finite separation). The crate provides
//!
//! * [`qstate`] — validated 4×4 density matrices in the fixed basis
//!   |11⟩, |10⟩, |01⟩, |00⟩, concurrence (full spin-flip spectrum and the
//!   single-excitation shortcut 2|ρ23|), entanglement of formation and
//!   linear entropy;
//! * [`dynamics`] — the Lindblad generator, a fixed-step RK4 oracle, and
//!   the closed-form propagator for single-excitation states;
//! * [`entanglement_dynamics`] — concurrence-evolution closed forms and
//!   the critical times/values of every curve family, each cross-checked
//!   by grid + golden-section search;
//! * [`nonlocality`] — correlation-matrix CHSH machinery, the
//!   ground-coherence-free shortcuts, and the nonlocality-loss time
//!   t_n = max(t1, t2);
//! * [`validation`] — the seeded oracle-equivalence suites behind the
//!   CLI `validate` subcommand.

pub mod dynamics;
pub mod entanglement_dynamics;
pub mod io;
pub mod linalg;
pub mod nonlocality;
pub mod qstate;
pub mod sampling;
pub mod search;
pub mod validation;

pub use dynamics::{DecayParams, DynamicsError, PropagationPath, Trajectory};
pub use linalg::{C64, Mat4};
pub use nonlocality::{BellSettings, CorrelationMatrix, NonlocalityTimes};
pub use qstate::{PureStateAngles, StateClass, StateError, Tolerances, TwoQubitState};
