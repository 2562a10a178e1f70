// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random generators for states, angles and measurement settings,
//! used by the validation suites. Everything routes through a caller-owned
//! RNG so that suites are reproducible from a single seed.

use crate::linalg::{C64, Mat4};
use crate::qstate::{PureStateAngles, TwoQubitState};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random full-rank single-excitation state: a random PSD 3×3 block on
/// span{|10⟩, |01⟩, |00⟩}, normalized to unit trace. Ground-state
/// coherences ρ24, ρ34 are generically nonzero.
pub fn random_single_excitation(rng: &mut impl Rng) -> TwoQubitState {
    // G G† on the lower 3×3 block.
    let mut g = [[C64::new(0.0, 0.0); 3]; 3];
    for row in &mut g {
        for z in row.iter_mut() {
            *z = random_c64(rng);
        }
    }
    let mut m = Mat4::zeros();
    for j in 0..3 {
        for k in 0..3 {
            let mut acc = C64::new(0.0, 0.0);
            for l in 0..3 {
                acc += g[j][l] * g[k][l].conj();
            }
            m.0[j + 1][k + 1] = acc;
        }
    }
    let tr = m.trace().re;
    let m = m.scale_re(1.0 / tr);
    TwoQubitState::new(m.hermitize()).expect("Gram-matrix construction is a valid state")
}

/// Random state of the ground-coherence-free subclass: a random PSD 2×2
/// block on span{|10⟩, |01⟩} mixed with a random ground-state weight.
pub fn random_ground_coherence_free(rng: &mut impl Rng) -> TwoQubitState {
    let mut g = [[C64::new(0.0, 0.0); 2]; 2];
    for row in &mut g {
        for z in row.iter_mut() {
            *z = random_c64(rng);
        }
    }
    let mut block = [[C64::new(0.0, 0.0); 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for l in 0..2 {
                acc += g[j][l] * g[k][l].conj();
            }
            block[j][k] = acc;
        }
    }
    let tr = (block[0][0] + block[1][1]).re;
    let w44: f64 = rng.gen_range(0.0..1.0);
    let scale = (1.0 - w44) / tr;
    let mut m = Mat4::zeros();
    m.0[1][1] = block[0][0] * scale;
    m.0[1][2] = block[0][1] * scale;
    m.0[2][1] = block[1][0] * scale;
    m.0[2][2] = block[1][1] * scale;
    m.0[3][3] = C64::new(w44, 0.0);
    TwoQubitState::new(m.hermitize()).expect("Gram-matrix construction is a valid state")
}

/// Uniform angles over the full parameter box of the pure-state family.
pub fn random_pure_angles(rng: &mut impl Rng) -> PureStateAngles {
    PureStateAngles::new(
        rng.gen_range(0.0..FRAC_PI_2),
        rng.gen_range(0.0..FRAC_PI_2),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
    )
    .expect("sampled angles are in range")
}

/// Uniform random unit vector in R³ (rejection-sampled from the cube).
pub fn random_unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}
