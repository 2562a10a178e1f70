// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! File formats: JSON state specifications, CSV/JSON trajectory export.
//!
//! States are specified either by the pure-family angles or by an explicit
//! matrix of {re, im} pairs in the fixed basis order. CSV numbers are
//! written with 17 significant digits so that emitted files are
//! bit-stable golden files; time columns are scaled by the caller
//! (dimensionless γ₀t by default).

use crate::dynamics::Trajectory;
use crate::linalg::{C64, Mat4};
use crate::qstate::{PureStateAngles, StateError, TwoQubitState};
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed state specification: {0}")]
    Json(#[from] serde_json::Error),
    #[error("state specification must contain exactly one of \"angles\" or \"matrix\"")]
    AmbiguousSpec,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Write(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexDto {
    fn from(z: C64) -> Self {
        ComplexDto { re: z.re, im: z.im }
    }
}

pub type MatrixDto = [[ComplexDto; 4]; 4];

pub fn matrix_to_dto(m: &Mat4) -> MatrixDto {
    let mut out = [[ComplexDto { re: 0.0, im: 0.0 }; 4]; 4];
    for j in 0..4 {
        for k in 0..4 {
            out[j][k] = m.0[j][k].into();
        }
    }
    out
}

pub fn dto_to_matrix(dto: &MatrixDto) -> Mat4 {
    Mat4::from_fn(|j, k| C64::new(dto[j][k].re, dto[j][k].im))
}

#[derive(Debug, Deserialize)]
struct AnglesDto {
    phi: f64,
    #[serde(default)]
    psi: f64,
    #[serde(default)]
    theta: f64,
    #[serde(default)]
    xi: f64,
}

#[derive(Debug, Deserialize)]
struct StateSpecDto {
    angles: Option<AnglesDto>,
    matrix: Option<MatrixDto>,
}

/// Parsed state specification: the angles are kept when given so that
/// callers can dispatch on the pure-state family.
#[derive(Debug, Clone)]
pub struct StateSpec {
    pub state: TwoQubitState,
    pub angles: Option<PureStateAngles>,
}

/// Parse a JSON state specification:
/// `{"angles": {"phi": …, "psi": …, "theta": …, "xi": …}}` or
/// `{"matrix": [[{"re": …, "im": …} ×4] ×4]}`.
pub fn parse_state_json(text: &str) -> Result<StateSpec, IoError> {
    let dto: StateSpecDto = serde_json::from_str(text)?;
    match (dto.angles, dto.matrix) {
        (Some(a), None) => {
            let angles = PureStateAngles::new(a.phi, a.psi, a.theta, a.xi)?;
            Ok(StateSpec {
                state: TwoQubitState::from_angles(&angles),
                angles: Some(angles),
            })
        }
        (None, Some(m)) => Ok(StateSpec {
            state: TwoQubitState::new(dto_to_matrix(&m))?,
            angles: None,
        }),
        _ => Err(IoError::AmbiguousSpec),
    }
}

/// 17-significant-digit decimal-exponent formatting; the round-trip is
/// exact for f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Trajectory CSV column header: time, the 16 matrix elements row-major
/// (re, im interleaved), then the derived scalars.
pub fn trajectory_csv_header() -> String {
    let mut cols = vec!["t".to_string()];
    for j in 1..=4 {
        for k in 1..=4 {
            cols.push(format!("rho{j}{k}_re"));
            cols.push(format!("rho{j}{k}_im"));
        }
    }
    for s in ["C", "m", "n", "S_L", "trace_err", "min_eig"] {
        cols.push(s.to_string());
    }
    cols.join(",")
}

/// Write a trajectory as CSV with `# key: value` metadata lines above the
/// header. `time_scale` multiplies the stored (absolute) sample times for
/// display.
pub fn write_trajectory_csv<W: Write>(
    w: &mut W,
    traj: &Trajectory,
    metadata: &[(String, String)],
    time_scale: f64,
) -> Result<(), IoError> {
    for (key, value) in metadata {
        writeln!(w, "# {key}: {value}")?;
    }
    writeln!(w, "{}", trajectory_csv_header())?;
    for sample in &traj.samples {
        let mut fields = Vec::with_capacity(39);
        fields.push(format_float(sample.t * time_scale));
        for j in 0..4 {
            for k in 0..4 {
                let z = sample.state.elem(j, k);
                fields.push(format_float(z.re));
                fields.push(format_float(z.im));
            }
        }
        let s = &sample.scalars;
        for v in [
            s.concurrence,
            s.m_value,
            s.n_value,
            s.linear_entropy,
            s.trace_error,
            s.min_eigenvalue,
        ] {
            fields.push(format_float(v));
        }
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Write scalar curves (t, C, m, n, S_L) as CSV.
pub fn write_curves_csv<W: Write>(
    w: &mut W,
    traj: &Trajectory,
    metadata: &[(String, String)],
    time_scale: f64,
) -> Result<(), IoError> {
    for (key, value) in metadata {
        writeln!(w, "# {key}: {value}")?;
    }
    writeln!(w, "t,C,m,n,S_L")?;
    for sample in &traj.samples {
        let s = &sample.scalars;
        writeln!(
            w,
            "{},{},{},{},{}",
            format_float(sample.t * time_scale),
            format_float(s.concurrence),
            format_float(s.m_value),
            format_float(s.n_value),
            format_float(s.linear_entropy),
        )?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SampleDto<'a> {
    t: f64,
    rho: MatrixDto,
    scalars: &'a crate::dynamics::SampleScalars,
}

/// Trajectory as a JSON value mirroring the in-memory type, with
/// caller-supplied metadata fields merged at the top level.
pub fn trajectory_to_json(
    traj: &Trajectory,
    metadata: &[(String, String)],
    time_scale: f64,
) -> serde_json::Value {
    let samples: Vec<serde_json::Value> = traj
        .samples
        .iter()
        .map(|s| {
            serde_json::to_value(SampleDto {
                t: s.t * time_scale,
                rho: matrix_to_dto(s.state.matrix()),
                scalars: &s.scalars,
            })
            .expect("sample serialization cannot fail")
        })
        .collect();
    let mut top = serde_json::Map::new();
    for (key, value) in metadata {
        top.insert(key.clone(), serde_json::Value::String(value.clone()));
    }
    top.insert(
        "params".into(),
        serde_json::to_value(traj.params).expect("params serialize"),
    );
    top.insert(
        "path".into(),
        serde_json::to_value(traj.path).expect("path serialize"),
    );
    top.insert("samples".into(), serde_json::Value::Array(samples));
    serde_json::Value::Object(top)
}
