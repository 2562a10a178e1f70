// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Scalar extremum and root finding on smooth 1-D functions.
//!
//! The concurrence and nonlocality curves handled in this crate have at
//! most two interior extrema and a handful of sign changes, so a dense
//! grid scan followed by golden-section / bisection refinement is both
//! robust and fast.

/// 1/φ² and 1/φ for the golden-section bracket subdivision.
const INV_GOLD2: f64 = 0.381_966_011_250_105_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

/// A refined interior extremum of a sampled function.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Extremum {
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Golden-section maximization on [a, b]; the bracket shrinks until it is
/// narrower than `tol_t`. Returns (argmax, max).
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol_t: f64) -> (f64, f64) {
    golden(f, a, b, tol_t, true)
}

/// Golden-section minimization on [a, b].
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, tol_t: f64) -> (f64, f64) {
    golden(f, a, b, tol_t, false)
}

fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol_t: f64, maximize: bool) -> (f64, f64) {
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut x1 = a + INV_GOLD2 * (b - a);
    let mut x2 = b - INV_GOLD2 * (b - a);
    let mut f1 = sign * f(x1);
    let mut f2 = sign * f(x2);
    while (b - a).abs() > tol_t {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - INV_GOLD2 * (b - a);
            f2 = sign * f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + INV_GOLD2 * (b - a);
            f1 = sign * f(x1);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

/// Bisection on [a, b]; requires a sign change (an endpoint root counts).
/// Refines until the bracket is narrower than `tol_t`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol_t: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while (b - a).abs() > tol_t {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

/// Locate every interior local extremum of `f` on [a, b] by scanning an
/// `n_grid`-point uniform grid and refining each candidate bracket with
/// golden-section search to `tol_t`. Plateaus (grid-constant stretches)
/// produce no candidates.
pub fn interior_extrema(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    n_grid: usize,
    tol_t: f64,
) -> Vec<Extremum> {
    assert!(n_grid >= 3 && b > a);
    let h = (b - a) / (n_grid as f64);
    let values: Vec<f64> = (0..=n_grid).map(|i| f(a + h * i as f64)).collect();
    let mut out = Vec::new();
    for i in 1..n_grid {
        let (lo, hi) = (a + h * (i - 1) as f64, a + h * (i + 1) as f64);
        if values[i] > values[i - 1] && values[i] > values[i + 1] {
            let (t, value) = golden_max(&f, lo, hi, tol_t);
            // Grid maxima adjacent to the boundary can be monotone
            // run-off rather than interior extrema; keep only true ones.
            if t > a + tol_t && t < b - tol_t {
                out.push(Extremum {
                    t,
                    value,
                    kind: ExtremumKind::Maximum,
                });
            }
        } else if values[i] < values[i - 1] && values[i] < values[i + 1] {
            let (t, value) = golden_min(&f, lo, hi, tol_t);
            if t > a + tol_t && t < b - tol_t {
                out.push(Extremum {
                    t,
                    value,
                    kind: ExtremumKind::Minimum,
                });
            }
        }
    }
    out
}

/// All roots of `f` on [a, b]: scan for sign changes on an `n_grid`-point
/// grid and bisect each bracketing interval to `tol_t`. A grid point that
/// is exactly zero counts as a root.
pub fn roots_on_grid(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    n_grid: usize,
    tol_t: f64,
) -> Vec<f64> {
    assert!(n_grid >= 2 && b > a);
    let h = (b - a) / (n_grid as f64);
    let values: Vec<f64> = (0..=n_grid).map(|i| f(a + h * i as f64)).collect();
    let mut out = Vec::new();
    for i in 0..n_grid {
        let (lo, hi) = (a + h * i as f64, a + h * (i + 1) as f64);
        if values[i] == 0.0 {
            if out.last().map_or(true, |&r: &f64| (lo - r).abs() > tol_t) {
                out.push(lo);
            }
        } else if values[i].signum() != values[i + 1].signum() && values[i + 1] != 0.0 {
            if let Some(r) = bisect(&f, lo, hi, tol_t) {
                out.push(r);
            }
        }
    }
    if values[n_grid] == 0.0 {
        out.push(b);
    }
    out
}
