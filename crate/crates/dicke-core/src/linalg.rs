// Copyright 2026 DickeSim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense complex linear algebra for 4×4 Hermitian problems.
//!
//! Everything here is stack-allocated and deterministic: the density
//! matrices in this crate are always 4×4 and the correlation matrices 3×3,
//! so a general-purpose linear-algebra backend would be overkill. The
//! Hermitian eigensolver is a cyclic Jacobi iteration with complex Givens
//! rotations (Golub & Van Loan, "Matrix Computations", §8.5), which is
//! both simple and unusually accurate for small eigenvalues.

use num_complex::Complex64;

pub type C64 = Complex64;

/// Maximum Jacobi sweeps before declaring non-convergence. Cyclic Jacobi
/// on a 4×4 Hermitian matrix converges in ~5 sweeps; 50 is a safety net.
const MAX_JACOBI_SWEEPS: usize = 50;

/// Off-diagonal Frobenius threshold (relative to the matrix scale) at
/// which the Jacobi iteration stops.
const JACOBI_OFF_TOL: f64 = 1e-30;

/// Eigenvalues below this absolute threshold are treated as exact zeros
/// when taking matrix square roots. Without the clamp, rounding-level
/// eigenvalues (~1e-16) turn into ~1e-8 after the square root and ruin
/// the 1e-10 agreement between the two concurrence routes.
pub const EIGEN_ZERO_CLAMP: f64 = 1e-14;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("Jacobi eigensolver failed to converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("matrix square root of a non-PSD matrix (min eigenvalue {0:.3e})")]
    NotPositive(f64),
}

/// Dense 4×4 complex matrix, stack-allocated, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub fn zeros() -> Self {
        Mat4([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for j in 0..4 {
            m.0[j][j] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for j in 0..4 {
            for k in 0..4 {
                m.0[j][k] = f(j, k);
            }
        }
        m
    }

    /// Rank-1 projector |v⟩⟨v|.
    pub fn projector(v: &[C64; 4]) -> Self {
        Self::from_fn(|j, k| v[j] * v[k].conj())
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for j in 0..4 {
            for l in 0..4 {
                let a = self.0[j][l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..4 {
                    out.0[j][k] += a * rhs.0[l][k];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat4) -> Mat4 {
        Self::from_fn(|j, k| self.0[j][k] + rhs.0[j][k])
    }

    pub fn sub(&self, rhs: &Mat4) -> Mat4 {
        Self::from_fn(|j, k| self.0[j][k] - rhs.0[j][k])
    }

    pub fn scale(&self, c: C64) -> Mat4 {
        Self::from_fn(|j, k| c * self.0[j][k])
    }

    pub fn scale_re(&self, c: f64) -> Mat4 {
        Self::from_fn(|j, k| self.0[j][k] * c)
    }

    pub fn dagger(&self) -> Mat4 {
        Self::from_fn(|j, k| self.0[k][j].conj())
    }

    pub fn conj(&self) -> Mat4 {
        Self::from_fn(|j, k| self.0[j][k].conj())
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    /// (M + M†)/2.
    pub fn hermitize(&self) -> Mat4 {
        Self::from_fn(|j, k| (self.0[j][k] + self.0[k][j].conj()) * 0.5)
    }

    /// max_jk |M_jk − conj(M_kj)|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..4 {
            for k in 0..4 {
                worst = worst.max((self.0[j][k] - self.0[k][j].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.0 {
            for z in row {
                worst = worst.max(z.norm());
            }
        }
        worst
    }

    /// max_jk |A_jk − B_jk|.
    pub fn max_abs_diff(&self, rhs: &Mat4) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..4 {
            for k in 0..4 {
                worst = worst.max((self.0[j][k] - rhs.0[j][k]).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for Mat4 {
    type Output = C64;
    fn index(&self, (j, k): (usize, usize)) -> &C64 {
        &self.0[j][k]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut C64 {
        &mut self.0[j][k]
    }
}

/// Kronecker product of two 2×2 complex matrices in the fixed basis
/// ordering (first factor = atom A). Index (2a+b, 2a'+b') = A[a][a']·B[b][b'].
pub fn kron2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> Mat4 {
    Mat4::from_fn(|j, k| a[j / 2][k / 2] * b[j % 2][k % 2])
}

/// Eigendecomposition of a Hermitian 4×4 matrix by cyclic Jacobi.
///
/// Returns eigenvalues in ascending order together with the unitary whose
/// columns are the matching eigenvectors, so `m = V diag(λ) V†`.
pub fn eigh(m: &Mat4) -> Result<([f64; 4], Mat4), LinalgError> {
    let mut a = m.hermitize();
    let mut v = Mat4::identity();
    let scale = a.max_abs().max(1e-300);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a.0[p][q].norm_sqr();
            }
        }
        if off <= JACOBI_OFF_TOL * scale * scale {
            let mut evs = [0.0f64; 4];
            for j in 0..4 {
                evs[j] = a.0[j][j].re;
            }
            return Ok(sort_eigen(evs, v));
        }

        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a.0[p][q];
                let abs = apq.norm();
                if abs <= 1e-300 * scale {
                    continue;
                }
                // Unitary 2×2 rotation annihilating a[p][q]: the phase of
                // a[p][q] is absorbed into the rotation, the angle solves
                // t² + 2τt − 1 = 0 with τ = (a_qq − a_pp)/(2|a_pq|).
                let phase = apq / abs;
                let tau = (a.0[q][q].re - a.0[p][p].re) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let jpq = phase * s;
                // Columns p and q of A and V transform; then rows p and q
                // of A (A ← J† A J with J = I except the (p,q) block).
                for r in 0..4 {
                    let arp = a.0[r][p];
                    let arq = a.0[r][q];
                    a.0[r][p] = arp * c - arq * jpq.conj();
                    a.0[r][q] = arp * jpq + arq * c;
                    let vrp = v.0[r][p];
                    let vrq = v.0[r][q];
                    v.0[r][p] = vrp * c - vrq * jpq.conj();
                    v.0[r][q] = vrp * jpq + vrq * c;
                }
                for r in 0..4 {
                    let apr = a.0[p][r];
                    let aqr = a.0[q][r];
                    a.0[p][r] = apr * c - aqr * jpq;
                    a.0[q][r] = apr * jpq.conj() + aqr * c;
                }
                a.0[p][q] = C64::new(0.0, 0.0);
                a.0[q][p] = C64::new(0.0, 0.0);
                a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
                a.0[q][q] = C64::new(a.0[q][q].re, 0.0);
            }
        }
    }
    Err(LinalgError::NoConvergence(MAX_JACOBI_SWEEPS))
}

fn sort_eigen(evs: [f64; 4], v: Mat4) -> ([f64; 4], Mat4) {
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by(|&i, &j| evs[i].partial_cmp(&evs[j]).unwrap());
    let mut evs_sorted = [0.0f64; 4];
    let mut v_sorted = Mat4::zeros();
    for (col, &i) in idx.iter().enumerate() {
        evs_sorted[col] = evs[i];
        for r in 0..4 {
            v_sorted.0[r][col] = v.0[r][i];
        }
    }
    (evs_sorted, v_sorted)
}

/// Eigenvalues only (ascending).
pub fn eigvalsh(m: &Mat4) -> Result<[f64; 4], LinalgError> {
    eigh(m).map(|(evs, _)| evs)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &Mat4) -> Result<f64, LinalgError> {
    Ok(eigvalsh(m)?[0])
}

/// Hermitian PSD square root via eigendecomposition.
///
/// Eigenvalues in `[-psd_tol, EIGEN_ZERO_CLAMP)` are clamped to zero;
/// anything below `-psd_tol` means the input was not PSD and is an error.
pub fn sqrtm_psd(m: &Mat4, psd_tol: f64) -> Result<Mat4, LinalgError> {
    let (evs, v) = eigh(m)?;
    if evs[0] < -psd_tol {
        return Err(LinalgError::NotPositive(evs[0]));
    }
    let roots: Vec<f64> = evs
        .iter()
        .map(|&l| if l < EIGEN_ZERO_CLAMP { 0.0 } else { l.sqrt() })
        .collect();
    let mut out = Mat4::zeros();
    for j in 0..4 {
        for k in 0..4 {
            let mut z = C64::new(0.0, 0.0);
            for l in 0..4 {
                z += v.0[j][l] * roots[l] * v.0[k][l].conj();
            }
            out.0[j][k] = z;
        }
    }
    Ok(out.hermitize())
}

/// Singular values of a 4×4 complex matrix, descending, by one-sided
/// Jacobi (right rotations orthogonalize column pairs; the singular
/// values are the final column norms).
///
/// Unlike forming M†M and diagonalizing, this keeps tiny singular values
/// accurate to ~ε·σ_max absolute, which the concurrence computation
/// relies on near rank-deficient states.
pub fn singular_values(m: &Mat4) -> [f64; 4] {
    let mut a = *m;
    let scale = a.max_abs().max(1e-300);
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let mut gpp = 0.0f64;
                let mut gqq = 0.0f64;
                let mut gpq = C64::new(0.0, 0.0);
                for r in 0..4 {
                    gpp += a.0[r][p].norm_sqr();
                    gqq += a.0[r][q].norm_sqr();
                    gpq += a.0[r][p].conj() * a.0[r][q];
                }
                let abs = gpq.norm();
                if abs <= 1e-30 * scale * scale || abs * abs <= 1e-60 * gpp * gqq {
                    continue;
                }
                rotated = true;
                let phase = gpq / abs;
                let tau = (gqq - gpp) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let jpq = phase * s;
                for r in 0..4 {
                    let arp = a.0[r][p];
                    let arq = a.0[r][q];
                    a.0[r][p] = arp * c - arq * jpq.conj();
                    a.0[r][q] = arp * jpq + arq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma = [0.0f64; 4];
    for (col, out) in sigma.iter_mut().enumerate() {
        let mut norm2 = 0.0f64;
        for r in 0..4 {
            norm2 += a.0[r][col].norm_sqr();
        }
        *out = norm2.sqrt();
    }
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sigma
}

/// Eigenvalues of a real symmetric 3×3 matrix (ascending), via the same
/// cyclic Jacobi scheme specialized to real arithmetic.
pub fn sym3_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let mut a = *m;
    // symmetrize defensively
    for p in 0..3 {
        for q in (p + 1)..3 {
            let s = 0.5 * (a[p][q] + a[q][p]);
            a[p][q] = s;
            a[q][p] = s;
        }
    }
    let mut scale = 0.0f64;
    for row in &a {
        for x in row {
            scale = scale.max(x.abs());
        }
    }
    scale = scale.max(1e-300);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off <= JACOBI_OFF_TOL * scale * scale {
            break;
        }
        for p in 0..2 {
            for q in (p + 1)..3 {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 * scale {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for r in 0..3 {
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = arp * c - arq * s;
                    a[r][q] = arp * s + arq * c;
                }
                for r in 0..3 {
                    let apr = a[p][r];
                    let aqr = a[q][r];
                    a[p][r] = apr * c - aqr * s;
                    a[q][r] = apr * s + aqr * c;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    let mut evs = [a[0][0], a[1][1], a[2][2]];
    evs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    evs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng) -> Mat4 {
        let g = Mat4::from_fn(|_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        g.add(&g.dagger()).scale_re(0.5)
    }

    fn random_psd(rng: &mut ChaCha8Rng) -> Mat4 {
        let g = Mat4::from_fn(|_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        g.mul(&g.dagger())
    }

    #[test]
    fn eigh_diagonal_matrix() {
        let mut m = Mat4::zeros();
        for (j, l) in [3.0, -1.0, 0.5, 2.0].iter().enumerate() {
            m.0[j][j] = C64::new(*l, 0.0);
        }
        let (evs, _) = eigh(&m).unwrap();
        assert_abs_diff_eq!(evs[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(evs[1], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(evs[2], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(evs[3], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn eigh_sigma_x_tensor_sigma_x() {
        // σ1⊗σ1 has eigenvalues {−1, −1, 1, 1}.
        let sx = [
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        ];
        let m = kron2(&sx, &sx);
        let (evs, _) = eigh(&m).unwrap();
        for (got, want) in evs.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn eigh_reconstructs_and_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_hermitian(&mut rng);
            let (evs, v) = eigh(&m).unwrap();
            // V†V = I
            let vv = v.dagger().mul(&v);
            assert!(vv.max_abs_diff(&Mat4::identity()) < 1e-13);
            // M V = V diag(λ)
            let mv = m.mul(&v);
            let vd = Mat4::from_fn(|j, k| v.0[j][k] * evs[k]);
            assert!(mv.max_abs_diff(&vd) < 1e-12);
        }
    }

    #[test]
    fn sqrtm_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let m = random_psd(&mut rng);
            let s = sqrtm_psd(&m, 1e-10).unwrap();
            assert!(s.mul(&s).max_abs_diff(&m) < 1e-11);
            assert!(s.hermiticity_error() < 1e-13);
        }
    }

    #[test]
    fn sqrtm_rejects_indefinite() {
        let mut m = Mat4::identity();
        m.0[0][0] = C64::new(-0.5, 0.0);
        assert!(matches!(
            sqrtm_psd(&m, 1e-10),
            Err(LinalgError::NotPositive(_))
        ));
    }

    #[test]
    fn sqrtm_clamps_slightly_negative() {
        let mut m = Mat4::identity();
        m.0[0][0] = C64::new(-5e-11, 0.0);
        let s = sqrtm_psd(&m, 1e-10).unwrap();
        assert_abs_diff_eq!(s.0[0][0].re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sym3_known_eigenvalues() {
        let m = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]];
        let evs = sym3_eigenvalues(&m);
        assert_abs_diff_eq!(evs[0], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(evs[1], 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(evs[2], 5.0, epsilon = 1e-13);
    }

    #[test]
    fn sym3_trace_and_det_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let mut m = [[0.0; 3]; 3];
            for j in 0..3 {
                for k in j..3 {
                    let x: f64 = rng.gen_range(-2.0..2.0);
                    m[j][k] = x;
                    m[k][j] = x;
                }
            }
            let evs = sym3_eigenvalues(&m);
            let tr = m[0][0] + m[1][1] + m[2][2];
            assert_abs_diff_eq!(evs.iter().sum::<f64>(), tr, epsilon = 1e-12);
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            assert_abs_diff_eq!(evs[0] * evs[1] * evs[2], det, epsilon = 1e-11);
        }
    }

    #[test]
    fn kron_ordering_matches_basis_convention() {
        // A⊗B with A = diag(1, 2), B = diag(3, 4) → diag(3, 4, 6, 8).
        let a = [
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(2.0, 0.0)],
        ];
        let b = [
            [C64::new(3.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(4.0, 0.0)],
        ];
        let m = kron2(&a, &b);
        for (j, want) in [3.0, 4.0, 6.0, 8.0].iter().enumerate() {
            assert_abs_diff_eq!(m.0[j][j].re, *want, epsilon = 0.0);
        }
    }
}
