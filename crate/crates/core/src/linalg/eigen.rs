//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius norm drops below this
/// fraction of `‖M‖_F`.
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-12;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// as columns, so that `M = V·diag(λ)·V*`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Spectral radius, which is the operator norm of a Hermitian matrix.
    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.min_eigenvalue().abs().max(self.max_eigenvalue().abs())
    }

    /// `V·diag(values)·V*` for arbitrary real spectral values.
    pub fn synthesize(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lam) in values.iter().enumerate() {
                    if lam != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * lam;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.synthesize(&self.eigenvalues)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column_values(k)
    }
}

/// Decomposes a Hermitian matrix. The input is symmetrized before rotating,
/// so asymmetry within the acceptance tolerance does not leak into the
/// result.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    m.require_hermitian()?;
    let n = m.rows();
    let h = m.hermitian_part();
    let mut a: Vec<Complex64> = h.as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n);

    let scale = h.frobenius_norm();
    let threshold = OFF_DIAGONAL_THRESHOLD * scale;
    let mut converged = scale == 0.0 || n < 2;
    let mut off = 0.0;

    let mut sweep = 0;
    while !converged {
        off = off_diagonal_norm(&a, n);
        if off <= threshold {
            converged = true;
            break;
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweep += 1;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_diagonal: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, dst)] = v[(row, src)];
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided rotation annihilating `a[p][q]`.
///
/// The rotation is `J = U·R` where `U = diag(1, e^{-iφ})` on (p, q) makes the
/// pivot real and `R` is the classical real Jacobi rotation.
fn rotate(a: &mut [Complex64], v: &mut ComplexMatrix, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Below roundoff relative to the diagonal: drop it.
    if mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = Complex64::new(0.0, 0.0);
        a[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A <- A·J
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * jpp + akq * jqp;
        a[k * n + q] = akp * jpq + akq * jqq;
    }
    // A <- J*·A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
        a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;

    // V <- V·J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
