//! Spectral functional calculus and positivity verdicts.

use serde::Serialize;

use super::{hermitian_eig, ComplexMatrix, SpectralDecomposition};
use crate::error::{Error, Result};

/// Relative band around zero inside which eigenvalues are treated as exact
/// zeros before taking powers.
pub const CLAMP_RELATIVE: f64 = 1e-10;
/// Relative default tolerance for [`psd_verdict`].
pub const PSD_RELATIVE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
}

impl PsdVerdict {
    pub fn new(min_eigenvalue: f64, tolerance: f64) -> Self {
        Self {
            is_psd: min_eigenvalue >= -tolerance,
            min_eigenvalue,
            tolerance,
        }
    }
}

/// `V·diag(f(λ))·V*`, symmetrized on output.
///
/// Fails with a domain error when `f` is not finite at some eigenvalue.
pub fn matrix_function(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let d = hermitian_eig(m)?;
    apply_spectral(&d, "f", f)
}

/// Applies `f` to an existing decomposition.
pub fn apply_spectral(
    d: &SpectralDecomposition,
    label: &str,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix> {
    let values = d
        .eigenvalues
        .iter()
        .map(|&lam| {
            let v = f(lam);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Domain {
                    label: label.to_string(),
                    at: lam,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(d.synthesize(&values).hermitian_part())
}

/// `clamp_tol = 1e-10·max(1, ‖M‖)` for a decomposed Hermitian `M`.
pub fn clamp_tolerance(d: &SpectralDecomposition) -> f64 {
    CLAMP_RELATIVE * d.max_abs_eigenvalue().max(1.0)
}

/// `M^r` by spectral calculus.
///
/// Eigenvalues with `|λ| ≤ clamp_tol` are set to zero first. Integer
/// exponents accept negative eigenvalues; fractional ones require the rest of
/// the spectrum to be nonnegative. `M^0` is the identity.
pub fn matrix_power(m: &ComplexMatrix, r: f64) -> Result<ComplexMatrix> {
    let d = hermitian_eig(m)?;
    power_of(&d, r)
}

pub fn power_of(d: &SpectralDecomposition, r: f64) -> Result<ComplexMatrix> {
    let tol = clamp_tolerance(d);
    let integral = r.fract() == 0.0 && r.abs() <= i32::MAX as f64;
    if !integral {
        if let Some(&lam) = d.eigenvalues.iter().find(|&&lam| lam < -tol) {
            return Err(Error::Negative {
                eigenvalue: lam,
                tolerance: tol,
                exponent: r,
            });
        }
    }
    apply_spectral(d, &format!("u^{r}"), |lam| {
        let lam = if lam.abs() <= tol { 0.0 } else { lam };
        if integral {
            lam.powi(r as i32)
        } else {
            lam.powf(r)
        }
    })
}

/// Positive-semidefiniteness at tolerance `tol`, defaulting to
/// `1e-9·max(1, ‖M‖)`.
pub fn psd_verdict(m: &ComplexMatrix, tol: Option<f64>) -> Result<PsdVerdict> {
    let d = hermitian_eig(m)?;
    let tolerance = tol.unwrap_or_else(|| PSD_RELATIVE * d.max_abs_eigenvalue().max(1.0));
    Ok(PsdVerdict::new(d.min_eigenvalue(), tolerance))
}

/// Largest singular value, `sqrt(λ_max(M*M))`.
///
/// # Panics
///
/// Only if the Jacobi solver fails to converge on the Gram matrix, which
/// does not happen for finite input of moderate size.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let gram = m
        .adjoint()
        .matmul(m)
        .expect("M*M is always defined")
        .hermitian_part();
    let d = hermitian_eig(&gram).expect("Jacobi iteration on a Gram matrix");
    d.max_eigenvalue().max(0.0).sqrt()
}
