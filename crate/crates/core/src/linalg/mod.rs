//! Dense complex linear algebra: arithmetic, Hermitian eigendecomposition,
//! spectral functional calculus and positive-semidefiniteness verdicts.

mod calculus;
mod eigen;
mod matrix;

pub use calculus::{
    apply_spectral, clamp_tolerance, matrix_function, matrix_power, operator_norm, power_of,
    psd_verdict, PsdVerdict, CLAMP_RELATIVE, PSD_RELATIVE,
};
pub use eigen::{hermitian_eig, SpectralDecomposition, MAX_SWEEPS, OFF_DIAGONAL_THRESHOLD};
pub use matrix::{vdot, vnorm, ComplexMatrix};
