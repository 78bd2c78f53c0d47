//! Numerical toolkit for convex operator inequalities over finite-dimensional
//! C*-algebras and Hilbert C*-modules.
//!
//! The algebra is `M_n(ℂ)` (or its diagonal subalgebra), states are density
//! matrices, and the module is `ℂ^{m×n}` with inner product `⟨x, y⟩ = x*y`.
//! On top of that sit the state localization `E_ρ`, a supporting-line
//! construction for convex functions, and checkers for the Mond–Pečarić and
//! Hölder–McCarty families, including the Löwner-order variants that fail in
//! noncommutative algebras.

pub mod convexity;
pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod localization;
pub mod module;
pub mod sampling;
pub mod state;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
