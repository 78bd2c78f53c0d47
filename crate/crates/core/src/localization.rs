//! Localization of the module at a state.
//!
//! A state `ρ` gives `E = ℂ^{m×n}` the semi-inner product
//! `⟨x, y⟩_ρ = ρ(x*y)`. Quotienting by its null space `N_ρ` yields a
//! finite-dimensional Hilbert space `E_ρ` (already complete), the quotient
//! map `ι: x ↦ x + N_ρ`, and for each module operator `t` an operator `T`
//! on `E_ρ` with `T·ι(x) = ι(t·x)`.
//!
//! Coordinates: a module element is flattened row-major, so basis element
//! `e_{ij}` has index `i·n + j`. `E_ρ` is represented in the orthonormal basis
//! `b_k = w_k/√λ_k` built from the eigenpairs of the Gram matrix above the
//! rank threshold, and `ι(x)_k = b_k*·G·vec(x)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::convexity::ScalarFunction;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, operator_norm, vdot, vnorm, ComplexMatrix};
use crate::module::{inner_product, op_apply, ModuleElement, ModuleOperator};
use crate::sampling::{instance_rng, random_matrix, EntryDistribution};
use crate::state::State;

/// Gram eigenvalues above this fraction of `‖G‖` count towards the rank.
pub const RANK_RELATIVE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Localization {
    m: usize,
    n: usize,
    state: State,
    gram: ComplexMatrix,
    /// `(mn) × dim_quotient`; column `k` is `b_k`.
    basis: ComplexMatrix,
    /// `B*·G`, which maps `vec(x)` to `ι(x)`.
    projector: ComplexMatrix,
}

/// Matrix of the induced operator `T` in the orthonormal basis of `E_ρ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InducedOperator {
    pub matrix: ComplexMatrix,
    /// `max ‖T·ι(e_{ij}) − ι(t·e_{ij})‖` over the standard basis.
    pub well_defined_residual: f64,
}

impl InducedOperator {
    pub fn norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.matrix.apply(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransportReport {
    pub function: String,
    pub samples: usize,
    /// `max ‖T·ι(x) − ι(t·x)‖`.
    pub apply_residual: f64,
    /// `max ‖f(T)·ι(x) − ι(f(t)·x)‖`.
    pub function_residual: f64,
    /// `max |⟨T·ι(x), ι(y)⟩ − ρ(⟨t·x, y⟩)|`.
    pub form_residual: f64,
    pub tolerance: f64,
    pub induced_norm: f64,
    pub operator_norm: f64,
    pub passes: bool,
}

fn flatten(x: &ModuleElement) -> Vec<Complex64> {
    x.value().as_slice().to_vec()
}

fn unit(m: usize, n: usize, idx: usize) -> ModuleElement {
    let mut e = ComplexMatrix::zeros(m, n);
    e[(idx / n, idx % n)] = Complex64::new(1.0, 0.0);
    ModuleElement::new(e)
}

impl Localization {
    /// Builds `E_ρ` for the module `ℂ^{m×n}`; `rho` must act on `M_n`.
    pub fn build(m: usize, n: usize, rho: &State) -> Result<Self> {
        if rho.dim() != n {
            return Err(Error::Dimension {
                op: "localization",
                left_rows: m,
                left_cols: n,
                right_rows: rho.dim(),
                right_cols: rho.dim(),
            });
        }
        let mn = m * n;
        let mut gram = ComplexMatrix::zeros(mn, mn);
        for p in 0..mn {
            let ep = unit(m, n, p);
            for q in 0..mn {
                let eq = unit(m, n, q);
                gram[(p, q)] = rho.eval(&inner_product(&ep, &eq)?)?;
            }
        }
        let gram = gram.hermitian_part();
        let d = hermitian_eig(&gram)?;
        let threshold = RANK_RELATIVE * d.max_abs_eigenvalue();
        let kept: Vec<usize> = (0..d.dim())
            .filter(|&k| d.eigenvalues[k] > threshold)
            .collect();
        let mut basis = ComplexMatrix::zeros(mn, kept.len());
        for (col, &k) in kept.iter().enumerate() {
            let s = 1.0 / d.eigenvalues[k].sqrt();
            for row in 0..mn {
                basis[(row, col)] = d.eigenvectors[(row, k)] * s;
            }
        }
        let projector = basis.adjoint().matmul(&gram)?;
        Ok(Self {
            m,
            n,
            state: rho.clone(),
            gram,
            basis,
            projector,
        })
    }

    pub fn module_shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn gram(&self) -> &ComplexMatrix {
        &self.gram
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// `dim E_ρ`, the numerical rank of the Gram matrix.
    pub fn dim_quotient(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `x + N_ρ` in the orthonormal basis of `E_ρ`.
    pub fn iota(&self, x: &ModuleElement) -> Result<Vec<Complex64>> {
        if x.shape() != (self.m, self.n) {
            let (r, c) = x.shape();
            return Err(Error::Dimension {
                op: "iota",
                left_rows: self.m,
                left_cols: self.n,
                right_rows: r,
                right_cols: c,
            });
        }
        self.projector.apply(&flatten(x))
    }

    /// `T` with `T·ι(e_{ij}) = ι(t·e_{ij})`, i.e. `T = B*·G·L_t·B`.
    pub fn induced_operator(&self, t: &ModuleOperator) -> Result<InducedOperator> {
        if t.dim() != self.m {
            return Err(Error::Dimension {
                op: "induced operator",
                left_rows: self.m,
                left_cols: self.m,
                right_rows: t.dim(),
                right_cols: t.dim(),
            });
        }
        let mn = self.m * self.n;
        let dq = self.dim_quotient();
        // Column p of `images` is ι(t·e_p).
        let mut images = ComplexMatrix::zeros(dq, mn);
        for p in 0..mn {
            let img = self.iota(&op_apply(t, &unit(self.m, self.n, p))?)?;
            for (k, v) in img.into_iter().enumerate() {
                images[(k, p)] = v;
            }
        }
        let mut matrix = images.matmul(&self.basis)?;
        if t.is_self_adjoint() {
            matrix = matrix.hermitian_part();
        }
        let transported = matrix.matmul(&self.projector)?;
        let well_defined_residual = (0..mn)
            .map(|p| {
                let col_a = transported.column_values(p);
                let col_b = images.column_values(p);
                let diff: Vec<Complex64> = col_a.iter().zip(&col_b).map(|(a, b)| a - b).collect();
                vnorm(&diff)
            })
            .fold(0.0, f64::max);
        Ok(InducedOperator {
            matrix,
            well_defined_residual,
        })
    }

    /// Checks on seeded random `x, y` that `T·ι(x) = ι(t·x)`,
    /// `f(T)·ι(x) = ι(f(t)·x)` and `⟨T·ι(x), ι(y)⟩ = ρ(⟨t·x, y⟩)`, all to
    /// within `1e-8·max(1, ‖t‖, sup|f|)`.
    pub fn verify_transport(
        &self,
        t: &ModuleOperator,
        f: &ScalarFunction,
        samples: usize,
        seed: u64,
    ) -> Result<TransportReport> {
        t.require_self_adjoint()?;
        let induced = self.induced_operator(t)?;
        let f_t = ModuleOperator::new(f.apply_matrix(t.value())?)?;
        let f_big_t = f.apply_matrix(&induced.matrix)?;
        let t_norm = t.norm();
        let tolerance = 1e-8 * t_norm.max(f.sup_abs()).max(1.0);

        let mut apply_residual: f64 = 0.0;
        let mut function_residual: f64 = 0.0;
        let mut form_residual: f64 = 0.0;
        for k in 0..samples {
            let mut rng = instance_rng(seed, k as u64);
            let x = ModuleElement::new(random_matrix(
                &mut rng,
                self.m,
                self.n,
                EntryDistribution::ComplexGaussian,
            ));
            let y = ModuleElement::new(random_matrix(
                &mut rng,
                self.m,
                self.n,
                EntryDistribution::ComplexGaussian,
            ));
            let ix = self.iota(&x)?;
            let iy = self.iota(&y)?;
            let tx = op_apply(t, &x)?;

            let lhs = induced.apply(&ix)?;
            apply_residual = apply_residual.max(distance(&lhs, &self.iota(&tx)?));

            let flhs = f_big_t.apply(&ix)?;
            let frhs = self.iota(&op_apply(&f_t, &x)?)?;
            function_residual = function_residual.max(distance(&flhs, &frhs));

            let form = vdot(&lhs, &iy);
            let direct = self.state.eval(&inner_product(&tx, &y)?)?;
            form_residual = form_residual.max((form - direct).norm());
        }
        let induced_norm = induced.norm();
        Ok(TransportReport {
            function: f.label().to_string(),
            samples,
            apply_residual,
            function_residual,
            form_residual,
            tolerance,
            induced_norm,
            operator_norm: t_norm,
            passes: apply_residual <= tolerance
                && function_residual <= tolerance
                && form_residual <= tolerance,
        })
    }
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
