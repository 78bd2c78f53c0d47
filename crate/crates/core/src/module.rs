//! The Hilbert `M_n(ℂ)`-module `ℂ^{m×n}`: inner product `⟨x, y⟩ = x*y`,
//! right action by matrix multiplication, and adjointable operators as left
//! multiplication `L_t: x ↦ t·x` by `m×m` matrices. The case `m = n` is the
//! algebra viewed as a module over itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, psd_verdict, ComplexMatrix, PsdVerdict};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ModuleElement {
    value: ComplexMatrix,
}

impl ModuleElement {
    pub fn new(value: ComplexMatrix) -> Self {
        Self { value }
    }

    pub fn value(&self) -> &ComplexMatrix {
        &self.value
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.value
    }

    /// `(m, n)` of the ambient module.
    pub fn shape(&self) -> (usize, usize) {
        self.value.shape()
    }

    /// Right action `x·a` for `a ∈ M_n`.
    pub fn right_mul(&self, a: &ComplexMatrix) -> Result<Self> {
        Ok(Self::new(self.value.matmul(a)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.value.add(&other.value)?))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.value.scale(factor))
    }

    /// Module norm `‖x‖ = ‖⟨x, x⟩‖^{1/2}`, the operator norm of `x`.
    pub fn norm(&self) -> f64 {
        operator_norm(&self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.max_abs() == 0.0
    }
}

/// Left multiplication `L_t` by an `m×m` matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleOperator {
    value: ComplexMatrix,
    self_adjoint: bool,
    positive: bool,
}

impl ModuleOperator {
    pub fn new(value: ComplexMatrix) -> Result<Self> {
        if !value.is_square() {
            return Err(Error::NotSquare {
                op: "module operator",
                rows: value.rows(),
                cols: value.cols(),
            });
        }
        let self_adjoint = value.require_hermitian().is_ok();
        let positive = self_adjoint && psd_verdict(&value, None)?.is_psd;
        Ok(Self {
            value,
            self_adjoint,
            positive,
        })
    }

    pub fn value(&self) -> &ComplexMatrix {
        &self.value
    }

    pub fn dim(&self) -> usize {
        self.value.rows()
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.self_adjoint
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn norm(&self) -> f64 {
        operator_norm(&self.value)
    }

    pub fn require_self_adjoint(&self) -> Result<()> {
        if self.self_adjoint {
            Ok(())
        } else {
            Err(Error::Precondition("operator t must be self-adjoint".into()))
        }
    }

    pub fn require_positive(&self) -> Result<()> {
        if self.positive {
            Ok(())
        } else {
            Err(Error::Precondition("operator t must be positive".into()))
        }
    }
}

/// `⟨x, y⟩ = x*·y ∈ M_n`.
pub fn inner_product(x: &ModuleElement, y: &ModuleElement) -> Result<ComplexMatrix> {
    if x.shape() != y.shape() {
        let (lr, lc) = x.shape();
        let (rr, rc) = y.shape();
        return Err(Error::Dimension {
            op: "inner product",
            left_rows: lr,
            left_cols: lc,
            right_rows: rr,
            right_cols: rc,
        });
    }
    x.value.adjoint().matmul(&y.value)
}

pub fn op_apply(t: &ModuleOperator, x: &ModuleElement) -> Result<ModuleElement> {
    Ok(ModuleElement::new(t.value.matmul(&x.value)?))
}

/// PSD verdict of `⟨t x, x⟩ = x*·t·x` for a positive `t`.
pub fn positivity_witness(t: &ModuleOperator, x: &ModuleElement) -> Result<PsdVerdict> {
    t.require_positive()?;
    let tx = op_apply(t, x)?;
    let ip = inner_product(&tx, x)?.hermitian_part();
    psd_verdict(&ip, None)
}
