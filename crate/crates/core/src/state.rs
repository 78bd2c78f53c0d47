//! States on `M_n(ℂ)` as density matrices, plus the diagonal (commutative)
//! subalgebra and its pure states.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, psd_verdict, ComplexMatrix};
use crate::sampling::{instance_rng, random_matrix, EntryDistribution};

pub const TRACE_TOLERANCE: f64 = 1e-10;

/// A state `ρ(a) = trace(D·a)` on `M_n(ℂ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct State {
    density: ComplexMatrix,
}

impl State {
    pub fn dim(&self) -> usize {
        self.density.rows()
    }

    pub fn density(&self) -> &ComplexMatrix {
        &self.density
    }

    /// `trace(D·a)`.
    pub fn eval(&self, a: &ComplexMatrix) -> Result<Complex64> {
        eval_state(self, a)
    }

    /// Real part of `ρ(a)`, for arguments known to be Hermitian.
    pub fn eval_real(&self, a: &ComplexMatrix) -> Result<f64> {
        Ok(self.eval(a)?.re)
    }

    /// Maximally mixed state `I/n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            density: ComplexMatrix::identity(n).scale(1.0 / n as f64),
        }
    }

    /// Vector state `a ↦ ⟨v, a v⟩` for a nonzero `v` (normalized here).
    pub fn vector_state(v: &[Complex64]) -> Result<Self> {
        let norm = crate::linalg::vnorm(v);
        if norm == 0.0 {
            return Err(Error::InvalidState("vector state of the zero vector".into()));
        }
        let unit: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        Ok(Self {
            density: ComplexMatrix::outer(&unit, &unit),
        })
    }
}

/// Validates `d` as a density matrix: Hermitian, PSD at the default
/// tolerance, unit trace within `1e-10`.
pub fn make_state(d: ComplexMatrix) -> Result<State> {
    if !d.is_square() {
        return Err(Error::InvalidState(format!(
            "density must be square, got {}x{}",
            d.rows(),
            d.cols()
        )));
    }
    let verdict = psd_verdict(&d, None).map_err(|e| Error::InvalidState(e.to_string()))?;
    if !verdict.is_psd {
        return Err(Error::InvalidState(format!(
            "density is not positive semidefinite (min eigenvalue {:e})",
            verdict.min_eigenvalue
        )));
    }
    let trace = d.trace();
    if (trace.re - 1.0).abs() > TRACE_TOLERANCE || trace.im.abs() > TRACE_TOLERANCE {
        return Err(Error::InvalidState(format!("trace is {trace}, expected 1")));
    }
    Ok(State {
        density: d.hermitian_part(),
    })
}

pub fn eval_state(rho: &State, a: &ComplexMatrix) -> Result<Complex64> {
    let d = &rho.density;
    if a.shape() != d.shape() {
        return Err(Error::Dimension {
            op: "state evaluation",
            left_rows: d.rows(),
            left_cols: d.cols(),
            right_rows: a.rows(),
            right_cols: a.cols(),
        });
    }
    let n = d.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += d[(i, j)] * a[(j, i)];
        }
    }
    Ok(acc)
}

/// The rank-one state at a unit eigenvector of the eigenvalue of largest
/// modulus; `|ρ(a)| = ‖a‖`.
pub fn eigenvector_state(a: &ComplexMatrix) -> Result<State> {
    let d = hermitian_eig(a)?;
    let n = d.dim();
    if n == 0 {
        return Err(Error::InvalidState("empty algebra".into()));
    }
    let k = if d.min_eigenvalue().abs() > d.max_eigenvalue().abs() {
        0
    } else {
        n - 1
    };
    State::vector_state(&d.eigenvector(k))
}

/// `max |ρ(a)|` over the eigenvector state and `trials` seeded random states.
///
/// For Hermitian `a` this equals `‖a‖`, attained by the eigenvector state.
pub fn norm_via_states(a: &ComplexMatrix, trials: usize, seed: u64) -> Result<f64> {
    let mut best = eigenvector_state(a)?.eval(a)?.norm();
    let n = a.rows();
    for k in 0..trials {
        let rho = random_state_from(&mut instance_rng(seed, k as u64), n);
        best = best.max(rho.eval(a)?.norm());
    }
    Ok(best)
}

/// The coordinate evaluations `diag(e_k)` of the diagonal algebra.
pub fn pure_states_diagonal(n: usize) -> Vec<State> {
    (0..n)
        .map(|k| {
            let mut values = vec![0.0; n];
            values[k] = 1.0;
            State {
                density: ComplexMatrix::from_real_diagonal(&values),
            }
        })
        .collect()
}

/// `D = G*G / trace(G*G)` with `G` complex standard normal; deterministic
/// per `(n, seed)`.
pub fn random_state(n: usize, seed: u64) -> State {
    random_state_from(&mut instance_rng(seed, 0), n)
}

pub fn random_state_from<R: Rng + ?Sized>(rng: &mut R, n: usize) -> State {
    loop {
        let g = random_matrix(rng, n, n, EntryDistribution::ComplexGaussian);
        let gram = g.adjoint().matmul(&g).expect("square").hermitian_part();
        let tr = gram.trace().re;
        if tr > 0.0 {
            return State {
                density: gram.scale(1.0 / tr),
            };
        }
    }
}

/// Element `diag(values)` of the commutative algebra of diagonal matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalAlgebraElement {
    values: Vec<Complex64>,
}

impl DiagonalAlgebraElement {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// Reads the diagonal of a matrix that must be diagonal.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() || !m.is_diagonal() {
            return Err(Error::Precondition(
                "commutative family needs diagonal matrices".into(),
            ));
        }
        Ok(Self {
            values: (0..m.rows()).map(|i| m[(i, i)]).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.values)
    }

    /// `max |value|`, the C*-norm.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(n, n, v).unwrap()
    }

    #[test]
    fn make_state_examples() {
        assert!(make_state(ComplexMatrix::identity(2).scale(0.5)).is_ok());
        assert!(make_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).is_ok());
        assert!(matches!(
            make_state(ComplexMatrix::from_real_diagonal(&[1.0, 1.0])),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(
            make_state(ComplexMatrix::from_real_diagonal(&[1.5, -0.5])),
            Err(Error::InvalidState(_))
        ));
        assert!(make_state(real(2, &[0.5, 0.5, 0.0, 0.5])).is_err());
    }

    #[test]
    fn eval_examples() {
        let a = real(2, &[2.0, 3.0, 3.0, 6.0]);
        let mixed = State::maximally_mixed(2);
        assert!((mixed.eval(&a).unwrap() - Complex64::new(4.0, 0.0)).norm() < 1e-15);
        let e1 = make_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();
        assert_eq!(e1.eval(&a).unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(mixed.eval(&ComplexMatrix::zeros(2, 2)).unwrap(), Complex64::new(0.0, 0.0));
        assert!((mixed.eval(&ComplexMatrix::identity(2)).unwrap().re - 1.0).abs() < 1e-15);
        assert!(mixed.eval(&ComplexMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn eigenvector_state_examples() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 3.0]);
        let rho = eigenvector_state(&a).unwrap();
        assert!(rho
            .density()
            .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0]))
            .unwrap()
            < 1e-12);
        assert!((rho.eval(&a).unwrap().re - 3.0).abs() < 1e-12);

        let a = real(2, &[2.0, 1.0, 1.0, 2.0]);
        assert!((eigenvector_state(&a).unwrap().eval(&a).unwrap().re - 3.0).abs() < 1e-8);

        let a = ComplexMatrix::identity(2).scale(-1.0);
        assert!((eigenvector_state(&a).unwrap().eval(&a).unwrap().norm() - 1.0).abs() < 1e-8);

        assert!(eigenvector_state(&real(2, &[0.0, 1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn norm_via_states_examples() {
        assert!((norm_via_states(&ComplexMatrix::identity(2), 10, 5).unwrap() - 1.0).abs() < 1e-12);
        let a = real(2, &[2.0, 1.0, 1.0, 2.0]);
        assert!((norm_via_states(&a, 100, 42).unwrap() - 3.0).abs() < 1e-8);
        assert_eq!(norm_via_states(&ComplexMatrix::zeros(2, 2), 10, 0).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_pure_states() {
        let states = pure_states_diagonal(1);
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].density(), &ComplexMatrix::identity(1));

        let d = ComplexMatrix::from_real_diagonal(&[2.0, 5.0]);
        let evals: Vec<f64> = pure_states_diagonal(2)
            .iter()
            .map(|s| s.eval(&d).unwrap().re)
            .collect();
        assert_eq!(evals, vec![2.0, 5.0]);

        let u = DiagonalAlgebraElement::from_real(&[2.0, 3.0]);
        let v = DiagonalAlgebraElement::from_real(&[4.0, 5.0]);
        let uv = u.mul(&v).to_matrix();
        for s in pure_states_diagonal(2) {
            let lhs = s.eval(&uv).unwrap();
            let rhs = s.eval(&u.to_matrix()).unwrap() * s.eval(&v.to_matrix()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let products: Vec<f64> = pure_states_diagonal(2)
            .iter()
            .map(|s| s.eval(&uv).unwrap().re)
            .collect();
        assert_eq!(products, vec![8.0, 15.0]);
    }

    #[test]
    fn random_states_are_valid_and_deterministic() {
        for seed in 0..20 {
            let rho = random_state(3, seed);
            assert!(make_state(rho.density().clone()).is_ok());
        }
        assert_eq!(random_state(2, 9), random_state(2, 9));
        assert_ne!(random_state(2, 9), random_state(2, 10));
    }

    #[test]
    fn diagonal_element_basics() {
        let d = DiagonalAlgebraElement::from_real(&[1.0, -4.0]);
        assert!(d.is_self_adjoint());
        assert_eq!(d.norm(), 4.0);
        let c = DiagonalAlgebraElement::new(vec![Complex64::new(0.0, 1.0)]);
        assert!(!c.is_self_adjoint());
        assert!(DiagonalAlgebraElement::from_matrix(&real(2, &[1.0, 1.0, 0.0, 1.0])).is_err());
    }
}
