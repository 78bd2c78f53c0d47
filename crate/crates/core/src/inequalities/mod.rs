//! Checkers for the Mond–Pečarić and Hölder–McCarty families.
//!
//! Every checker returns an [`InequalityReport`] whose `difference` is
//! oriented so that the inequality holds exactly when the difference is
//! nonnegative (scalar families) or positive semidefinite (matrix families).
//! For exponent families this means `rhs − lhs` when `r ≥ 1` and `lhs − rhs`
//! when `0 < r < 1`.

mod reference;
mod search;

pub use reference::{
    evaluate_reference_instance, reference_instances, reproduce_paper_counterexamples, EntryCheck,
    ReferenceInstance, InstanceReproduction, EXACT_ENTRY_TOLERANCE, PRINT_TOLERANCE,
};
pub use search::{search_counterexamples, Finding, SearchConfig, SearchFamily, R_EXCLUSION};

use num_complex::Complex64;
use serde::Serialize;

use crate::convexity::{convexity_check, ScalarFunction};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, operator_norm, power_of, psd_verdict, vdot, vnorm, ComplexMatrix};
use crate::module::{ModuleElement, ModuleOperator};
use crate::state::{pure_states_diagonal, DiagonalAlgebraElement, State};

/// Relative slack for the scalar McCarty families.
pub const SCALAR_RELATIVE: f64 = 1e-8;
/// Relative slack for the scalar Mond–Pečarić comparison.
pub const MOND_PECARIC_RELATIVE: f64 = 1e-9;
/// Relative tolerance for PSD verdicts of matrix differences.
pub const MATRIX_RELATIVE: f64 = 1e-9;
/// `ρ(⟨x, x⟩)` at or below this is a degenerate instance.
pub const DEGENERATE_THRESHOLD: f64 = 1e-12;
/// Grid used to confirm convexity before a Mond–Pečarić check.
pub const CONVEXITY_GRID: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    HilbertMccarty,
    MondPecaricState,
    StateMccarty,
    NormMccarty,
    LoewnerMccarty,
    CommutativeLoewner,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::HilbertMccarty,
        Family::MondPecaricState,
        Family::StateMccarty,
        Family::NormMccarty,
        Family::LoewnerMccarty,
        Family::CommutativeLoewner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::HilbertMccarty => "hilbert-mccarty",
            Family::MondPecaricState => "mond-pecaric-state",
            Family::StateMccarty => "state-mccarty",
            Family::NormMccarty => "norm-mccarty",
            Family::LoewnerMccarty => "loewner-mccarty",
            Family::CommutativeLoewner => "commutative-loewner",
        }
    }

    /// Families whose inequality is a theorem.
    pub fn is_theorem(self) -> bool {
        self != Family::LoewnerMccarty
    }

    /// Families compared in the Löwner order.
    pub fn is_matrix(self) -> bool {
        matches!(self, Family::LoewnerMccarty | Family::CommutativeLoewner)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    /// Accepts the full names plus `hilbert`, `mond-pecaric`, `state`, `norm`,
    /// `loewner` and `commutative`.
    fn from_str(s: &str) -> Result<Self> {
        let family = match s {
            "hilbert-mccarty" | "hilbert" => Family::HilbertMccarty,
            "mond-pecaric-state" | "mond-pecaric" => Family::MondPecaricState,
            "state-mccarty" | "state" => Family::StateMccarty,
            "norm-mccarty" | "norm" => Family::NormMccarty,
            "loewner-mccarty" | "loewner" => Family::LoewnerMccarty,
            "commutative-loewner" | "commutative" => Family::CommutativeLoewner,
            other => return Err(Error::Usage(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }
}

/// The exponent `r` or the label of the convex function.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Parameter {
    Exponent(f64),
    Function(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Scalar(f64),
    Matrix(ComplexMatrix),
}

impl Quantity {
    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            Quantity::Scalar(v) => Some(*v),
            Quantity::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&ComplexMatrix> {
        match self {
            Quantity::Scalar(_) => None,
            Quantity::Matrix(m) => Some(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub family: Family,
    pub r_or_f: Parameter,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub difference: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<f64>,
    pub holds: bool,
    pub tolerance: f64,
    /// `ρ(⟨x, x⟩)` vanished, so both sides are zero.
    pub degenerate: bool,
    /// Value of the oriented difference at each pure state (commutative
    /// family only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure_state_values: Option<Vec<f64>>,
}

impl InequalityReport {
    fn scalar(family: Family, r_or_f: Parameter, lhs: f64, rhs: f64, difference: f64, tolerance: f64) -> Self {
        Self {
            family,
            r_or_f,
            lhs: Quantity::Scalar(lhs),
            rhs: Quantity::Scalar(rhs),
            difference: Quantity::Scalar(difference),
            min_eigenvalue: None,
            holds: difference >= -tolerance,
            tolerance,
            degenerate: false,
            pure_state_values: None,
        }
    }

    fn matrix(
        family: Family,
        r: f64,
        lhs: ComplexMatrix,
        rhs: ComplexMatrix,
        difference: ComplexMatrix,
    ) -> Result<Self> {
        let tolerance = MATRIX_RELATIVE * operator_norm(&lhs).max(operator_norm(&rhs)).max(1.0);
        let verdict = psd_verdict(&difference, Some(tolerance))?;
        Ok(Self {
            family,
            r_or_f: Parameter::Exponent(r),
            lhs: Quantity::Matrix(lhs),
            rhs: Quantity::Matrix(rhs),
            difference: Quantity::Matrix(difference),
            min_eigenvalue: Some(verdict.min_eigenvalue),
            holds: verdict.is_psd,
            tolerance,
            degenerate: false,
            pure_state_values: None,
        })
    }

    /// Smallest eigenvalue of the difference, or the scalar difference.
    pub fn margin(&self) -> f64 {
        match (self.min_eigenvalue, &self.difference) {
            (Some(m), _) => m,
            (None, Quantity::Scalar(d)) => *d,
            (None, Quantity::Matrix(_)) => unreachable!("matrix reports carry min_eigenvalue"),
        }
    }

    /// The same report judged at another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.holds = self.degenerate || self.margin() >= -tolerance;
        self
    }
}

fn require_exponent(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("exponent r must be positive, got {r}")))
    }
}

fn require_nonzero(x: &ModuleElement) -> Result<()> {
    if x.is_zero() {
        Err(Error::Precondition("x must be nonzero".into()))
    } else {
        Ok(())
    }
}

fn scalar_power(u: f64, r: f64) -> f64 {
    if r == 1.0 {
        u
    } else if r.fract() == 0.0 && r.abs() <= i32::MAX as f64 {
        u.powi(r as i32)
    } else {
        u.powf(r)
    }
}

/// `‖x‖^{2(r−1)}`.
fn norm_factor(norm: f64, r: f64) -> f64 {
    if r == 1.0 {
        1.0
    } else {
        norm.powf(2.0 * (r - 1.0))
    }
}

/// `M^r` for a PSD `M`, flooring round-off negatives at zero before the
/// clamp band is applied. `M^1` is `M` itself.
fn psd_power(m: &ComplexMatrix, r: f64) -> Result<ComplexMatrix> {
    if r == 1.0 {
        return Ok(m.hermitian_part());
    }
    let mut d = hermitian_eig(m)?;
    for lam in &mut d.eigenvalues {
        *lam = lam.max(0.0);
    }
    power_of(&d, r)
}

/// `x*·a·x`, symmetrized.
fn sandwich(x: &ModuleElement, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let x = x.value();
    Ok(x.adjoint().matmul(a)?.matmul(x)?.hermitian_part())
}

fn oriented(lhs: f64, rhs: f64, r: f64) -> f64 {
    if r >= 1.0 {
        rhs - lhs
    } else {
        lhs - rhs
    }
}

fn scalar_tolerance(relative: f64, lhs: f64, rhs: f64) -> f64 {
    relative * lhs.abs().max(rhs.abs()).max(1.0)
}

/// `⟨Tx, x⟩^r` against `‖x‖^{2(r−1)}⟨T^r x, x⟩` on `ℂ^n`.
pub fn check_hilbert_mccarty(t: &ComplexMatrix, x: &[Complex64], r: f64) -> Result<InequalityReport> {
    require_exponent(r)?;
    let op = ModuleOperator::new(t.clone())?;
    op.require_positive()?;
    if t.cols() != x.len() {
        return Err(Error::Length {
            expected: t.cols(),
            actual: x.len(),
        });
    }
    let norm = vnorm(x);
    if norm == 0.0 {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let th = t.hermitian_part();
    let inner = vdot(x, &th.apply(x)?).re.max(0.0);
    let lhs = scalar_power(inner, r);
    let tr = psd_power(&th, r)?;
    let rhs = norm_factor(norm, r) * vdot(x, &tr.apply(x)?).re;
    Ok(InequalityReport::scalar(
        Family::HilbertMccarty,
        Parameter::Exponent(r),
        lhs,
        rhs,
        oriented(lhs, rhs, r),
        scalar_tolerance(SCALAR_RELATIVE, lhs, rhs),
    ))
}

/// `f(ρ(⟨t x₀, x₀⟩)) ≤ ρ(⟨f(t) x₀, x₀⟩)` with `x₀ = x/√ρ(⟨x, x⟩)`.
///
/// The spectrum of `t` must lie in the domain of `f`.
pub fn check_mond_pecaric_state(
    t: &ModuleOperator,
    rho: &State,
    x: &ModuleElement,
    f: &ScalarFunction,
) -> Result<InequalityReport> {
    t.require_self_adjoint()?;
    if !convexity_check(f, CONVEXITY_GRID) {
        return Err(Error::NotConvex(f.label().to_string()));
    }
    let th = t.value().hermitian_part();
    let f_t = f.apply_matrix(&th)?;
    let param = Parameter::Function(f.label().to_string());
    let q = rho.eval_real(&sandwich(x, &ComplexMatrix::identity(x.shape().0))?)?;
    if q <= DEGENERATE_THRESHOLD {
        let mut report = InequalityReport::scalar(
            Family::MondPecaricState,
            param,
            0.0,
            0.0,
            0.0,
            MOND_PECARIC_RELATIVE,
        );
        report.degenerate = true;
        return Ok(report);
    }
    let x0 = x.scale(1.0 / q.sqrt());
    let (a, b) = f.domain();
    let s = rho.eval_real(&sandwich(&x0, &th)?)?.clamp(a, b);
    let lhs = f.eval(s);
    let rhs = rho.eval_real(&sandwich(&x0, &f_t)?)?;
    Ok(InequalityReport::scalar(
        Family::MondPecaricState,
        param,
        lhs,
        rhs,
        rhs - lhs,
        scalar_tolerance(MOND_PECARIC_RELATIVE, lhs, rhs),
    ))
}

/// `ρ(⟨tx, x⟩)^r` against `‖x‖^{2(r−1)}·ρ(⟨t^r x, x⟩)`.
pub fn check_state_mccarty(
    t: &ModuleOperator,
    rho: &State,
    x: &ModuleElement,
    r: f64,
) -> Result<InequalityReport> {
    require_exponent(r)?;
    t.require_positive()?;
    require_nonzero(x)?;
    let th = t.value().hermitian_part();
    let q = rho.eval_real(&sandwich(x, &ComplexMatrix::identity(x.shape().0))?)?;
    let lhs = scalar_power(rho.eval_real(&sandwich(x, &th)?)?.max(0.0), r);
    let tr = psd_power(&th, r)?;
    let rhs = norm_factor(x.norm(), r) * rho.eval_real(&sandwich(x, &tr)?)?;
    let mut report = InequalityReport::scalar(
        Family::StateMccarty,
        Parameter::Exponent(r),
        lhs,
        rhs,
        oriented(lhs, rhs, r),
        scalar_tolerance(SCALAR_RELATIVE, lhs, rhs),
    );
    report.degenerate = q <= DEGENERATE_THRESHOLD;
    Ok(report)
}

/// `‖⟨tx, x⟩‖^r` against `‖x‖^{2(r−1)}·‖⟨t^r x, x⟩‖`.
pub fn check_norm_mccarty(t: &ModuleOperator, x: &ModuleElement, r: f64) -> Result<InequalityReport> {
    require_exponent(r)?;
    t.require_positive()?;
    require_nonzero(x)?;
    let th = t.value().hermitian_part();
    let lhs = scalar_power(operator_norm(&sandwich(x, &th)?), r);
    let tr = psd_power(&th, r)?;
    let rhs = norm_factor(x.norm(), r) * operator_norm(&sandwich(x, &tr)?);
    Ok(InequalityReport::scalar(
        Family::NormMccarty,
        Parameter::Exponent(r),
        lhs,
        rhs,
        oriented(lhs, rhs, r),
        scalar_tolerance(SCALAR_RELATIVE, lhs, rhs),
    ))
}

/// `A = ⟨tx, x⟩^r` against `B = ‖x‖^{2(r−1)}·⟨t^r x, x⟩` in the Löwner order.
///
/// Not a theorem: `holds = false` is a legitimate outcome.
pub fn check_loewner_mccarty(t: &ModuleOperator, x: &ModuleElement, r: f64) -> Result<InequalityReport> {
    require_exponent(r)?;
    t.require_positive()?;
    require_nonzero(x)?;
    let th = t.value().hermitian_part();
    let lhs = psd_power(&sandwich(x, &th)?, r)?;
    let tr = psd_power(&th, r)?;
    let rhs = sandwich(x, &tr)?.scale(norm_factor(x.norm(), r));
    let difference = if r >= 1.0 { rhs.sub(&lhs)? } else { lhs.sub(&rhs)? };
    InequalityReport::matrix(Family::LoewnerMccarty, r, lhs, rhs, difference)
}

/// The Löwner-order inequality in the diagonal algebra, coordinatewise.
pub fn check_commutative_loewner(
    t: &DiagonalAlgebraElement,
    x: &DiagonalAlgebraElement,
    r: f64,
) -> Result<InequalityReport> {
    require_exponent(r)?;
    if t.dim() != x.dim() {
        return Err(Error::Length {
            expected: t.dim(),
            actual: x.dim(),
        });
    }
    if let Some(bad) = t.values().iter().find(|z| z.im != 0.0 || z.re < 0.0) {
        return Err(Error::Precondition(format!(
            "t must have nonnegative real entries, found {bad}"
        )));
    }
    let norm = x.norm();
    if norm == 0.0 {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let factor = norm_factor(norm, r);
    let mut lhs = Vec::with_capacity(t.dim());
    let mut rhs = Vec::with_capacity(t.dim());
    for (tk, xk) in t.values().iter().zip(x.values()) {
        let w = xk.norm_sqr();
        lhs.push(scalar_power(tk.re * w, r));
        rhs.push(factor * scalar_power(tk.re, r) * w);
    }
    let diff: Vec<f64> = lhs
        .iter()
        .zip(&rhs)
        .map(|(&l, &h)| oriented(l, h, r))
        .collect();
    let difference = ComplexMatrix::from_real_diagonal(&diff);
    let pure_state_values = pure_states_diagonal(t.dim())
        .iter()
        .map(|s| s.eval_real(&difference))
        .collect::<Result<Vec<_>>>()?;
    let mut report = InequalityReport::matrix(
        Family::CommutativeLoewner,
        r,
        ComplexMatrix::from_real_diagonal(&lhs),
        ComplexMatrix::from_real_diagonal(&rhs),
        difference,
    )?;
    report.pure_state_values = Some(pure_state_values);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::make_state;

    fn real(r: usize, c: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(r, c, v).unwrap()
    }

    fn op(v: &[f64]) -> ModuleOperator {
        ModuleOperator::new(real(2, 2, v)).unwrap()
    }

    fn el(v: &[f64]) -> ModuleElement {
        ModuleElement::new(real(2, 2, v))
    }

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&u| Complex64::new(u, 0.0)).collect()
    }

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn hilbert_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let id = check_hilbert_mccarty(&ComplexMatrix::identity(2), &c(&[s, s]), 2.0).unwrap();
        assert!((id.lhs.as_scalar().unwrap() - 1.0).abs() < 1e-12);
        assert!((id.rhs.as_scalar().unwrap() - 1.0).abs() < 1e-12);

        let rep = check_hilbert_mccarty(&ComplexMatrix::from_real_diagonal(&[1.0, 3.0]), &c(&[s, s]), 2.0)
            .unwrap();
        assert!((rep.lhs.as_scalar().unwrap() - 4.0).abs() < 1e-12);
        assert!((rep.rhs.as_scalar().unwrap() - 5.0).abs() < 1e-12);
        assert!(rep.holds);

        let t = real(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let one = check_hilbert_mccarty(&t, &c(&[0.3, -1.2]), 1.0).unwrap();
        assert_eq!(one.difference.as_scalar().unwrap(), 0.0);

        let neg = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert!(matches!(
            check_hilbert_mccarty(&neg, &c(&[1.0, 0.0]), 2.0),
            Err(Error::Precondition(_))
        ));
        assert!(check_hilbert_mccarty(&t, &c(&[0.0, 0.0]), 2.0).is_err());
        assert!(check_hilbert_mccarty(&t, &c(&[1.0, 0.0]), 0.0).is_err());
    }

    #[test]
    fn hilbert_reverse_direction() {
        let t = ComplexMatrix::from_real_diagonal(&[1.0, 9.0]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rep = check_hilbert_mccarty(&t, &c(&[s, s]), 0.5).unwrap();
        // lhs = 5^{1/2}, rhs = (1 + 3)/2
        assert!((rep.lhs.as_scalar().unwrap() - 5f64.sqrt()).abs() < 1e-12);
        assert!((rep.rhs.as_scalar().unwrap() - 2.0).abs() < 1e-12);
        assert!(rep.holds);
        assert!(rep.difference.as_scalar().unwrap() > 0.0);
    }

    #[test]
    fn mond_pecaric_examples() {
        let t = op(&[2.0, 1.0, 1.0, 2.0]);
        let rho = State::maximally_mixed(2);
        let x = ModuleElement::new(ComplexMatrix::identity(2));

        let cube = ScalarFunction::from_label("pow:3", 0.0, 3.0).unwrap();
        let rep = check_mond_pecaric_state(&t, &rho, &x, &cube).unwrap();
        // ρ(t) = 2 and ρ(t³) = (1 + 27)/2
        assert!((rep.lhs.as_scalar().unwrap() - 8.0).abs() < 1e-9);
        assert!((rep.rhs.as_scalar().unwrap() - 14.0).abs() < 1e-9);
        assert!(rep.holds);

        let id = ScalarFunction::from_label("id", -3.0, 3.0).unwrap();
        let rep = check_mond_pecaric_state(&t, &rho, &x, &id).unwrap();
        assert!(rep.difference.as_scalar().unwrap().abs() < 1e-12);

        let root = ScalarFunction::from_label("negpow:0.5", 0.0, 3.0).unwrap();
        let y = el(&[1.0, 2.0, -1.0, 0.5]);
        let rep = check_mond_pecaric_state(&t, &rho, &y, &root).unwrap();
        assert!(rep.holds && !rep.degenerate);
    }

    #[test]
    fn mond_pecaric_errors_and_degenerate() {
        let t = op(&[2.0, 1.0, 1.0, 2.0]);
        let rho = State::maximally_mixed(2);
        let x = ModuleElement::new(ComplexMatrix::identity(2));
        let concave = ScalarFunction::new("sqrt", 0.0, 3.0, f64::sqrt).unwrap();
        assert!(matches!(
            check_mond_pecaric_state(&t, &rho, &x, &concave),
            Err(Error::NotConvex(_))
        ));
        let narrow = ScalarFunction::from_label("exp", -1.0, 2.0).unwrap();
        assert!(matches!(
            check_mond_pecaric_state(&t, &rho, &x, &narrow),
            Err(Error::Domain { .. })
        ));
        let pure = make_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();
        let cube = ScalarFunction::from_label("pow:3", 0.0, 3.0).unwrap();
        let rep = check_mond_pecaric_state(&t, &pure, &el(&[0.0, 1.0, 0.0, 2.0]), &cube).unwrap();
        assert!(rep.degenerate && rep.holds);
    }

    #[test]
    fn state_mccarty_examples() {
        let t = op(&[2.0, 1.0, 1.0, 2.0]);
        let x = el(&[1.0, 1.0, 0.0, 1.0]);
        let rho = State::maximally_mixed(2);
        let rep = check_state_mccarty(&t, &rho, &x, 3.0).unwrap();
        // (tr(x*tx)/2)³ and φ⁴·tr(x*t³x)/2
        assert!((rep.lhs.as_scalar().unwrap() - 64.0).abs() < 1e-9);
        assert!((rep.rhs.as_scalar().unwrap() - GOLDEN.powi(4) * 34.0).abs() < 1e-9);
        assert!(rep.holds);

        let one = check_state_mccarty(&t, &rho, &x, 1.0).unwrap();
        assert_eq!(one.difference.as_scalar().unwrap(), 0.0);

        let pure = make_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();
        let rep = check_state_mccarty(&t, &pure, &el(&[0.0, 1.0, 0.0, 2.0]), 3.0).unwrap();
        assert!(rep.degenerate && rep.holds);
        assert!(rep.lhs.as_scalar().unwrap().abs() < 1e-12);
        assert!(rep.rhs.as_scalar().unwrap().abs() < 1e-12);
    }

    #[test]
    fn norm_mccarty_examples() {
        let t = op(&[2.0, 1.0, 1.0, 2.0]);
        let x = el(&[1.0, 1.0, 0.0, 1.0]);
        let rep = check_norm_mccarty(&t, &x, 3.0).unwrap();
        let lhs = (4.0 + 13f64.sqrt()).powi(3);
        let rhs = GOLDEN.powi(4) * (34.0 + 1129f64.sqrt());
        assert!((rep.lhs.as_scalar().unwrap() - lhs).abs() < 1e-8);
        assert!((rep.rhs.as_scalar().unwrap() - rhs).abs() < 1e-8);
        assert!(rep.holds);

        let t2 = op(&[125.0, 75.0, 75.0, 45.0]);
        let x2 = el(&[9.0, 9.0, 1.0, -25.0]);
        assert!(check_norm_mccarty(&t2, &x2, 0.25).unwrap().holds);
        assert_eq!(
            check_norm_mccarty(&t, &x, 1.0).unwrap().difference.as_scalar().unwrap(),
            0.0
        );
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn loewner_first_instance() {
        let rep = check_loewner_mccarty(&op(&[2.0, 1.0, 1.0, 2.0]), &el(&[1.0, 1.0, 0.0, 1.0]), 3.0).unwrap();
        let a = rep.lhs.as_matrix().unwrap();
        assert!(a.max_abs_diff(&real(2, 2, &[98.0, 183.0, 183.0, 342.0])).unwrap() < 1e-9);
        // 40-digit reference values
        let b = real(
            2,
            2,
            &[95.957427527495584, 185.060753088741483, 185.060753088741483, 370.121506177482965],
        );
        assert!(rep.rhs.as_matrix().unwrap().max_abs_diff(&b).unwrap() < 1e-9);
        assert!((rep.min_eigenvalue.unwrap() - -2.1827082054127).abs() < 1e-9);
        let det = rep.difference.as_matrix().unwrap().determinant().unwrap().re;
        assert!((det - -61.68691769624716).abs() < 1e-8);
        assert!(!rep.holds);
    }

    #[test]
    fn rank_one_quarter_power_instance_has_singular_difference() {
        // x*tx = 180·ww* and x*t^{1/4}x ∝ ww* with w = (8, −5), so A − B is
        // a rank-one PSD matrix and its determinant vanishes.
        let rep =
            check_loewner_mccarty(&op(&[125.0, 75.0, 75.0, 45.0]), &el(&[9.0, 9.0, 1.0, -25.0]), 0.25)
                .unwrap();
        let a = real(2, 2, &[8.090131768669001, -5.056332355418126, -5.056332355418126, 3.160207722136328]);
        let b = real(2, 2, &[1.777133652602991, -1.110708532876869, -1.110708532876869, 0.694192833048043]);
        assert!(rep.lhs.as_matrix().unwrap().max_abs_diff(&a).unwrap() < 1e-9);
        assert!(rep.rhs.as_matrix().unwrap().max_abs_diff(&b).unwrap() < 1e-9);
        let det = rep.difference.as_matrix().unwrap().determinant().unwrap().re;
        assert!(det.abs() < 1e-9, "{det}");
        assert!(rep.holds);
    }

    #[test]
    fn loewner_at_one_is_exact_equality() {
        let rep = check_loewner_mccarty(&op(&[3.0, 1.0, 1.0, 1.0]), &el(&[1.0, -2.0, 0.5, 4.0]), 1.0).unwrap();
        assert_eq!(rep.difference.as_matrix().unwrap().max_abs(), 0.0);
        assert!(rep.holds);
    }

    #[test]
    fn loewner_preconditions() {
        let x = el(&[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            check_loewner_mccarty(&op(&[1.0, 0.0, 0.0, -1.0]), &x, 2.0),
            Err(Error::Precondition(_))
        ));
        assert!(check_loewner_mccarty(&op(&[1.0, 0.0, 0.0, 1.0]), &el(&[0.0; 4]), 2.0).is_err());
        assert!(check_loewner_mccarty(&op(&[1.0, 0.0, 0.0, 1.0]), &x, -1.0).is_err());
    }

    #[test]
    fn commutative_examples() {
        let rep = check_commutative_loewner(
            &DiagonalAlgebraElement::from_real(&[1.0, 4.0]),
            &DiagonalAlgebraElement::from_real(&[1.0, 1.0]),
            2.0,
        )
        .unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[1.0, 16.0]);
        assert_eq!(rep.lhs.as_matrix().unwrap(), &expected);
        assert_eq!(rep.rhs.as_matrix().unwrap(), &expected);
        assert!(rep.holds);

        let rep = check_commutative_loewner(
            &DiagonalAlgebraElement::from_real(&[2.0, 3.0]),
            &DiagonalAlgebraElement::from_real(&[1.0, 2.0]),
            3.0,
        )
        .unwrap();
        // |x_k|^{2r} t_k^r against ‖x‖^{2(r−1)} |x_k|² t_k^r with ‖x‖ = 2
        assert_eq!(rep.lhs.as_matrix().unwrap(), &ComplexMatrix::from_real_diagonal(&[8.0, 1728.0]));
        assert_eq!(rep.rhs.as_matrix().unwrap(), &ComplexMatrix::from_real_diagonal(&[128.0, 1728.0]));
        assert!(rep.holds);
        assert_eq!(rep.pure_state_values.as_deref(), Some(&[120.0, 0.0][..]));

        let one = check_commutative_loewner(
            &DiagonalAlgebraElement::from_real(&[2.0, 3.0]),
            &DiagonalAlgebraElement::from_real(&[1.0, 2.0]),
            1.0,
        )
        .unwrap();
        assert_eq!(one.min_eigenvalue, Some(0.0));

        assert!(matches!(
            check_commutative_loewner(
                &DiagonalAlgebraElement::from_real(&[-1.0, 3.0]),
                &DiagonalAlgebraElement::from_real(&[1.0, 2.0]),
                2.0,
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn retolerancing_rejudges() {
        let rep = check_loewner_mccarty(&op(&[2.0, 1.0, 1.0, 2.0]), &el(&[1.0, 1.0, 0.0, 1.0]), 3.0).unwrap();
        assert!(!rep.holds);
        let loose = rep.clone().with_tolerance(3.0);
        assert!(loose.holds);
        assert!(!loose.with_tolerance(1e-9).holds);
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("loewner".parse::<Family>().unwrap(), Family::LoewnerMccarty);
        assert!(matches!("bogus".parse::<Family>(), Err(Error::Usage(_))));
    }
}
