//! Seeded property suites over random instances.
//!
//! Each suite draws instance `k` from stream `(seed ^ salt, k)` with a salt
//! private to the suite, and reports the number of violations together with
//! the worst ratio `deficit / tolerance` seen (a suite passes when every
//! ratio is at most 1).

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::convexity::{convex_catalog, supporting_line, ScalarFunction, SupportCase};
use crate::error::Result;
use crate::inequalities::{
    check_commutative_loewner, check_hilbert_mccarty, check_loewner_mccarty, check_mond_pecaric_state,
    check_norm_mccarty, check_state_mccarty, InequalityReport, Quantity, R_EXCLUSION,
};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::localization::Localization;
use crate::module::{inner_product, ModuleElement, ModuleOperator};
use crate::sampling::{instance_rng, random_hermitian, random_matrix, random_psd, EntryDistribution};
use crate::state::{make_state, random_state_from, DiagonalAlgebraElement, State};

pub const DEFAULT_SEED: u64 = 20_240_611;
pub const THEOREM_INSTANCES: usize = 1000;
pub const GNS_INSTANCES: usize = 200;
pub const SUPPORT_SAMPLES: usize = 50;
pub const REDUCTION_INSTANCES: usize = 500;
/// Largest algebra / module dimension in the theorem suites.
pub const MAX_DIM: usize = 4;
const MAX_NOTES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub violations: usize,
    /// Largest `deficit / tolerance`; at most 1 on a clean run.
    pub worst_ratio: f64,
    pub passed: bool,
    pub elapsed_ms: f64,
    /// Descriptions of the first few violations.
    pub notes: Vec<String>,
}

struct Tracker {
    name: &'static str,
    trials: usize,
    violations: usize,
    worst: f64,
    notes: Vec<String>,
    start: Instant,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            trials: 0,
            violations: 0,
            worst: f64::NEG_INFINITY,
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, ratio: f64, describe: impl FnOnce() -> String) {
        self.trials += 1;
        self.worst = self.worst.max(ratio);
        if !ok {
            self.fail_without_trial(describe());
        }
    }

    fn fail_without_trial(&mut self, note: String) {
        self.violations += 1;
        if self.notes.len() < MAX_NOTES {
            self.notes.push(note);
        }
    }

    fn report(&mut self, k: usize, rep: Result<InequalityReport>) {
        match rep {
            Ok(rep) => {
                let ratio = -rep.margin() / rep.tolerance;
                self.check(rep.holds, ratio, || {
                    format!("instance {k}: margin {:e} at tolerance {:e}", rep.margin(), rep.tolerance)
                });
            }
            Err(e) => self.error(k, e),
        }
    }

    fn error(&mut self, k: usize, e: crate::Error) {
        self.trials += 1;
        self.worst = f64::INFINITY;
        self.fail_without_trial(format!("instance {k}: {e}"));
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            trials: self.trials,
            violations: self.violations,
            worst_ratio: if self.trials == 0 { 0.0 } else { self.worst },
            passed: self.violations == 0,
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
            notes: self.notes,
        }
    }
}

fn rng_for(seed: u64, salt: u64, k: usize) -> ChaCha8Rng {
    instance_rng(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15), k as u64)
}

/// `r ∈ [0.1, 4]` with `|r − 1| ≥ 1e-3`.
fn random_exponent(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let r: f64 = rng.random_range(0.1..=4.0);
        if (r - 1.0).abs() >= R_EXCLUSION {
            return r;
        }
    }
}

fn random_scale(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.random_range(-1.0..=1.0))
}

/// PSD `m×m` with a random scale; every fourth instance is rank deficient.
fn random_positive(rng: &mut ChaCha8Rng, m: usize, k: usize) -> ComplexMatrix {
    let t = if k % 4 == 3 && m > 1 {
        let rank = rng.random_range(1..m);
        let g = random_matrix(rng, rank, m, EntryDistribution::ComplexGaussian);
        g.adjoint().matmul(&g).expect("shapes agree").hermitian_part()
    } else {
        random_psd(rng, m, EntryDistribution::ComplexGaussian)
    };
    t.scale(random_scale(rng))
}

/// A random state; every fifth one is a pure vector state.
fn random_state_any(rng: &mut ChaCha8Rng, n: usize, k: usize) -> State {
    if k % 5 == 4 {
        let v = random_matrix(rng, n, 1, EntryDistribution::ComplexGaussian);
        State::vector_state(v.as_slice()).expect("nonzero sample")
    } else {
        random_state_from(rng, n)
    }
}

fn random_element(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ModuleElement {
    ModuleElement::new(random_matrix(rng, m, n, EntryDistribution::ComplexGaussian))
}

fn dim(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(1..=MAX_DIM)
}

/// Hermitian matrix with eigenvalues drawn uniformly from `[a, b]`.
fn hermitian_in(rng: &mut ChaCha8Rng, m: usize, a: f64, b: f64) -> ComplexMatrix {
    let basis = hermitian_eig(&random_hermitian(rng, m)).expect("Jacobi on a small matrix");
    let values: Vec<f64> = (0..m).map(|_| rng.random_range(a..=b)).collect();
    basis.synthesize(&values).hermitian_part()
}

pub fn hilbert_mccarty_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("hilbert-mccarty");
    for k in 0..instances {
        let mut rng = rng_for(seed, 1, k);
        let d = dim(&mut rng);
        let t = random_positive(&mut rng, d, k);
        let x = random_matrix(&mut rng, d, 1, EntryDistribution::ComplexGaussian);
        let r = random_exponent(&mut rng);
        tr.report(k, check_hilbert_mccarty(&t, x.as_slice(), r));
    }
    tr.finish()
}

pub fn state_mccarty_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("state-mccarty");
    for k in 0..instances {
        let mut rng = rng_for(seed, 2, k);
        let (m, n) = (dim(&mut rng), dim(&mut rng));
        let t = random_positive(&mut rng, m, k);
        let x = random_element(&mut rng, m, n);
        let rho = random_state_any(&mut rng, n, k);
        let r = random_exponent(&mut rng);
        let rep = ModuleOperator::new(t).and_then(|t| check_state_mccarty(&t, &rho, &x, r));
        tr.report(k, rep);
    }
    tr.finish()
}

pub fn norm_mccarty_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("norm-mccarty");
    for k in 0..instances {
        let mut rng = rng_for(seed, 3, k);
        let (m, n) = (dim(&mut rng), dim(&mut rng));
        let t = random_positive(&mut rng, m, k);
        let x = random_element(&mut rng, m, n);
        let r = random_exponent(&mut rng);
        let rep = ModuleOperator::new(t).and_then(|t| check_norm_mccarty(&t, &x, r));
        tr.report(k, rep);
    }
    tr.finish()
}

/// Cycles through the convex catalog; `t` has its spectrum inside the
/// catalog interval of the function.
pub fn mond_pecaric_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("mond-pecaric-state");
    let catalog: Vec<ScalarFunction> = convex_catalog()
        .iter()
        .map(|e| ScalarFunction::from_label(e.label, e.a, e.b).expect("catalog entries are valid"))
        .collect();
    for k in 0..instances {
        let mut rng = rng_for(seed, 4, k);
        let f = &catalog[k % catalog.len()];
        let (a, b) = f.domain();
        let (m, n) = (dim(&mut rng), dim(&mut rng));
        let t = hermitian_in(&mut rng, m, a, b);
        let x = random_element(&mut rng, m, n);
        let rho = random_state_any(&mut rng, n, k);
        let rep = ModuleOperator::new(t).and_then(|t| check_mond_pecaric_state(&t, &rho, &x, f));
        tr.report(k, rep);
    }
    tr.finish()
}

pub fn commutative_loewner_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("commutative-loewner");
    for k in 0..instances {
        let mut rng = rng_for(seed, 5, k);
        let d = dim(&mut rng);
        let t: Vec<f64> = (0..d)
            .map(|i| if k % 4 == 3 && i == 0 { 0.0 } else { rng.random_range(0.0..=10.0) })
            .collect();
        let x = random_matrix(&mut rng, d, 1, EntryDistribution::ComplexGaussian);
        let r = random_exponent(&mut rng);
        let rep = check_commutative_loewner(
            &DiagonalAlgebraElement::from_real(&t),
            &DiagonalAlgebraElement::new(x.as_slice().to_vec()),
            r,
        );
        tr.report(k, rep);
    }
    tr.finish()
}

/// The five theorem families.
pub fn theorem_suites(instances: usize, seed: u64) -> Vec<SuiteResult> {
    vec![
        hilbert_mccarty_suite(instances, seed),
        state_mccarty_suite(instances, seed),
        norm_mccarty_suite(instances, seed),
        mond_pecaric_suite(instances, seed),
        commutative_loewner_suite(instances, seed),
    ]
}

/// Transport through `E_ρ` for `f ∈ {u³, u^{1/2} (PSD t), exp}`, plus
/// `‖T‖ ≤ ‖t‖` and the quotient dimensions of the faithful and rank-one
/// states on `M_2`.
pub fn gns_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("gns-transport");
    for (state, expected) in [
        (State::maximally_mixed(2), 4),
        (make_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).expect("valid"), 2),
    ] {
        match Localization::build(2, 2, &state) {
            Ok(loc) => {
                let got = loc.dim_quotient();
                tr.check(got == expected, 0.0, || {
                    format!("dim_quotient {got}, expected {expected}")
                });
            }
            Err(e) => tr.error(0, e),
        }
    }
    for k in 0..instances {
        let mut rng = rng_for(seed, 6, k);
        let m = rng.random_range(1..=3);
        let n = rng.random_range(1..=3);
        let rho = random_state_any(&mut rng, n, k);
        let which = k % 3;
        let t = if which == 1 {
            random_positive(&mut rng, m, k)
        } else {
            random_hermitian(&mut rng, m).scale(random_scale(&mut rng))
        };
        let result = (|| {
            let t = ModuleOperator::new(t)?;
            let norm = t.norm();
            let f = match which {
                0 => ScalarFunction::from_label("pow:3", -norm, norm)?,
                1 => ScalarFunction::from_label("pow:0.5", 0.0, norm)?,
                _ => ScalarFunction::from_label("exp", -norm, norm)?,
            };
            let loc = Localization::build(m, n, &rho)?;
            loc.verify_transport(&t, &f, 8, seed ^ k as u64)
        })();
        match result {
            Ok(rep) => {
                let worst = rep
                    .apply_residual
                    .max(rep.function_residual)
                    .max(rep.form_residual);
                let norm_ok = rep.induced_norm <= rep.operator_norm + 1e-8;
                tr.check(rep.passes && norm_ok, worst / rep.tolerance, || {
                    format!(
                        "instance {k}: residual {worst:e} (tolerance {:e}), ‖T‖ = {} vs ‖t‖ = {}",
                        rep.tolerance, rep.induced_norm, rep.operator_norm
                    )
                });
            }
            Err(e) => tr.error(k, e),
        }
    }
    tr.finish()
}

/// Supporting lines for every catalog function at random `(x0, ε)`, with
/// the endpoints always included, plus the infinite-slope endpoint paths.
pub fn supporting_line_suite(samples: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("supporting-line");
    let run = |tr: &mut Tracker, k: usize, f: &ScalarFunction, x0: f64, eps: f64, want: Option<&str>| {
        match supporting_line(f, x0, eps) {
            Ok(line) => {
                let check = line.verify(f, x0, eps);
                let case_ok = matches!(
                    (want, line.case),
                    (None, _)
                        | (Some("left"), SupportCase::LeftSteep { .. })
                        | (Some("right"), SupportCase::RightSteep { .. })
                );
                let ratio = (-check.min_gap / check.tolerance).max(check.gap_at_x0 / eps);
                tr.check(check.holds() && case_ok, ratio, || {
                    format!(
                        "{} at x0 = {x0}, ε = {eps}: {:?} gap {:e}, touch {:e}",
                        f.label(),
                        line.case,
                        check.min_gap,
                        check.gap_at_x0
                    )
                });
            }
            Err(e) => tr.error(k, e),
        }
    };
    for (idx, entry) in convex_catalog().iter().enumerate() {
        let f = ScalarFunction::from_label(entry.label, entry.a, entry.b).expect("catalog entries are valid");
        for j in 0..samples {
            let mut rng = rng_for(seed, 7, idx * samples + j);
            let x0 = match j {
                0 => entry.a,
                1 => entry.b,
                _ => rng.random_range(entry.a..=entry.b),
            };
            let eps = 10f64.powf(rng.random_range(-6.0..=-1.0));
            run(&mut tr, j, &f, x0, eps, None);
        }
    }
    let left = ScalarFunction::new("-sqrt(u)", 0.0, 1.0, |u| -u.sqrt()).expect("finite");
    let right = ScalarFunction::new("-sqrt(1-u)", 0.0, 1.0, |u| -(1.0 - u).sqrt()).expect("finite");
    for (j, eps) in [1e-1, 1e-2, 1e-3, 1e-4].into_iter().enumerate() {
        run(&mut tr, j, &left, 0.0, eps, Some("left"));
        run(&mut tr, j, &right, 1.0, eps, Some("right"));
    }
    tr.finish()
}

/// On `1×1` instances the Löwner checker agrees with the Hilbert-space
/// checker.
pub fn scalar_reduction_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("scalar-reduction");
    for k in 0..instances {
        let mut rng = rng_for(seed, 8, k);
        let t = random_positive(&mut rng, 1, k);
        let x = random_matrix(&mut rng, 1, 1, EntryDistribution::ComplexGaussian);
        let r = random_exponent(&mut rng);
        let result = (|| {
            let loewner = check_loewner_mccarty(&ModuleOperator::new(t.clone())?, &ModuleElement::new(x.clone()), r)?;
            let hilbert = check_hilbert_mccarty(&t, x.as_slice(), r)?;
            Ok::<_, crate::Error>((loewner, hilbert))
        })();
        match result {
            Ok((l, h)) => tr.check(l.holds == h.holds && l.holds, -l.margin() / l.tolerance, || {
                format!("instance {k}: loewner {} vs hilbert {}", l.holds, h.holds)
            }),
            Err(e) => tr.error(k, e),
        }
    }
    tr.finish()
}

/// On diagonal instances the Löwner checker agrees with the commutative
/// checker and always holds.
pub fn diagonal_reduction_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("diagonal-reduction");
    for k in 0..instances {
        let mut rng = rng_for(seed, 9, k);
        let d = dim(&mut rng);
        let t: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..=10.0)).collect();
        let x = random_matrix(&mut rng, d, 1, EntryDistribution::ComplexGaussian);
        let r = random_exponent(&mut rng);
        let t_diag = DiagonalAlgebraElement::from_real(&t);
        let x_diag = DiagonalAlgebraElement::new(x.as_slice().to_vec());
        let result = (|| {
            let loewner = check_loewner_mccarty(
                &ModuleOperator::new(t_diag.to_matrix())?,
                &ModuleElement::new(x_diag.to_matrix()),
                r,
            )?;
            let commutative = check_commutative_loewner(&t_diag, &x_diag, r)?;
            Ok::<_, crate::Error>((loewner, commutative))
        })();
        match result {
            Ok((l, c)) => tr.check(l.holds == c.holds && l.holds, -l.margin() / l.tolerance, || {
                format!("instance {k}: loewner {} vs commutative {}", l.holds, c.holds)
            }),
            Err(e) => tr.error(k, e),
        }
    }
    tr.finish()
}

fn difference_size(rep: &InequalityReport) -> f64 {
    match &rep.difference {
        Quantity::Scalar(v) => v.abs(),
        Quantity::Matrix(m) => m.max_abs(),
    }
}

/// At `r = 1` (and `f = id`) every family reports equality within `1e-10`.
pub fn orientation_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("orientation-at-r=1");
    for k in 0..instances {
        let mut rng = rng_for(seed, 10, k);
        let (m, n) = (dim(&mut rng), dim(&mut rng));
        let t = random_positive(&mut rng, m, k);
        let x = random_element(&mut rng, m, n);
        let rho = random_state_any(&mut rng, n, k);
        let v = random_matrix(&mut rng, m, 1, EntryDistribution::ComplexGaussian);
        let diag: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..=5.0)).collect();
        let result = (|| {
            let op = ModuleOperator::new(t.clone())?;
            let id = ScalarFunction::from_label("id", -op.norm() - 1.0, op.norm() + 1.0)?;
            Ok::<_, crate::Error>(vec![
                check_hilbert_mccarty(&t, v.as_slice(), 1.0)?,
                check_state_mccarty(&op, &rho, &x, 1.0)?,
                check_norm_mccarty(&op, &x, 1.0)?,
                check_loewner_mccarty(&op, &x, 1.0)?,
                check_mond_pecaric_state(&op, &rho, &x, &id)?,
                check_commutative_loewner(
                    &DiagonalAlgebraElement::from_real(&diag),
                    &DiagonalAlgebraElement::new(v.as_slice().to_vec()),
                    1.0,
                )?,
            ])
        })();
        match result {
            Ok(reps) => {
                for rep in reps {
                    let size = difference_size(&rep);
                    tr.check(size <= 1e-10, size / 1e-10, || {
                        format!("instance {k}: {} differs by {size:e} at r = 1", rep.family)
                    });
                }
            }
            Err(e) => tr.error(k, e),
        }
    }
    tr.finish()
}

/// Whenever the Löwner comparison holds, so does the norm comparison.
pub fn norm_domination_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("norm-domination");
    for k in 0..instances {
        let mut rng = rng_for(seed, 11, k);
        let m = rng.random_range(2..=MAX_DIM);
        let t = random_positive(&mut rng, m, k);
        let x = random_element(&mut rng, m, m);
        let r = random_exponent(&mut rng);
        let result = (|| {
            let op = ModuleOperator::new(t)?;
            Ok::<_, crate::Error>((check_loewner_mccarty(&op, &x, r)?, check_norm_mccarty(&op, &x, r)?))
        })();
        match result {
            Ok((l, n)) => tr.check(!l.holds || n.holds, -n.margin() / n.tolerance, || {
                format!("instance {k}: Löwner holds but norm margin {:e}", n.margin())
            }),
            Err(e) => tr.error(k, e),
        }
    }
    tr.finish()
}

/// Eigendecompositions reconstruct their input with unitary eigenvectors,
/// and states satisfy Cauchy–Schwarz on the module.
pub fn linalg_suite(instances: usize, seed: u64) -> SuiteResult {
    let mut tr = Tracker::new("linalg-invariants");
    for k in 0..instances {
        let mut rng = rng_for(seed, 12, k);
        let size = rng.random_range(1..=6);
        let m = random_hermitian(&mut rng, size).scale(random_scale(&mut rng));
        match hermitian_eig(&m) {
            Ok(d) => {
                let scale = d.max_abs_eigenvalue().max(1.0);
                let rec = d.reconstruct().max_abs_diff(&m).expect("same shape") / scale;
                let v = &d.eigenvectors;
                let unitary = v
                    .adjoint()
                    .matmul(v)
                    .expect("square")
                    .max_abs_diff(&ComplexMatrix::identity(size))
                    .expect("same shape");
                let worst = rec.max(unitary);
                tr.check(worst <= 1e-10, worst / 1e-10, || {
                    format!("instance {k}: reconstruction {rec:e}, unitarity {unitary:e}")
                });
            }
            Err(e) => tr.error(k, e),
        }

        let (mm, n) = (dim(&mut rng), dim(&mut rng));
        let x = random_element(&mut rng, mm, n);
        let y = random_element(&mut rng, mm, n);
        let rho = random_state_any(&mut rng, n, k);
        let cs = (|| {
            let xy: Complex64 = rho.eval(&inner_product(&x, &y)?)?;
            let xx = rho.eval_real(&inner_product(&x, &x)?)?;
            let yy = rho.eval_real(&inner_product(&y, &y)?)?;
            Ok::<_, crate::Error>((xy.norm_sqr(), xx * yy))
        })();
        match cs {
            Ok((lhs, rhs)) => {
                let tol = 1e-9 * rhs.max(1.0);
                tr.check(lhs <= rhs + tol, (lhs - rhs) / tol, || {
                    format!("instance {k}: |ρ(⟨x,y⟩)|² = {lhs} > {rhs}")
                });
            }
            Err(e) => tr.error(k, e),
        }
    }
    tr.finish()
}

/// Every suite at its standard size.
pub fn all_suites(seed: u64) -> Vec<SuiteResult> {
    let mut out = theorem_suites(THEOREM_INSTANCES, seed);
    out.push(gns_suite(GNS_INSTANCES, seed));
    out.push(supporting_line_suite(SUPPORT_SAMPLES, seed));
    out.push(scalar_reduction_suite(REDUCTION_INSTANCES, seed));
    out.push(diagonal_reduction_suite(REDUCTION_INSTANCES, seed));
    out.push(orientation_suite(100, seed));
    out.push(norm_domination_suite(REDUCTION_INSTANCES, seed));
    out.push(linalg_suite(200, seed));
    out
}
