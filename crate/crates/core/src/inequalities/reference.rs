//! The two printed `M_2(ℂ)` witnesses against the Löwner-order inequality,
//! recomputed and compared with their four-decimal printouts.

use std::fmt::Write as _;

use serde::Serialize;

use super::{check_loewner_mccarty, InequalityReport};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::module::{ModuleElement, ModuleOperator};

/// Absolute tolerance for the exactly printed `A` of the first instance.
pub const EXACT_ENTRY_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance against four-decimal printed values.
pub const PRINT_TOLERANCE: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceInstance {
    pub name: &'static str,
    pub x: [f64; 4],
    pub t: [f64; 4],
    pub r: f64,
    /// Printed `A = ⟨tx, x⟩^r`, row-major.
    pub printed_a: [f64; 4],
    /// Whether `A` was printed exactly rather than rounded.
    pub a_exact: bool,
    pub printed_b: [f64; 4],
    /// Printed oriented difference `C`.
    pub printed_c: [f64; 4],
    pub printed_det: Option<f64>,
}

pub fn reference_instances() -> [ReferenceInstance; 2] {
    [
        ReferenceInstance {
            name: "r = 3",
            x: [1.0, 1.0, 0.0, 1.0],
            t: [2.0, 1.0, 1.0, 2.0],
            r: 3.0,
            printed_a: [98.0, 183.0, 183.0, 342.0],
            a_exact: true,
            printed_b: [95.9574, 185.0608, 185.0608, 370.1215],
            printed_c: [-2.0426, 2.0608, 2.0608, 28.1215],
            printed_det: None,
        },
        ReferenceInstance {
            name: "r = 1/4",
            x: [9.0, 9.0, 1.0, -25.0],
            t: [125.0, 75.0, 75.0, 45.0],
            r: 0.25,
            printed_a: [8.0901, -5.0563, -5.0563, 3.1602],
            a_exact: false,
            printed_b: [1.7772, -1.1105, -1.1105, 0.6956],
            printed_c: [6.3130, -3.9458, -3.9458, 2.4646],
            printed_det: Some(-0.0108),
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryCheck {
    pub entry: String,
    pub computed: f64,
    pub printed: f64,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReproduction {
    pub instance: ReferenceInstance,
    pub report: InequalityReport,
    pub det_c: f64,
    pub checks: Vec<EntryCheck>,
    /// The computed verdict is "not PSD", as printed.
    pub verdict_ok: bool,
}

impl InstanceReproduction {
    pub fn passed(&self) -> bool {
        self.verdict_ok && self.checks.iter().all(|c| c.ok)
    }

    /// One line per failed comparison.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| {
                format!(
                    "{} = {:.4} but printed {:.4} (tolerance {:e})",
                    c.entry, c.computed, c.printed, c.tolerance
                )
            })
            .collect();
        if !self.verdict_ok {
            out.push(format!(
                "verdict is PSD (min eigenvalue {:.3e}) but printed not PSD",
                self.report.margin()
            ));
        }
        out
    }

    /// The three matrices at four decimals, laid out as 2×2 blocks.
    pub fn layout(&self) -> String {
        let inst = &self.instance;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "instance {}: x = {}, t = {}",
            inst.name,
            inline(&inst.x),
            inline(&inst.t)
        );
        let c_name = if inst.r >= 1.0 { "C = B - A" } else { "C = A - B" };
        for (name, q) in [("A", &self.report.lhs), ("B", &self.report.rhs), (c_name, &self.report.difference)] {
            let m = q.as_matrix().expect("matrix family");
            let _ = writeln!(s, "{name} =");
            for i in 0..2 {
                let _ = writeln!(s, "  {:>12.4} {:>12.4}", m[(i, 0)].re, m[(i, 1)].re);
            }
        }
        let _ = writeln!(s, "det(C) = {:.4}", self.det_c);
        let verdict = if self.report.holds { "PSD" } else { "not PSD" };
        let _ = writeln!(s, "verdict: {verdict} (min eigenvalue {:.4})", self.report.margin());
        s
    }
}

fn inline(v: &[f64; 4]) -> String {
    format!("[[{}, {}], [{}, {}]]", v[0], v[1], v[2], v[3])
}

fn compare(checks: &mut Vec<EntryCheck>, name: &str, m: &ComplexMatrix, printed: &[f64; 4], tol: f64) {
    for (k, &p) in printed.iter().enumerate() {
        let (i, j) = (k / 2, k % 2);
        let computed = m[(i, j)].re;
        checks.push(EntryCheck {
            entry: format!("{name}[{},{}]", i + 1, j + 1),
            computed,
            printed: p,
            tolerance: tol,
            ok: (computed - p).abs() <= tol,
        });
    }
}

pub fn evaluate_reference_instance(inst: &ReferenceInstance) -> Result<InstanceReproduction> {
    let t = ModuleOperator::new(ComplexMatrix::from_real(2, 2, &inst.t)?)?;
    let x = ModuleElement::new(ComplexMatrix::from_real(2, 2, &inst.x)?);
    let report = check_loewner_mccarty(&t, &x, inst.r)?;
    let a = report.lhs.as_matrix().expect("matrix family");
    let b = report.rhs.as_matrix().expect("matrix family");
    let c = report.difference.as_matrix().expect("matrix family");
    let det_c = c.determinant()?.re;

    let mut checks = Vec::new();
    let a_tol = if inst.a_exact { EXACT_ENTRY_TOLERANCE } else { PRINT_TOLERANCE };
    compare(&mut checks, "A", a, &inst.printed_a, a_tol);
    compare(&mut checks, "B", b, &inst.printed_b, PRINT_TOLERANCE);
    compare(&mut checks, "C", c, &inst.printed_c, PRINT_TOLERANCE);
    if let Some(p) = inst.printed_det {
        checks.push(EntryCheck {
            entry: "det(C)".into(),
            computed: det_c,
            printed: p,
            tolerance: PRINT_TOLERANCE,
            ok: (det_c - p).abs() <= PRINT_TOLERANCE,
        });
    }
    let verdict_ok = !report.holds;
    Ok(InstanceReproduction {
        instance: *inst,
        report,
        det_c,
        checks,
        verdict_ok,
    })
}

/// Runs both printed instances and fails with a reproduction error naming
/// every entry that disagrees with the printout.
pub fn reproduce_paper_counterexamples() -> Result<Vec<InequalityReport>> {
    let mut reports = Vec::with_capacity(2);
    for inst in reference_instances() {
        let rep = evaluate_reference_instance(&inst)?;
        if !rep.passed() {
            return Err(Error::Reproduction {
                instance: inst.name.to_string(),
                detail: rep.failures().join("; "),
            });
        }
        reports.push(rep.report);
    }
    Ok(reports)
}
