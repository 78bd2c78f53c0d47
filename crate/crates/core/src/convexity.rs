//! Supporting lines of continuous convex functions on a closed interval.
//!
//! For every `x0 ∈ [a, b]` and `ε > 0` there is an affine `l(x) = c·x + d`
//! with `f ≥ l` on `[a, b]` and `f(x0) < l(x0) + ε`. Interior points and
//! endpoints with a finite one-sided derivative use a tangent line. At an
//! endpoint where the one-sided derivative is infinite no tangent exists, and
//! the line is taken at a nearby minimizer instead.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{apply_spectral, clamp_tolerance, hermitian_eig, ComplexMatrix};

/// Points in the grid used to validate and verify functions.
pub const VERIFICATION_GRID: usize = 10001;
/// Quotients beyond this magnitude are classified as infinite derivatives.
pub const DIVERGENCE_THRESHOLD: f64 = 1e8;
/// All pairs are tested up to this many grid points; larger grids are strided.
pub const ALL_PAIRS_LIMIT: usize = 201;

/// Halvings after which the bracket scan gives up; the scan also stops once
/// the bracket no longer resolves in floating point.
const BRACKET_STEPS: i32 = 1100;
const BRACKET_GRID: usize = 1001;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function on a closed interval `[a, b]`, finite on the
/// verification grid.
#[derive(Clone)]
pub struct ScalarFunction {
    label: String,
    a: f64,
    b: f64,
    eval: Evaluator,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFunction({} on [{}, {}])", self.label, self.a, self.b)
    }
}

impl ScalarFunction {
    pub fn new(
        label: impl Into<String>,
        a: f64,
        b: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::from_parts(label.into(), a, b, Arc::new(f))
    }

    fn from_parts(label: String, a: f64, b: f64, eval: Evaluator) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::Precondition(format!("invalid interval [{a}, {b}]")));
        }
        let f = Self { label, a, b, eval };
        for u in f.grid(VERIFICATION_GRID) {
            if !f.eval(u).is_finite() {
                return Err(Error::Domain {
                    label: f.label.clone(),
                    at: u,
                });
            }
        }
        Ok(f)
    }

    /// Catalog function by label: `pow:r`, `negpow:r`, `exp`, `abs:c0`,
    /// `hinge:c0`, `id`.
    pub fn from_label(label: &str, a: f64, b: f64) -> Result<Self> {
        Self::from_parts(label.to_string(), a, b, catalog_evaluator(label)?)
    }

    /// Same evaluator on another interval.
    pub fn with_domain(&self, a: f64, b: f64) -> Result<Self> {
        Self::from_parts(self.label.clone(), a, b, Arc::clone(&self.eval))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u)
    }

    /// `n` uniform points from `a` to `b` inclusive.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        uniform_grid(self.a, self.b, n)
    }

    /// `sup |f|` over the verification grid.
    pub fn sup_abs(&self) -> f64 {
        self.grid(VERIFICATION_GRID)
            .into_iter()
            .map(|u| self.eval(u).abs())
            .fold(0.0, f64::max)
    }

    /// `f(M)` for Hermitian `M` whose spectrum lies in the domain.
    ///
    /// Eigenvalues within the clamp band of zero are treated as zero, and
    /// eigenvalues within `1e-9·scale` outside `[a, b]` are pulled onto the
    /// interval; anything further out is a domain error.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = hermitian_eig(m)?;
        let zero_band = clamp_tolerance(&d);
        let slack = 1e-9
            * d.max_abs_eigenvalue()
                .max(self.a.abs())
                .max(self.b.abs())
                .max(1.0);
        if let Some(&lam) = d
            .eigenvalues
            .iter()
            .find(|&&lam| lam < self.a - slack || lam > self.b + slack)
        {
            return Err(Error::Domain {
                label: self.label.clone(),
                at: lam,
            });
        }
        apply_spectral(&d, &self.label, |lam| {
            let lam = if lam.abs() <= zero_band && self.a <= 0.0 && 0.0 <= self.b {
                0.0
            } else {
                lam
            };
            self.eval(lam.clamp(self.a, self.b))
        })
    }
}

fn parse_param(label: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::UnknownFunction(label.to_string()))
}

fn power(u: f64, r: f64) -> f64 {
    if r.fract() == 0.0 && r.abs() <= i32::MAX as f64 {
        u.powi(r as i32)
    } else {
        u.powf(r)
    }
}

fn catalog_evaluator(label: &str) -> Result<Evaluator> {
    let (name, param) = match label.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (label, None),
    };
    let f: Evaluator = match (name, param) {
        ("id", None) => Arc::new(|u| u),
        ("exp", None) => Arc::new(f64::exp),
        ("pow", Some(p)) => {
            let r = parse_param(label, p)?;
            Arc::new(move |u| power(u, r))
        }
        ("negpow", Some(p)) => {
            let r = parse_param(label, p)?;
            Arc::new(move |u| -power(u, r))
        }
        ("abs", Some(p)) => {
            let c0 = parse_param(label, p)?;
            Arc::new(move |u| (u - c0).abs())
        }
        ("hinge", Some(p)) => {
            let c0 = parse_param(label, p)?;
            Arc::new(move |u| (u - c0).max(0.0))
        }
        _ => return Err(Error::UnknownFunction(label.to_string())),
    };
    Ok(f)
}

/// Whether a catalog label only makes sense on a nonnegative domain
/// (fractional powers and `u^r` for odd `r`).
pub fn needs_nonnegative_domain(label: &str) -> bool {
    match label.split_once(':') {
        Some(("pow", p)) => p.parse::<f64>().map_or(true, |r| {
            !(r.fract() == 0.0 && (r == 0.0 || r == 1.0 || (r as i64) % 2 == 0))
        }),
        Some(("negpow", _)) => true,
        _ => false,
    }
}

/// A catalog entry with the interval it is exercised on in property suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub a: f64,
    pub b: f64,
}

/// The convex catalog: `u^r` (r ∈ {1, 1.5, 2, 3}), `−u^r`
/// (r ∈ {0.25, 0.5, 0.75}), `exp`, `|u − c0|`, `max(0, u − c0)`.
pub fn convex_catalog() -> Vec<CatalogEntry> {
    let e = |label, a, b| CatalogEntry { label, a, b };
    vec![
        e("pow:1", -1.0, 2.0),
        e("pow:1.5", 0.0, 2.0),
        e("pow:2", -1.0, 2.0),
        e("pow:3", 0.0, 2.0),
        e("negpow:0.25", 0.0, 1.0),
        e("negpow:0.5", 0.0, 1.0),
        e("negpow:0.75", 0.0, 1.0),
        e("exp", -1.0, 2.0),
        e("abs:0.3", -1.0, 1.0),
        e("hinge:0.3", -1.0, 1.0),
    ]
}

pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![a];
    }
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect()
}

/// Midpoint convexity on a grid of `grid_points` points.
///
/// All pairs are checked for grids of up to 201 points. Larger grids check
/// all pairs of a strided subset of at most 201 points plus every
/// neighbouring pair `(u_{i-1}, u_{i+1})`.
pub fn convexity_check(f: &ScalarFunction, grid_points: usize) -> bool {
    let n = grid_points.max(3);
    let xs = f.grid(n);
    let ys: Vec<f64> = xs.iter().map(|&u| f.eval(u)).collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return false;
    }
    let ok = |i: usize, j: usize| {
        let (u, v) = (xs[i], xs[j]);
        let (fu, fv) = (ys[i], ys[j]);
        let fm = f.eval(0.5 * (u + v));
        fm <= 0.5 * (fu + fv) + 1e-12 * (1.0 + fu.abs() + fv.abs())
    };
    let subset: Vec<usize> = if n <= ALL_PAIRS_LIMIT {
        (0..n).collect()
    } else {
        let stride = (n - 1).div_ceil(ALL_PAIRS_LIMIT - 1);
        let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
        if *idx.last().unwrap() != n - 1 {
            idx.push(n - 1);
        }
        idx
    };
    for (p, &i) in subset.iter().enumerate() {
        for &j in &subset[p + 1..] {
            if !ok(i, j) {
                return false;
            }
        }
    }
    if n > ALL_PAIRS_LIMIT {
        for i in 1..n - 1 {
            if !ok(i - 1, i + 1) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Difference quotients of `f` at `x0` towards `side`, for the step sizes
/// `h_max·10^{-k}`, k = 0..6, where `h_max = min(1e-2·(b − a), room/2)`.
pub fn difference_quotients(f: &ScalarFunction, x0: f64, side: Side) -> Result<Vec<(f64, f64)>> {
    let (a, b) = f.domain();
    if !(a..=b).contains(&x0) {
        return Err(Error::Precondition(format!(
            "x0 = {x0} outside [{a}, {b}]"
        )));
    }
    let room = match side {
        Side::Right => b - x0,
        Side::Left => x0 - a,
    };
    if room <= 0.0 {
        return Err(Error::Precondition(format!(
            "no room on the {side:?} side of x0 = {x0} in [{a}, {b}]"
        )));
    }
    let h_max = if room >= 0.02 * (b - a) {
        1e-2 * (b - a)
    } else {
        0.5 * room
    };
    let f0 = f.eval(x0);
    Ok((0..7)
        .map(|k| {
            let h = h_max * 10f64.powi(-k);
            let q = match side {
                Side::Right => (f.eval(x0 + h) - f0) / h,
                Side::Left => (f0 - f.eval(x0 - h)) / h,
            };
            (h, q)
        })
        .collect())
}

/// One-sided derivative `f'_±(x0)`.
///
/// Each consecutive pair of quotients gives a Richardson estimate
/// `q_k + (q_k − q_{k−1})/9`; the limit is the estimate that agrees best with
/// its predecessor, which balances truncation against round-off. At `x0 = a` (right side) and `x0 = b` (left side) quotients
/// that pass `±1e8`, or that keep growing geometrically by at least a
/// factor of ten overall, are reported as `∓∞`/`+∞`.
pub fn one_sided_derivative(f: &ScalarFunction, x0: f64, side: Side) -> Result<f64> {
    let qs: Vec<f64> = difference_quotients(f, x0, side)?
        .into_iter()
        .map(|(_, q)| q)
        .collect();
    let (a, b) = f.domain();
    let at_endpoint = match side {
        Side::Right => x0 <= a,
        Side::Left => x0 >= b,
    };
    let last = qs[qs.len() - 1];
    if at_endpoint && diverges(&qs) {
        return Ok(if last < 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
    }
    let rich: Vec<f64> = qs.windows(2).map(|w| w[1] + (w[1] - w[0]) / 9.0).collect();
    let best = (1..rich.len())
        .min_by(|&i, &j| {
            (rich[i] - rich[i - 1])
                .abs()
                .total_cmp(&(rich[j] - rich[j - 1]).abs())
                .then(i.cmp(&j))
        })
        .expect("seven step sizes");
    Ok(rich[best])
}

fn diverges(qs: &[f64]) -> bool {
    if qs.iter().any(|q| q.abs() > DIVERGENCE_THRESHOLD) {
        return true;
    }
    let n = qs.len();
    let deltas: Vec<f64> = qs.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let accelerating = deltas[deltas.len() - 3..]
        .windows(2)
        .all(|w| w[0] > 0.0 && w[1] >= 2.0 * w[0]);
    accelerating && qs[n - 1].abs() >= 10.0 * qs[0].abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum SupportCase {
    /// Degenerate interval `a = b`.
    Point,
    /// Interior point, slope `f'_-(x0)`.
    Interior,
    /// `x0 = a` with finite `f'_+(a)`.
    LeftTangent,
    /// `x0 = a` with `f'_+(a) = −∞`; line at the minimizer `x1` of `f`
    /// on a bracket `[a, a + δ]`.
    LeftSteep { x1: f64, delta: f64 },
    /// `x0 = b` with finite `f'_-(b)`.
    RightTangent,
    /// `x0 = b` with `f'_-(b) = +∞`; line at `x2 ∈ (x1, b)`.
    RightSteep { x1: f64, x2: f64, delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportingLine {
    pub c: f64,
    pub d: f64,
    #[serde(flatten)]
    pub case: SupportCase,
}

impl SupportingLine {
    pub fn at(&self, x: f64) -> f64 {
        self.c * x + self.d
    }

    /// Checks `f ≥ l − 1e-9·scale` on the verification grid and
    /// `f(x0) < l(x0) + ε`, with `scale = max(1, sup|f|)`.
    pub fn verify(&self, f: &ScalarFunction, x0: f64, epsilon: f64) -> LineCheck {
        let mut min_gap = f64::INFINITY;
        let mut scale: f64 = 1.0;
        for u in f.grid(VERIFICATION_GRID) {
            let fu = f.eval(u);
            scale = scale.max(fu.abs());
            min_gap = min_gap.min(fu - self.at(u));
        }
        let gap_at_x0 = f.eval(x0) - self.at(x0);
        let tolerance = 1e-9 * scale;
        LineCheck {
            min_gap,
            tolerance,
            gap_at_x0,
            minorant: min_gap >= -tolerance,
            touches: gap_at_x0 < epsilon,
        }
    }
}

/// Grid verification of a supporting line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineCheck {
    /// `min (f − l)` over the grid.
    pub min_gap: f64,
    pub tolerance: f64,
    /// `f(x0) − l(x0)`.
    pub gap_at_x0: f64,
    /// `f ≥ l` on the grid within tolerance.
    pub minorant: bool,
    /// `f(x0) < l(x0) + ε`.
    pub touches: bool,
}

impl LineCheck {
    pub fn holds(&self) -> bool {
        self.minorant && self.touches
    }
}

/// Constructs an affine minorant of `f` that is within `epsilon` of `f` at
/// `x0`.
pub fn supporting_line(f: &ScalarFunction, x0: f64, epsilon: f64) -> Result<SupportingLine> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
    }
    let (a, b) = f.domain();
    if !(a..=b).contains(&x0) {
        return Err(Error::Precondition(format!("x0 = {x0} outside [{a}, {b}]")));
    }
    if !convexity_check(f, VERIFICATION_GRID) {
        return Err(Error::NotConvex(format!("{} on [{a}, {b}]", f.label())));
    }
    if a == b {
        return Ok(SupportingLine {
            c: 0.0,
            d: f.eval(a),
            case: SupportCase::Point,
        });
    }
    let tangent = |x: f64, c: f64, case| SupportingLine {
        c,
        d: f.eval(x) - c * x,
        case,
    };

    if x0 <= a {
        let slope = one_sided_derivative(f, a, Side::Right)?;
        if slope.is_finite() {
            return Ok(tangent(a, slope, SupportCase::LeftTangent));
        }
        return left_steep(f, epsilon);
    }
    if x0 >= b {
        let slope = one_sided_derivative(f, b, Side::Left)?;
        if slope.is_finite() {
            return Ok(tangent(b, slope, SupportCase::RightTangent));
        }
        return right_steep(f, epsilon);
    }
    let slope = one_sided_derivative(f, x0, Side::Left)?;
    Ok(tangent(x0, slope, SupportCase::Interior))
}

fn bracket_minimizer(f: &ScalarFunction, lo: f64, hi: f64) -> (f64, f64) {
    uniform_grid(lo, hi, BRACKET_GRID)
        .into_iter()
        .map(|u| (u, f.eval(u)))
        .fold((lo, f64::INFINITY), |best, (u, v)| if v < best.1 { (u, v) } else { best })
}

fn within_half_epsilon(f: &ScalarFunction, lo: f64, hi: f64, anchor: f64, epsilon: f64) -> bool {
    let fa = f.eval(anchor);
    uniform_grid(lo, hi, BRACKET_GRID)
        .into_iter()
        .all(|u| (f.eval(u) - fa).abs() < 0.5 * epsilon)
}

fn left_steep(f: &ScalarFunction, epsilon: f64) -> Result<SupportingLine> {
    let (a, b) = f.domain();
    for k in 1..=BRACKET_STEPS {
        let delta = (b - a) * 2f64.powi(-k);
        let hi = a + delta;
        if hi <= a {
            break;
        }
        if !within_half_epsilon(f, a, hi, a, epsilon) {
            continue;
        }
        let (x1, _) = bracket_minimizer(f, a, hi);
        if x1 <= a {
            continue;
        }
        let c = one_sided_derivative(f, x1, Side::Left)?;
        if !c.is_finite() {
            continue;
        }
        return Ok(SupportingLine {
            c,
            d: f.eval(x1) - c * x1,
            case: SupportCase::LeftSteep { x1, delta },
        });
    }
    Err(Error::Precondition(format!(
        "no bracket near a = {a} keeps f within epsilon/2 = {}",
        0.5 * epsilon
    )))
}

fn right_steep(f: &ScalarFunction, epsilon: f64) -> Result<SupportingLine> {
    let (a, b) = f.domain();
    for k in 1..=BRACKET_STEPS {
        let delta = (b - a) * 2f64.powi(-k);
        let lo = b - delta;
        if lo >= b {
            break;
        }
        if !within_half_epsilon(f, lo, b, b, epsilon) {
            continue;
        }
        let (x1, _) = bracket_minimizer(f, lo, b);
        if x1 >= b {
            continue;
        }
        let x2 = 0.5 * (x1 + b);
        let c = one_sided_derivative(f, x2, Side::Left)?;
        if !c.is_finite() {
            continue;
        }
        return Ok(SupportingLine {
            c,
            d: f.eval(x2) - c * x2,
            case: SupportCase::RightSteep { x1, x2, delta },
        });
    }
    Err(Error::Precondition(format!(
        "no bracket near b = {b} keeps f within epsilon/2 = {}",
        0.5 * epsilon
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(label: &str, a: f64, b: f64) -> ScalarFunction {
        ScalarFunction::from_label(label, a, b).unwrap()
    }

    #[test]
    fn labels_parse() {
        for label in ["id", "exp", "pow:2", "negpow:0.5", "abs:0", "hinge:-0.5"] {
            assert!(ScalarFunction::from_label(label, 0.0, 1.0).is_ok(), "{label}");
        }
        for label in ["pow", "pow:x", "sin", "abs:", "exp:1"] {
            assert!(matches!(
                ScalarFunction::from_label(label, 0.0, 1.0),
                Err(Error::UnknownFunction(_))
            ));
        }
        // u^{1/2} is undefined on negatives
        assert!(matches!(
            ScalarFunction::from_label("pow:0.5", -1.0, 1.0),
            Err(Error::Domain { .. })
        ));
        assert!(ScalarFunction::from_label("pow:3", -1.0, 1.0).is_ok());
    }

    #[test]
    fn nonnegative_domain_classification() {
        assert!(needs_nonnegative_domain("pow:1.5"));
        assert!(needs_nonnegative_domain("pow:3"));
        assert!(needs_nonnegative_domain("negpow:2"));
        assert!(!needs_nonnegative_domain("pow:2"));
        assert!(!needs_nonnegative_domain("pow:1"));
        assert!(!needs_nonnegative_domain("exp"));
        assert!(!needs_nonnegative_domain("abs:0"));
    }

    #[test]
    fn convexity_examples() {
        assert!(convexity_check(&cat("pow:2", -1.0, 1.0), 101));
        assert!(!convexity_check(&cat("pow:3", -1.0, 1.0), 101));
        assert!(convexity_check(&cat("negpow:0.5", 0.0, 1.0), 101));
        assert!(convexity_check(&cat("negpow:0.5", 0.0, 1.0), VERIFICATION_GRID));
        assert!(!convexity_check(&cat("pow:3", -1.0, 1.0), VERIFICATION_GRID));
        let wiggle = ScalarFunction::new("wiggle", 0.0, 1.0, |u| u * u + 1e-3 * (400.0 * u).sin())
            .unwrap();
        assert!(!convexity_check(&wiggle, VERIFICATION_GRID));
    }

    #[test]
    fn derivative_examples() {
        let sq = cat("pow:2", -1.0, 1.0);
        for side in [Side::Left, Side::Right] {
            assert!((one_sided_derivative(&sq, 0.5, side).unwrap() - 1.0).abs() < 1e-5);
        }
        let abs = cat("abs:0", -1.0, 1.0);
        assert!((one_sided_derivative(&abs, 0.0, Side::Left).unwrap() + 1.0).abs() < 1e-12);
        assert!((one_sided_derivative(&abs, 0.0, Side::Right).unwrap() - 1.0).abs() < 1e-12);
        let root = cat("negpow:0.5", 0.0, 1.0);
        assert_eq!(one_sided_derivative(&root, 0.0, Side::Right).unwrap(), f64::NEG_INFINITY);
        let refl = ScalarFunction::new("reflected", 0.0, 1.0, |u| -(1.0 - u).sqrt()).unwrap();
        assert_eq!(one_sided_derivative(&refl, 1.0, Side::Left).unwrap(), f64::INFINITY);
        // finite one-sided derivatives at endpoints stay finite
        assert!((one_sided_derivative(&sq, -1.0, Side::Right).unwrap() + 2.0).abs() < 1e-5);
        assert!((one_sided_derivative(&sq, 1.0, Side::Left).unwrap() - 2.0).abs() < 1e-5);
    }

    #[test]
    fn derivative_side_errors() {
        let sq = cat("pow:2", -1.0, 1.0);
        assert!(one_sided_derivative(&sq, -1.0, Side::Left).is_err());
        assert!(one_sided_derivative(&sq, 1.0, Side::Right).is_err());
        assert!(one_sided_derivative(&sq, 2.0, Side::Right).is_err());
    }

    #[test]
    fn tangent_at_minimum() {
        let sq = cat("pow:2", -1.0, 1.0);
        let l = supporting_line(&sq, 0.0, 0.1).unwrap();
        assert_eq!(l.case, SupportCase::Interior);
        assert!(l.c.abs() < 1e-9 && l.d.abs() < 1e-12);
        assert!(l.verify(&sq, 0.0, 0.1).holds());
    }

    #[test]
    fn kink_takes_left_derivative() {
        let abs = cat("abs:0", -1.0, 1.0);
        let l = supporting_line(&abs, 0.0, 0.1).unwrap();
        assert!((l.c + 1.0).abs() < 1e-12 && l.d.abs() < 1e-12);
        assert!(l.verify(&abs, 0.0, 0.1).holds());
    }

    #[test]
    fn steep_left_endpoint() {
        let root = cat("negpow:0.5", 0.0, 1.0);
        let l = supporting_line(&root, 0.0, 0.01).unwrap();
        assert!(matches!(l.case, SupportCase::LeftSteep { .. }), "{l:?}");
        assert!(l.at(0.0) > -0.01);
        let check = l.verify(&root, 0.0, 0.01);
        assert!(check.holds(), "{check:?}");
    }

    #[test]
    fn steep_right_endpoint() {
        let refl = ScalarFunction::new("reflected", 0.0, 1.0, |u| -(1.0 - u).sqrt()).unwrap();
        let l = supporting_line(&refl, 1.0, 0.01).unwrap();
        assert!(matches!(l.case, SupportCase::RightSteep { .. }), "{l:?}");
        if let SupportCase::RightSteep { x1, x2, .. } = l.case {
            assert!(x1 < x2 && x2 < 1.0);
        }
        assert!(l.c >= 0.0);
        assert!(l.verify(&refl, 1.0, 0.01).holds());
    }

    #[test]
    fn finite_endpoint_tangents() {
        let e = cat("exp", -1.0, 2.0);
        let l = supporting_line(&e, -1.0, 0.05).unwrap();
        assert_eq!(l.case, SupportCase::LeftTangent);
        assert!(l.verify(&e, -1.0, 0.05).holds());
        let l = supporting_line(&e, 2.0, 0.05).unwrap();
        assert_eq!(l.case, SupportCase::RightTangent);
        assert!(l.verify(&e, 2.0, 0.05).holds());
    }

    #[test]
    fn supporting_line_preconditions() {
        assert!(matches!(
            supporting_line(&cat("pow:3", -1.0, 1.0), 0.0, 0.1),
            Err(Error::NotConvex(_))
        ));
        let sq = cat("pow:2", -1.0, 1.0);
        assert!(supporting_line(&sq, 0.0, 0.0).is_err());
        assert!(supporting_line(&sq, 3.0, 0.1).is_err());
        let point = cat("pow:2", 0.5, 0.5);
        let l = supporting_line(&point, 0.5, 0.1).unwrap();
        assert_eq!(l.case, SupportCase::Point);
        assert!(l.verify(&point, 0.5, 0.1).holds());
    }

    #[test]
    fn apply_matrix_respects_domain() {
        let t = ComplexMatrix::from_real_diagonal(&[0.0, 4.0]);
        let root = cat("pow:0.5", 0.0, 4.0);
        let r = root.apply_matrix(&t).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 2.0])).unwrap() < 1e-12);
        let narrow = cat("pow:0.5", 0.0, 1.0);
        assert!(matches!(narrow.apply_matrix(&t), Err(Error::Domain { .. })));
    }
}
