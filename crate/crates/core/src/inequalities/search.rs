//! Seeded random search for violations of the Löwner-order inequality.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_loewner_mccarty, InequalityReport};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::module::{ModuleElement, ModuleOperator};
use crate::sampling::{instance_rng, random_matrix, random_psd, EntryDistribution};

/// Minimum distance of the exponent range from 1.
pub const R_EXCLUSION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchFamily {
    #[serde(rename = "loewner-r>1")]
    LoewnerAbove,
    #[serde(rename = "loewner-r<1")]
    LoewnerBelow,
}

impl std::str::FromStr for SearchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loewner-r>1" => Ok(Self::LoewnerAbove),
            "loewner-r<1" => Ok(Self::LoewnerBelow),
            "hilbert-mccarty" | "mond-pecaric-state" | "state-mccarty" | "norm-mccarty"
            | "commutative-loewner" => Err(Error::Usage(format!(
                "{s} is a theorem family; only loewner-r>1 and loewner-r<1 can be searched"
            ))),
            other => Err(Error::Usage(format!(
                "unknown search family {other:?} (expected loewner-r>1 or loewner-r<1)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub r_range: (f64, f64),
    pub trials: usize,
    pub seed: u64,
    pub entry_distribution: EntryDistribution,
    /// Overrides each report's default tolerance.
    pub tolerance: Option<f64>,
}

impl SearchConfig {
    fn validate(&self, family: SearchFamily) -> Result<()> {
        let (lo, hi) = self.r_range;
        if self.dim == 0 {
            return Err(Error::Usage("dim must be at least 1".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi) {
            return Err(Error::Usage(format!("invalid r range [{lo}, {hi}]")));
        }
        let ok = match family {
            SearchFamily::LoewnerAbove => lo >= 1.0 + R_EXCLUSION,
            SearchFamily::LoewnerBelow => hi <= 1.0 - R_EXCLUSION,
        };
        if !ok {
            return Err(Error::Usage(format!(
                "r range [{lo}, {hi}] must stay on one side of 1 by at least {R_EXCLUSION} for this family"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub index: usize,
    pub r: f64,
    pub t: ComplexMatrix,
    pub x: ComplexMatrix,
    pub report: InequalityReport,
}

impl Finding {
    pub fn min_eigenvalue(&self) -> f64 {
        self.report.margin()
    }
}

fn candidate(cfg: &SearchConfig, index: usize) -> Result<Option<Finding>> {
    let mut rng = instance_rng(cfg.seed, index as u64);
    let t = random_psd(&mut rng, cfg.dim, cfg.entry_distribution);
    let x = random_matrix(&mut rng, cfg.dim, cfg.dim, cfg.entry_distribution);
    let (lo, hi) = cfg.r_range;
    let r = if lo == hi { lo } else { rng.random_range(lo..=hi) };
    if x.max_abs() == 0.0 {
        return Ok(None);
    }
    let op = ModuleOperator::new(t.clone())?;
    let mut report = check_loewner_mccarty(&op, &ModuleElement::new(x.clone()), r)?;
    if let Some(tol) = cfg.tolerance {
        report = report.with_tolerance(tol);
    }
    if report.margin() < -10.0 * report.tolerance {
        Ok(Some(Finding {
            index,
            r,
            t,
            x,
            report,
        }))
    } else {
        Ok(None)
    }
}

/// All candidates whose oriented difference has an eigenvalue below
/// `−10·tolerance`, most negative first.
///
/// Candidate `k` draws `t = G*G`, `x` and `r` from stream `(seed, k)`, so the
/// result does not depend on the thread pool.
pub fn search_counterexamples(cfg: &SearchConfig, family: SearchFamily) -> Result<Vec<Finding>> {
    cfg.validate(family)?;
    let found: Vec<Option<Finding>> = (0..cfg.trials)
        .into_par_iter()
        .map(|k| candidate(cfg, k))
        .collect::<Result<_>>()?;
    let mut findings: Vec<Finding> = found.into_iter().flatten().collect();
    findings.sort_by(|a, b| {
        a.min_eigenvalue()
            .total_cmp(&b.min_eigenvalue())
            .then(a.index.cmp(&b.index))
    });
    Ok(findings)
}
