//! Matrix files: `{"rows": r, "cols": c, "entries": [[...], ...]}` with each
//! entry a real number or `[re, im]`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use cstar_ineq::{Complex64, ComplexMatrix};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Entry> for Complex64 {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Real(re) => Complex64::new(re, 0.0),
            Entry::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Entry>>,
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            bail!("matrix must have at least one row and one column");
        }
        if self.entries.len() != self.rows {
            bail!("expected {} rows of entries, found {}", self.rows, self.entries.len());
        }
        if let Some((i, row)) = self.entries.iter().enumerate().find(|(_, r)| r.len() != self.cols) {
            bail!("row {} has {} entries, expected {}", i, row.len(), self.cols);
        }
        let data = self.entries.into_iter().flatten().map(Complex64::from).collect();
        Ok(ComplexMatrix::new(self.rows, self.cols, data)?)
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text).context("malformed matrix file")?;
    file.into_matrix()
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("in {}", path.display()))
}

/// Entries of a row or column matrix.
pub fn as_vector(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if m.rows() != 1 && m.cols() != 1 {
        bail!("expected a row or column vector, got {}x{}", m.rows(), m.cols());
    }
    Ok(m.as_slice().to_vec())
}
