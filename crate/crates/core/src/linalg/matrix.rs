use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix.
///
/// Every algebra element, module element and operator in this crate is one
/// of these. Entries are finite by construction.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Length {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        let values: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::from_diagonal(&values)
    }

    /// Column vector (n x 1).
    pub fn column(values: &[Complex64]) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            data: values.to_vec(),
        }
    }

    /// Outer product v·w*.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m[(i, j)] = vi * wj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column_values(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("multiply", rhs));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("add", rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("subtract", rhs, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Matrix-vector product for a plain coefficient slice.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                op: "apply",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// `‖M − M*‖_max`; infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Default Hermitian acceptance tolerance `1e-10·max(1, ‖M‖_max)`.
    pub fn hermitian_tolerance(&self) -> f64 {
        1e-10 * self.max_abs().max(1.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Fails unless the matrix is Hermitian at the default tolerance.
    pub fn require_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "hermitian check",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let asymmetry = self.hermitian_defect();
        let tolerance = self.hermitian_tolerance();
        if asymmetry > tolerance {
            return Err(Error::NotHermitian {
                asymmetry,
                tolerance,
            });
        }
        Ok(())
    }

    /// `(M + M*)/2`.
    pub fn hermitian_part(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in i..self.cols {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == ZERO))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "determinant",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap_or(col);
            if a[pivot * n + col] == ZERO {
                return Ok(ZERO);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for row in col + 1..n {
                let factor = a[row * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= factor * v;
                }
            }
        }
        Ok(det)
    }

    fn zip_with(
        &self,
        op: &'static str,
        rhs: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(op, rhs));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn mismatch(&self, op: &'static str, rhs: &Self) -> Error {
        Error::Dimension {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if z.im == 0.0 {
                    write!(f, " {:>12.6}", z.re)?;
                } else {
                    write!(f, " {:>12.6}{:+.6}i", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Conjugate-linear in the first slot: `Σ conj(a_k)·b_k`.
pub fn vdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vnorm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

// Serialized as {"rows", "cols", "entries"} with nested rows; an entry is a
// bare number when its imaginary part is zero, else [re, im].
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [Complex64]);
        struct Entry(Complex64);

        impl Serialize for Entry {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                if self.0.im == 0.0 {
                    s.serialize_f64(self.0.re)
                } else {
                    [self.0.re, self.0.im].serialize(s)
                }
            }
        }

        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for &z in self.0 {
                    seq.serialize_element(&Entry(z))?;
                }
                seq.end()
            }
        }

        let rows: Vec<Row<'_>> = (0..self.rows)
            .map(|i| Row(&self.data[i * self.cols..(i + 1) * self.cols]))
            .collect();
        let mut st = serializer.serialize_struct("ComplexMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, cols: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(rows, cols, v).unwrap()
    }

    #[test]
    fn adjoint_of_upper_unipotent() {
        let x = real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(x.adjoint(), real(2, 2, &[1.0, 0.0, 1.0, 1.0]));
    }

    #[test]
    fn adjoint_conjugates() {
        let m = ComplexMatrix::new(1, 2, vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)])
            .unwrap();
        let a = m.adjoint();
        assert_eq!(a.shape(), (2, 1));
        assert_eq!(a[(0, 0)], Complex64::new(1.0, -2.0));
        assert_eq!(a[(1, 0)], Complex64::new(0.0, 1.0));
    }

    #[test]
    fn first_counterexample_sandwich() {
        // x* t x computed by hand: [[1,0],[1,1]]·[[2,1],[1,2]]·[[1,1],[0,1]] = [[2,3],[3,6]]
        let x = real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let t = real(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let p = x.adjoint().matmul(&t).unwrap().matmul(&x).unwrap();
        assert_eq!(p, real(2, 2, &[2.0, 3.0, 3.0, 6.0]));
    }

    #[test]
    fn subtract_self_is_zero() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.5, -2.0),
                Complex64::new(0.25, 3.0),
                Complex64::new(-7.0, 0.0),
                Complex64::new(0.0, 1.0),
            ],
        )
        .unwrap();
        assert_eq!(a.sub(&a).unwrap(), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn shape_errors() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::Dimension { .. })));
        assert!(matches!(a.add(&ComplexMatrix::zeros(3, 2)), Err(Error::Dimension { .. })));
        assert!(matches!(
            ComplexMatrix::from_real(2, 2, &[1.0]),
            Err(Error::Length { expected: 4, actual: 1 })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let err = ComplexMatrix::from_real(1, 2, &[1.0, f64::NAN]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
    }

    #[test]
    fn determinant_small() {
        let m = real(2, 2, &[2.0, 3.0, 3.0, 6.0]);
        assert!((m.determinant().unwrap().re - 3.0).abs() < 1e-12);
        let m3 = real(3, 3, &[0.0, 2.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 3.0]);
        // expansion along the second row: -1·(2·3 - 1·1) = -5
        assert!((m3.determinant().unwrap().re + 5.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_checks() {
        let h = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 1.0),
                Complex64::new(2.0, -1.0),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        assert!(h.require_hermitian().is_ok());
        let nh = real(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(nh.require_hermitian(), Err(Error::NotHermitian { .. })));
    }
}
