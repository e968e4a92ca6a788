use alloc::vec::Vec;

use super::vector::{dot, Vector};
use crate::error::{Error, Result};

/// Dense row-major real matrix with positive dimensions and finite entries.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::new",
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows<const C: usize>(rows: &[[f64; C]]) -> Result<Self> {
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(rows.len(), C, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, entries: alloc::vec![0.0; rows * cols] }
    }

    /// # Panics
    /// If `n == 0`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, entries: Vec<f64>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && entries.len() == rows * cols);
        Self { rows, cols, entries }
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

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        assert!(j < self.cols, "column {j} out of bounds");
        Vector::from_raw((0..self.rows).map(|i| self.entries[i * self.cols + j]).collect())
    }

    pub(crate) fn column_vec(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.entries[i * self.cols + j]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.entries[i * self.cols + j]);
            }
        }
        Self::from_raw(self.cols, self.rows, out)
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Matrix> {
        if columns.is_empty() {
            return Err(Error::EmptySupport);
        }
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.cols) {
            return Err(Error::InvalidIndex { index: bad, bound: self.cols });
        }
        let mut out = Vec::with_capacity(self.rows * columns.len());
        for i in 0..self.rows {
            let row = self.row(i);
            out.extend(columns.iter().map(|&c| row[c]));
        }
        Ok(Self::from_raw(self.rows, columns.len(), out))
    }

    /// `A x`
    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                expected: (self.cols, 1),
                found: (x.len(), 1),
            });
        }
        Ok(Vector::from_raw(
            (0..self.rows).map(|i| dot(self.row(i), x.as_slice())).collect(),
        ))
    }

    /// `A' v`
    pub fn tr_mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "tr_mul_vec",
                expected: (self.rows, 1),
                found: (v.len(), 1),
            });
        }
        let mut out = alloc::vec![0.0; self.cols];
        for (i, vi) in v.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * vi;
            }
        }
        Ok(Vector::from_raw(out))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with("add", other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with("sub", other, |a, b| a - b)
    }

    pub fn scale(&self, alpha: f64) -> Matrix {
        Self::from_raw(self.rows, self.cols, self.entries.iter().map(|v| alpha * v).collect())
    }

    /// Largest absolute asymmetry `|A[i,j] - A[j,i]|`; `None` for non-square input.
    pub fn asymmetry(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max(libm::fabs(self.get(i, j) - self.get(j, i)));
            }
        }
        Some(worst)
    }

    pub fn frobenius_norm(&self) -> f64 {
        super::vector::norm2(&self.entries)
    }

    fn zip_with(&self, op: &'static str, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, expected: self.shape(), found: other.shape() });
        }
        Ok(Self::from_raw(
            self.rows,
            self.cols,
            self.entries.iter().zip(&other.entries).map(|(a, b)| f(*a, *b)).collect(),
        ))
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.entries
    }
}

/// Matrix product `A B`.
pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            expected: (a.cols, b.cols),
            found: b.shape(),
        });
    }
    let mut out = alloc::vec![0.0; a.rows * b.cols];
    for i in 0..a.rows {
        let out_row = &mut out[i * b.cols..(i + 1) * b.cols];
        for (k, aik) in a.row(i).iter().enumerate() {
            for (o, bkj) in out_row.iter_mut().zip(b.row(k)) {
                *o += aik * bkj;
            }
        }
    }
    Ok(Matrix::from_raw(a.rows, b.cols, out))
}

/// `A' A`, computed so that the result is exactly symmetric.
pub fn gram_of(a: &Matrix) -> Matrix {
    let n = a.cols;
    let columns: Vec<Vec<f64>> = (0..n).map(|j| a.column_vec(j)).collect();
    let mut out = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = dot(&columns[i], &columns[j]);
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    Matrix::from_raw(n, n, out)
}
