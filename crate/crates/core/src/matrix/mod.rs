//! Dense matrices over a [`FieldSpec`].
//!
//! Dimensions are stored as `(rows, cols)`. A map from `m` inputs to `n`
//! outputs is an `n x m` matrix here: `rows = n`, `cols = m`. So a strip made
//! of one row of `p x p` blocks of a `t x t` matrix is `p x t`, and one column
//! of blocks is `t x p`.
//!
//! Matrices are values: every operation returns a fresh matrix.

mod block;
mod echelon;

use std::fmt;

pub use block::BlockView;
pub(crate) use echelon::reduce;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::par::Exec;
use crate::rng::SplitMix64;

/// Products with at least this many scalar multiply-adds use [`Exec::default`].
const PARALLEL_MUL_WORK: usize = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<FieldElement>,
}

impl Matrix {
    /// Builds a matrix from row-major elements, validating its shape and codes.
    pub fn new(rows: usize, cols: usize, field: FieldSpec, data: Vec<FieldElement>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("{rows}x{cols} matrix has an empty dimension")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} elements supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.code() >= field.order()) {
            return Err(Error::ElementOutOfRange { code: bad.code(), order: field.order() });
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn from_codes(rows: usize, cols: usize, field: FieldSpec, codes: &[u32]) -> Result<Self> {
        let data = codes.iter().map(|&c| field.element(c)).collect::<Result<Vec<_>>>()?;
        Matrix::new(rows, cols, field, data)
    }

    /// Builds a matrix from nested rows of codes.
    pub fn from_rows<R: AsRef<[u32]>>(field: FieldSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let codes: Vec<u32> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Matrix::from_codes(rows.len(), cols, field, &codes)
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, field: FieldSpec, data: Vec<FieldElement>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, field, data }
    }

    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix::from_parts(rows, cols, field, vec![FieldElement::ZERO; rows * cols])
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        Matrix::diag_identity_prefix(n, n, field)
    }

    /// `diag(I_r, 0_{n-r})`.
    pub fn diag_identity_prefix(n: usize, r: usize, field: FieldSpec) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..r.min(n) {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// Uniform random matrix: entries drawn row-major with `rng.below(q)`.
    pub fn random(rows: usize, cols: usize, field: FieldSpec, rng: &mut SplitMix64) -> Self {
        let q = u64::from(field.order());
        let data = (0..rows * cols).map(|_| field.element(rng.below(q) as u32).expect("draw below order")).collect();
        Matrix::from_parts(rows, cols, field, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of bounds");
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major element slice.
    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn codes(&self) -> Vec<u32> {
        self.data.iter().map(|e| e.code()).collect()
    }

    pub(crate) fn data_mut(&mut self) -> &mut [FieldElement] {
        &mut self.data
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.to_string(), right: other.field.to_string() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix::from_parts(self.rows, self.cols, f, data))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        let exec =
            if self.rows * self.cols * other.cols >= PARALLEL_MUL_WORK { Exec::default() } else { Exec::Sequential };
        self.mul_with(other, exec)
    }

    /// Product with an explicit execution strategy; output rows are computed
    /// independently.
    pub fn mul_with(&self, other: &Matrix, exec: Exec) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let out_rows = exec.map_indexed(self.rows, |i| {
            let mut acc = vec![FieldElement::ZERO; other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                // acc += a * other[k]  ==  acc -= (-a) * other[k]
                f.sub_scaled(&mut acc, other.row(k), f.neg(a));
            }
            acc
        });
        Ok(Matrix::from_parts(self.rows, other.cols, f, out_rows.concat()))
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&x| f.mul(x, c)).collect();
        Matrix::from_parts(self.rows, self.cols, f, data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j]);
            }
        }
        Matrix::from_parts(self.cols, self.rows, self.field, data)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let red = reduce(self, true);
        if red.rank() < self.rows {
            return Err(Error::Singular);
        }
        Ok(red.left.expect("left factor recorded"))
    }

    pub fn rank(&self) -> usize {
        reduce(self, false).rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `A (x) B`: the `(i, j)` block of size `B` is `a_ij * B`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = self.field;
        let (rows, cols) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for bi in 0..other.rows {
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    data.extend(other.row(bi).iter().map(|&b| f.mul(a, b)));
                }
            }
        }
        Ok(Matrix::from_parts(rows, cols, f, data))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
