use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
///
/// A matrix with `rows x cols` entries stands for the linear map
/// `F^cols -> F^rows` acting on column vectors, so `g ∘ f` is `g.mul(&f)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.kind())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.render(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_flat(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Self::from_flat(field, n, cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major flattening.
    pub fn as_flat(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = &self.field;
        let (n, c) = (self.cols, other.cols);
        let mut out = Matrix::zeros(f, self.rows, c);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * c..(i + 1) * c];
            for k in 0..n {
                let a = &self.data[i * n + k];
                if f.is_zero(a) {
                    continue;
                }
                let orow = &other.data[k * c..(k + 1) * c];
                for (acc, b) in out_row.iter_mut().zip(orow) {
                    if !f.is_zero(b) {
                        f.mul_add_assign(acc, a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector product");
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (j, b) in v.iter().enumerate() {
            if f.is_zero(b) {
                continue;
            }
            for (i, acc) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !f.is_zero(a) {
                    f.mul_add_assign(acc, a, b);
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Matrix<F>, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, s: &F::Elem) -> Matrix<F> {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| self.field.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; row `(i1, i2)` is `i1 * other.rows + i2`.
    pub fn kron(&self, other: &Matrix<F>) -> Matrix<F> {
        let f = &self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows * r2, self.cols * c2);
        let oc = out.cols;
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = other.get(i2, j2);
                        if !f.is_zero(b) {
                            out.data[(i1 * r2 + i2) * oc + j1 * c2 + j2] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a list of factors, left to right.
    pub fn kron_all(field: &F, factors: &[&Matrix<F>]) -> Matrix<F> {
        let mut acc = Matrix::identity(field, 1);
        for m in factors {
            acc = acc.kron(m);
        }
        acc
    }

    pub fn hstack(field: &F, rows: usize, blocks: &[&Matrix<F>]) -> Matrix<F> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.data[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn vstack(field: &F, cols: usize, blocks: &[&Matrix<F>]) -> Matrix<F> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<F>) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Matrix::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Matrix<F>) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        (0..self.rows * self.cols)
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// First column that differs, i.e. the first basis vector on which two maps disagree.
    pub fn first_differing_column(&self, other: &Matrix<F>) -> Option<usize> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some(0);
        }
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]`, restricted to the listed columns.
    pub(crate) fn row_axpy(&mut self, target: usize, source: usize, factor: &F::Elem, cols: &[usize]) {
        let c = self.cols;
        for &j in cols {
            let t = self.field.mul(factor, &self.data[source * c + j]);
            let cell = &mut self.data[target * c + j];
            *cell = self.field.sub(cell, &t);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: &F::Elem) {
        let c = self.cols;
        for j in 0..c {
            let v = self.field.mul(&self.data[r * c + j], s);
            self.data[r * c + j] = v;
        }
    }
}
