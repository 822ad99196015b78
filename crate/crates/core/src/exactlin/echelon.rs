use crate::field::Field;

use super::Matrix;

/// Reduced row echelon form together with its pivot structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    /// Gauss-Jordan elimination. The pivot in each column is the first row
    /// (at or below the current one) with a nonzero entry.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field().clone();
        let mut m = self.clone();
        let (rows, cols) = (m.rows(), m.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            let Some(src) = (r..rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            m.swap_rows(src, r);
            let inv = f.inv(m.get(r, col)).expect("nonzero pivot");
            m.scale_row(r, &inv);
            let support: Vec<usize> = (col..cols).filter(|&j| !f.is_zero(m.get(r, j))).collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if !f.is_zero(&factor) {
                    m.row_axpy(i, r, &factor, &support);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of `{v : self * v = 0}`.
    ///
    /// One basis vector per free column, with a 1 in that column and zeros
    /// in the other free columns.
    pub fn kernel(&self) -> Matrix<F> {
        let f = self.field().clone();
        let Rref { matrix, pivots, .. } = self.rref();
        let cols = self.cols();
        let free: Vec<usize> = (0..cols).filter(|j| !pivots.contains(j)).collect();
        Matrix::from_fn(&f, free.len(), cols, |k, j| {
            if j == free[k] {
                f.one()
            } else if let Some(t) = pivots.iter().position(|&p| p == j) {
                f.neg(matrix.get(t, free[k]))
            } else {
                f.zero()
            }
        })
    }

    /// Square and of full rank.
    pub fn is_isomorphism(&self) -> bool {
        self.is_square() && self.rank() == self.rows()
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows();
        let f = self.field().clone();
        let aug = Matrix::hstack(&f, n, &[self, &Matrix::identity(&f, n)]).rref();
        if aug.pivots.iter().copied().take(n).ne(0..n) {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(aug.matrix.select_columns(&idx))
    }

    /// Some `X` with `self * X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows(), rhs.rows(), "solve: row mismatch");
        let f = self.field().clone();
        let n = self.cols();
        let aug = Matrix::hstack(&f, self.rows(), &[self, rhs]).rref();
        if aug.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(&f, n, rhs.cols());
        for (t, &p) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols() {
                x.set(p, j, aug.matrix.get(t, n + j).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let b = Matrix::from_columns(self.field(), rhs.len(), &[rhs.to_vec()]);
        self.solve(&b).map(|x| x.column(0))
    }
}

/// A subspace kept as a reduced row echelon basis.
///
/// Because every basis row has a 1 in its pivot column and zeros in the
/// other pivot columns, the coordinates of a member vector are its entries
/// at the pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpace<F: Field> {
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    field: F,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            field: field.clone(),
        }
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let mut s = Self::new(m.field(), m.cols());
        for i in 0..m.rows() {
            s.insert(m.row(i).to_vec());
        }
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (j, r) in row.iter().enumerate() {
                if !f.is_zero(r) {
                    let t = f.mul(&c, r);
                    v[j] = f.sub(&v[j], &t);
                }
            }
        }
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.dim, "RowSpace::insert length");
        if self.is_full() {
            return false;
        }
        let f = self.field.clone();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for e in v.iter_mut() {
            if !f.is_zero(e) {
                *e = f.mul(e, &inv);
            }
        }
        let support: Vec<usize> = (0..self.dim).filter(|&j| !f.is_zero(&v[j])).collect();
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for &j in &support {
                let t = f.mul(&c, &v[j]);
                row[j] = f.sub(&row[j], &t);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|e| self.field.is_zero(e))
    }

    /// Coordinates with respect to the echelon basis, if `v` is a member.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Basis as the rows of a matrix.
    pub fn basis(&self) -> Matrix<F> {
        Matrix::from_rows(&self.field, self.dim, self.rows.clone()).expect("consistent rows")
    }

    pub fn basis_vector(&self, i: usize) -> &[F::Elem] {
        &self.rows[i]
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    f.mul_add_assign(o, c, r);
                }
            }
        }
        out
    }
}
