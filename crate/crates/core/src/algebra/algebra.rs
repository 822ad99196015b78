use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

/// A finite-dimensional associative algebra given by structure constants.
///
/// `mult` is the multiplication map `A ⊗ A -> A` as a `dim x dim²` matrix;
/// column `i * dim + j` holds the coordinates of `e_i e_j`. The unit is
/// optional: firm rings are usually not unital.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    mult: Matrix<F>,
    unit: Option<Vec<F::Elem>>,
}

/// Structural equality with a pointer fast path.
pub fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Algebra<F> {
    pub fn new(field: &F, dim: usize, mult: Matrix<F>, unit: Option<Vec<F::Elem>>) -> Result<Self> {
        if mult.rows() != dim || mult.cols() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants of a dim-{dim} algebra must be {dim}x{}, got {}x{}",
                dim * dim,
                mult.rows(),
                mult.cols()
            )));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::DimensionMismatch(format!("unit has {} coordinates, expected {dim}", u.len())));
            }
        }
        Ok(Algebra {
            field: field.clone(),
            dim,
            mult,
            unit,
        })
    }

    /// Builds the multiplication from a function returning `e_i e_j`.
    pub fn from_products(
        field: &F,
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vec<F::Elem>,
        unit: Option<Vec<F::Elem>>,
    ) -> Result<Self> {
        let mut columns = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                if p.len() != dim {
                    return Err(Error::DimensionMismatch(format!("product e{i}*e{j} has {} coordinates", p.len())));
                }
                columns.push(p);
            }
        }
        Self::new(field, dim, Matrix::from_columns(field, dim, &columns), unit)
    }

    /// The ground field as a one-dimensional unital algebra.
    pub fn base_field(field: &F) -> Self {
        Self::new(field, 1, Matrix::identity(field, 1), Some(vec![field.one()])).expect("shape")
    }

    pub fn zero_multiplication(field: &F, dim: usize) -> Self {
        Self::new(field, dim, Matrix::zeros(field, dim, dim * dim), None).expect("shape")
    }

    /// `M_n(k)` with basis `e_ij` at index `i * n + j`.
    pub fn full_matrix(field: &F, n: usize) -> Self {
        let basis: Vec<Matrix<F>> = (0..n * n).map(|k| matrix_unit(field, n, k / n, k % n)).collect();
        Self::from_matrix_basis(field, n, &basis).expect("matrix units span a subalgebra")
    }

    /// `k[x]/(x^n)` with basis `1, x, ..., x^(n-1)`.
    pub fn truncated_polynomial(field: &F, n: usize) -> Self {
        let unit = (n > 0).then(|| {
            let mut u = vec![field.zero(); n];
            u[0] = field.one();
            u
        });
        Self::from_products(
            field,
            n,
            |i, j| {
                let mut v = vec![field.zero(); n];
                if i + j < n {
                    v[i + j] = field.one();
                }
                v
            },
            unit,
        )
        .expect("shape")
    }

    /// The subalgebra of `M_n(k)` spanned by the given matrices.
    ///
    /// Fails if the matrices are dependent or their span is not closed under
    /// products. The unit is set when the identity matrix lies in the span.
    pub fn from_matrix_basis(field: &F, n: usize, basis: &[Matrix<F>]) -> Result<Self> {
        let k = basis.len();
        let cols: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.as_flat().to_vec()).collect();
        let b = Matrix::from_columns(field, n * n, &cols);
        if b.rank() != k {
            return Err(Error::InvalidParams("matrix basis is linearly dependent".into()));
        }
        let mut products = Vec::with_capacity(k * k);
        for x in basis {
            for y in basis {
                products.push(x.mul(y).into_flat());
            }
        }
        let p = Matrix::from_columns(field, n * n, &products);
        let mult = b
            .solve(&p)
            .ok_or_else(|| Error::InvalidParams("span of the matrices is not closed under multiplication".into()))?;
        let unit = b.solve_vec(Matrix::identity(field, n).as_flat());
        Self::new(field, k, mult, unit)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Matrix<F> {
        &self.mult
    }

    pub fn unit(&self) -> Option<&[F::Elem]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        unit_vector(&self.field, self.dim, i)
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.mult.column(i * self.dim + j)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                let col = i * self.dim + j;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mult.get(k, col);
                    if !f.is_zero(c) {
                        f.mul_add_assign(o, &ab, c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ e_i y`.
    pub fn left_mult_basis(&self, i: usize) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.dim, self.dim, |k, j| self.mult.get(k, i * self.dim + j).clone())
    }

    /// Matrix of `y ↦ y e_i`.
    pub fn right_mult_basis(&self, i: usize) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.dim, self.dim, |k, j| self.mult.get(k, j * self.dim + i).clone())
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        combine_ops(&self.field, self.dim, x, |i| self.left_mult_basis(i))
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        combine_ops(&self.field, self.dim, x, |i| self.right_mult_basis(i))
    }

    /// All basis triples `(i, j, k)` with `(e_i e_j) e_k ≠ e_i (e_j e_k)`, in lexicographic order.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim;
        let lefts: Vec<Matrix<F>> = (0..d).map(|i| self.left_mult_basis(i)).collect();
        let rights: Vec<Matrix<F>> = (0..d).map(|k| self.right_mult_basis(k)).collect();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    let jk = self.product(j, k);
                    if rights[k].mul_vec(&ij) != lefts[i].mul_vec(&jk) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// First basis vector on which the declared unit fails to act as identity.
    pub fn unit_failure(&self) -> Option<usize> {
        let u = self.unit.as_ref()?;
        (0..self.dim).find(|&j| {
            let e = self.basis_vector(j);
            self.mul(u, &e) != e || self.mul(&e, u) != e
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let fails = self.associativity_failures();
        match fails.first() {
            None => r.pass("associativity", format!("{} basis triples", self.dim.pow(3))),
            Some(&(i, j, k)) => r.fail(
                "associativity",
                format!("{} of {} basis triples fail", fails.len(), self.dim.pow(3)),
                Some(Witness::Triple(i, j, k)),
            ),
        }
        if self.unit.is_some() {
            r.expect_none(
                "unit",
                "declared unit acts as identity",
                self.unit_failure().map(|j| Witness::basis("algebra", j)),
            );
        } else {
            r.skip("unit", "no unit declared");
        }
        r
    }

    /// Solves for a two-sided unit.
    pub fn find_unit(&self) -> Option<Vec<F::Elem>> {
        let d = self.dim;
        let f = &self.field;
        // Unknown u; equations u e_j = e_j and e_j u = e_j for every j.
        let mut a = Matrix::zeros(f, 2 * d * d, d);
        let mut b = Matrix::zeros(f, 2 * d * d, 1);
        for j in 0..d {
            for k in 0..d {
                for i in 0..d {
                    a.set(j * d + k, i, self.mult.get(k, i * d + j).clone());
                    a.set(d * d + j * d + k, i, self.mult.get(k, j * d + i).clone());
                }
                if j == k {
                    b.set(j * d + k, 0, f.one());
                    b.set(d * d + j * d + k, 0, f.one());
                }
            }
        }
        a.solve(&b).map(|x| x.column(0))
    }

    /// Records a unit if one exists. Never adjoins a new one.
    pub fn with_detected_unit(mut self) -> Self {
        if self.unit.is_none() {
            self.unit = self.find_unit();
        }
        self
    }

    /// First basis pair `(i, j)` with `φ(e_i e_j) ≠ φ(e_i) φ(e_j)`, for `φ: self -> target`.
    pub fn morphism_failure(&self, target: &Algebra<F>, phi: &Matrix<F>) -> Option<(usize, usize)> {
        assert_eq!((phi.rows(), phi.cols()), (target.dim, self.dim), "morphism shape");
        let images: Vec<Vec<F::Elem>> = phi.columns();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = phi.mul_vec(&self.product(i, j));
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The subalgebra with the given (independent) basis vectors, and its inclusion matrix.
    pub fn subalgebra(&self, basis: &[Vec<F::Elem>]) -> Result<(Algebra<F>, Matrix<F>)> {
        let f = &self.field;
        let b = Matrix::from_columns(f, self.dim, basis);
        if b.rank() != basis.len() {
            return Err(Error::InvalidParams("subalgebra basis is linearly dependent".into()));
        }
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for x in basis {
            for y in basis {
                products.push(self.mul(x, y));
            }
        }
        let p = Matrix::from_columns(f, self.dim, &products);
        let mult = b
            .solve(&p)
            .ok_or_else(|| Error::PreconditionFailed("subspace is not closed under multiplication".into()))?;
        let sub = Algebra::new(f, basis.len(), mult, None)?.with_detected_unit();
        Ok((sub, b))
    }

    /// Whether `x s` lies in the span for all basis `x` and span elements `s`.
    pub fn is_left_ideal(&self, span: &[Vec<F::Elem>]) -> bool {
        self.ideal_test(span, true)
    }

    pub fn is_right_ideal(&self, span: &[Vec<F::Elem>]) -> bool {
        self.ideal_test(span, false)
    }

    fn ideal_test(&self, span: &[Vec<F::Elem>], left: bool) -> bool {
        let b = Matrix::from_columns(&self.field, self.dim, span);
        let rs = crate::exactlin::RowSpace::from_matrix(&b.transpose());
        (0..self.dim).all(|x| {
            let ex = self.basis_vector(x);
            span.iter().all(|s| {
                let p = if left { self.mul(&ex, s) } else { self.mul(s, &ex) };
                rs.contains(&p)
            })
        })
    }
}

pub(crate) fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn matrix_unit<F: Field>(field: &F, n: usize, i: usize, j: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(field, n, n);
    m.set(i, j, field.one());
    m
}

/// `Σ_i x_i op(i)`.
pub(crate) fn combine_ops<F: Field>(field: &F, dim: usize, x: &[F::Elem], op: impl Fn(usize) -> Matrix<F>) -> Matrix<F> {
    let mut acc = Matrix::zeros(field, dim, dim);
    for (i, c) in x.iter().enumerate() {
        if !field.is_zero(c) {
            acc = acc.add(&op(i).scale(c));
        }
    }
    acc
}
