use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, QuotientSpace, RowSpace};
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

use super::algebra::{combine_ops, same_algebra, Algebra};

/// A `B`-`A` bimodule given by the matrices of the basis actions.
///
/// `left_ops[b]` is `m ↦ e_b · m` and `right_ops[a]` is `m ↦ m · e_a`.
/// One-sided modules use the base field (acting by scalars) on the other side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule<F: Field> {
    field: F,
    dim: usize,
    left: Arc<Algebra<F>>,
    right: Arc<Algebra<F>>,
    left_ops: Vec<Matrix<F>>,
    right_ops: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        dim: usize,
        left_ops: Vec<Matrix<F>>,
        right_ops: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if left_ops.len() != left.dim() || right_ops.len() != right.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} left and {} right action matrices, got {} and {}",
                left.dim(),
                right.dim(),
                left_ops.len(),
                right_ops.len()
            )));
        }
        if let Some(m) = left_ops.iter().chain(&right_ops).find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "action matrix is {}x{}, module has dim {dim}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Bimodule {
            field: left.field().clone(),
            dim,
            left,
            right,
            left_ops,
            right_ops,
        })
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(a: &Arc<Algebra<F>>) -> Self {
        let left_ops = (0..a.dim()).map(|i| a.left_mult_basis(i)).collect();
        let right_ops = (0..a.dim()).map(|i| a.right_mult_basis(i)).collect();
        Self::new(a.clone(), a.clone(), a.dim(), left_ops, right_ops).expect("shape")
    }

    /// `A` as a right `A`-module.
    pub fn right_regular(a: &Arc<Algebra<F>>) -> Self {
        Self::regular(a).forget_left()
    }

    /// `A` as a left `A`-module.
    pub fn left_regular(a: &Arc<Algebra<F>>) -> Self {
        Self::regular(a).forget_right()
    }

    /// `A^n` as a right `A`-module.
    pub fn free_right(a: &Arc<Algebra<F>>, n: usize) -> Self {
        let base = Self::right_regular(a);
        let mut acc = Self::zero(&base.left, a);
        for _ in 0..n {
            acc = acc.direct_sum(&base).expect("same algebras");
        }
        acc
    }

    /// `k^n` with both actions by scalars.
    pub fn vector_space(field: &F, n: usize) -> Self {
        let k = Arc::new(Algebra::base_field(field));
        Self::new(k.clone(), k, n, vec![Matrix::identity(field, n)], vec![Matrix::identity(field, n)]).expect("shape")
    }

    pub fn zero(left: &Arc<Algebra<F>>, right: &Arc<Algebra<F>>) -> Self {
        let f = left.field();
        Self::new(
            left.clone(),
            right.clone(),
            0,
            vec![Matrix::zeros(f, 0, 0); left.dim()],
            vec![Matrix::zeros(f, 0, 0); right.dim()],
        )
        .expect("shape")
    }

    /// Column vectors `k^n` as a left `M_n(k)`-module, right `k`-module.
    pub fn column_vectors(mn: &Arc<Algebra<F>>, n: usize) -> Self {
        let f = mn.field();
        let ops = (0..n * n).map(|k| super::algebra::matrix_unit(f, n, k / n, k % n)).collect();
        let k = Arc::new(Algebra::base_field(f));
        Self::new(mn.clone(), k, n, ops, vec![Matrix::identity(f, n)]).expect("shape")
    }

    /// Row vectors `k^n` as a left `k`-module, right `M_n(k)`-module.
    pub fn row_vectors(mn: &Arc<Algebra<F>>, n: usize) -> Self {
        let f = mn.field();
        // e_i · e_kl = δ_ik e_l, so the matrix of R_{kl} has a single 1 at (l, k).
        let ops = (0..n * n).map(|k| super::algebra::matrix_unit(f, n, k % n, k / n)).collect();
        let k = Arc::new(Algebra::base_field(f));
        Self::new(k, mn.clone(), n, vec![Matrix::identity(f, n)], ops).expect("shape")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra<F>> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra<F>> {
        &self.right
    }

    pub fn left_ops(&self) -> &[Matrix<F>] {
        &self.left_ops
    }

    pub fn right_ops(&self) -> &[Matrix<F>] {
        &self.right_ops
    }

    /// Matrix of `m ↦ x · m`.
    pub fn left_op(&self, x: &[F::Elem]) -> Matrix<F> {
        combine_ops(&self.field, self.dim, x, |i| self.left_ops[i].clone())
    }

    /// Matrix of `m ↦ m · x`.
    pub fn right_op(&self, x: &[F::Elem]) -> Matrix<F> {
        combine_ops(&self.field, self.dim, x, |i| self.right_ops[i].clone())
    }

    /// The right action `M ⊗ A -> M`; column `i * dim A + a` is `e_i · e_a`.
    pub fn right_action_map(&self) -> Matrix<F> {
        let da = self.right.dim();
        let mut out = Matrix::zeros(&self.field, self.dim, self.dim * da);
        for (a, op) in self.right_ops.iter().enumerate() {
            for i in 0..self.dim {
                for r in 0..self.dim {
                    out.set(r, i * da + a, op.get(r, i).clone());
                }
            }
        }
        out
    }

    /// The left action `B ⊗ M -> M`; column `b * dim + i` is `e_b · e_i`.
    pub fn left_action_map(&self) -> Matrix<F> {
        let d = self.dim;
        let mut out = Matrix::zeros(&self.field, d, self.left.dim() * d);
        for (b, op) in self.left_ops.iter().enumerate() {
            for i in 0..d {
                for r in 0..d {
                    out.set(r, b * d + i, op.get(r, i).clone());
                }
            }
        }
        out
    }

    /// Same space, left action replaced by the base field.
    pub fn forget_left(&self) -> Self {
        let k = Arc::new(Algebra::base_field(&self.field));
        Self::new(k, self.right.clone(), self.dim, vec![Matrix::identity(&self.field, self.dim)], self.right_ops.clone())
            .expect("shape")
    }

    /// Same space, right action replaced by the base field.
    pub fn forget_right(&self) -> Self {
        let k = Arc::new(Algebra::base_field(&self.field));
        Self::new(self.left.clone(), k, self.dim, self.left_ops.clone(), vec![Matrix::identity(&self.field, self.dim)])
            .expect("shape")
    }

    /// Replaces the left action by new matrices over another algebra.
    pub fn with_left(&self, left: Arc<Algebra<F>>, ops: Vec<Matrix<F>>) -> Result<Self> {
        Self::new(left, self.right.clone(), self.dim, ops, self.right_ops.clone())
    }

    pub fn with_right(&self, right: Arc<Algebra<F>>, ops: Vec<Matrix<F>>) -> Result<Self> {
        Self::new(self.left.clone(), right, self.dim, self.left_ops.clone(), ops)
    }

    /// Pulls the left action back along `φ: B' -> B` (a `dim B x dim B'` matrix).
    pub fn restrict_left(&self, new_left: &Arc<Algebra<F>>, phi: &Matrix<F>) -> Result<Self> {
        check_map_shape(phi, self.left.dim(), new_left.dim())?;
        let ops = (0..new_left.dim()).map(|b| self.left_op(&phi.column(b))).collect();
        self.with_left(new_left.clone(), ops)
    }

    /// Pulls the right action back along `φ: A' -> A`.
    pub fn restrict_right(&self, new_right: &Arc<Algebra<F>>, phi: &Matrix<F>) -> Result<Self> {
        check_map_shape(phi, self.right.dim(), new_right.dim())?;
        let ops = (0..new_right.dim()).map(|a| self.right_op(&phi.column(a))).collect();
        self.with_right(new_right.clone(), ops)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.left, &other.left) || !same_algebra(&self.right, &other.right) {
            return Err(Error::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
        }
        let left_ops = self.left_ops.iter().zip(&other.left_ops).map(|(x, y)| x.direct_sum(y)).collect();
        let right_ops = self.right_ops.iter().zip(&other.right_ops).map(|(x, y)| x.direct_sum(y)).collect();
        Self::new(self.left.clone(), self.right.clone(), self.dim + other.dim, left_ops, right_ops)
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> Self {
        let mut acc = Self::zero(&self.left, &self.right);
        for _ in 0..n {
            acc = acc.direct_sum(self).expect("same algebras");
        }
        acc
    }

    /// First failure of `L_{b b'} = L_b L_b'`, as `(b, b', column)`.
    pub fn left_associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for b in 0..self.left.dim() {
            for b2 in 0..self.left.dim() {
                let lhs = self.left_op(&self.left.product(b, b2));
                let rhs = self.left_ops[b].mul(&self.left_ops[b2]);
                if let Some(m) = lhs.first_differing_column(&rhs) {
                    return Some((b, b2, m));
                }
            }
        }
        None
    }

    /// First failure of `R_{a a'} = R_{a'} R_a`, as `(a, a', column)`.
    pub fn right_associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.right.dim() {
            for a2 in 0..self.right.dim() {
                let lhs = self.right_op(&self.right.product(a, a2));
                let rhs = self.right_ops[a2].mul(&self.right_ops[a]);
                if let Some(m) = lhs.first_differing_column(&rhs) {
                    return Some((a, a2, m));
                }
            }
        }
        None
    }

    /// First failure of `(b · m) · a = b · (m · a)`, as `(b, m, a)`.
    pub fn commutation_failure(&self) -> Option<(usize, usize, usize)> {
        for (b, l) in self.left_ops.iter().enumerate() {
            for (a, r) in self.right_ops.iter().enumerate() {
                if let Some(m) = r.mul(l).first_differing_column(&l.mul(r)) {
                    return Some((b, m, a));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        r.expect_none(
            "left_associativity",
            "(b b')·m = b·(b'·m)",
            self.left_associativity_failure().map(|(a, b, c)| Witness::Triple(a, b, c)),
        );
        r.expect_none(
            "right_associativity",
            "m·(a a') = (m·a)·a'",
            self.right_associativity_failure().map(|(a, b, c)| Witness::Triple(c, a, b)),
        );
        r.expect_none(
            "actions_commute",
            "(b·m)·a = b·(m·a)",
            self.commutation_failure().map(|(a, b, c)| Witness::Triple(a, b, c)),
        );
        match self.left.unit() {
            Some(u) => r.expect_none(
                "left_unit",
                "unit acts as identity on the left",
                self.left_op(u).first_differing_column(&Matrix::identity(&self.field, self.dim)).map(|m| Witness::basis("module", m)),
            ),
            None => r.skip("left_unit", "left algebra has no unit"),
        }
        match self.right.unit() {
            Some(u) => r.expect_none(
                "right_unit",
                "unit acts as identity on the right",
                self.right_op(u).first_differing_column(&Matrix::identity(&self.field, self.dim)).map(|m| Witness::basis("module", m)),
            ),
            None => r.skip("right_unit", "right algebra has no unit"),
        }
        r
    }

    /// The sub-bimodule spanned by the given vectors, with its inclusion matrix.
    pub fn submodule(&self, span: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let rs = RowSpace::from_matrix(&Matrix::from_columns(&self.field, self.dim, span).transpose());
        let basis: Vec<Vec<F::Elem>> = (0..rs.rank()).map(|i| rs.basis_vector(i).to_vec()).collect();
        let inc = Matrix::from_columns(&self.field, self.dim, &basis);
        let restrict = |op: &Matrix<F>| -> Result<Matrix<F>> {
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|v| {
                    rs.coords(&op.mul_vec(v))
                        .ok_or_else(|| Error::PreconditionFailed("span is not closed under the actions".into()))
                })
                .collect::<Result<_>>()?;
            Ok(Matrix::from_columns(&self.field, basis.len(), &cols))
        };
        let left_ops = self.left_ops.iter().map(restrict).collect::<Result<_>>()?;
        let right_ops = self.right_ops.iter().map(restrict).collect::<Result<_>>()?;
        Ok((Self::new(self.left.clone(), self.right.clone(), basis.len(), left_ops, right_ops)?, inc))
    }

    /// The quotient by the sub-bimodule generated (as a subspace) by `span`, with its projection.
    pub fn quotient(&self, span: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let rel = Matrix::from_columns(&self.field, self.dim, span).transpose();
        let q = QuotientSpace::new(&self.field, self.dim, &rel);
        let closed = span
            .iter()
            .all(|v| self.left_ops.iter().chain(&self.right_ops).all(|op| q.relations().contains(&op.mul_vec(v))));
        if !closed {
            return Err(Error::PreconditionFailed("quotient by a subspace that is not a sub-bimodule".into()));
        }
        let induce = |op: &Matrix<F>| q.project().mul(op).mul(q.section());
        let left_ops = self.left_ops.iter().map(induce).collect();
        let right_ops = self.right_ops.iter().map(induce).collect();
        let m = Self::new(self.left.clone(), self.right.clone(), q.basis_dim(), left_ops, right_ops)?;
        Ok((m, q.project().clone()))
    }

    /// The sub-bimodule generated by `span` under both actions.
    pub fn generated_submodule(&self, span: &[Vec<F::Elem>]) -> RowSpace<F> {
        let mut rs = RowSpace::new(&self.field, self.dim);
        let mut queue: Vec<Vec<F::Elem>> = span.to_vec();
        while let Some(v) = queue.pop() {
            if rs.insert(v.clone()) {
                for op in self.left_ops.iter().chain(&self.right_ops) {
                    queue.push(op.mul_vec(&v));
                }
            }
        }
        rs
    }
}

fn check_map_shape<F: Field>(phi: &Matrix<F>, rows: usize, cols: usize) -> Result<()> {
    if phi.rows() != rows || phi.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "algebra map is {}x{}, expected {rows}x{cols}",
            phi.rows(),
            phi.cols()
        )));
    }
    Ok(())
}

/// First `(a, basis)` with `f(x · e_a) ≠ f(x) · e_a`.
pub fn right_linearity_failure<F: Field>(source: &Bimodule<F>, target: &Bimodule<F>, f: &Matrix<F>) -> Option<(usize, usize)> {
    for (a, (rs, rt)) in source.right_ops.iter().zip(&target.right_ops).enumerate() {
        if let Some(m) = f.mul(rs).first_differing_column(&rt.mul(f)) {
            return Some((a, m));
        }
    }
    None
}

/// First `(b, basis)` with `f(e_b · x) ≠ e_b · f(x)`.
pub fn left_linearity_failure<F: Field>(source: &Bimodule<F>, target: &Bimodule<F>, f: &Matrix<F>) -> Option<(usize, usize)> {
    for (b, (ls, lt)) in source.left_ops.iter().zip(&target.left_ops).enumerate() {
        if let Some(m) = f.mul(ls).first_differing_column(&lt.mul(f)) {
            return Some((b, m));
        }
    }
    None
}

/// A linear map between bimodules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    pub source: Arc<Bimodule<F>>,
    pub target: Arc<Bimodule<F>>,
    pub matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: Arc<Bimodule<F>>, target: Arc<Bimodule<F>>, matrix: Matrix<F>) -> Result<Self> {
        check_map_shape(&matrix, target.dim(), source.dim())?;
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn is_left_linear(&self) -> bool {
        left_linearity_failure(&self.source, &self.target, &self.matrix).is_none()
    }

    pub fn is_right_linear(&self) -> bool {
        right_linearity_failure(&self.source, &self.target, &self.matrix).is_none()
    }

    pub fn is_bilinear(&self) -> bool {
        self.is_left_linear() && self.is_right_linear()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap<F>) -> Result<Self> {
        if inner.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch("composing maps with mismatched spaces".into()));
        }
        Self::new(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn regular_bimodules_validate() {
        let q = Rationals;
        let m2 = Arc::new(Algebra::full_matrix(&q, 2));
        assert!(Bimodule::regular(&m2).validate().passed());
        assert!(Bimodule::column_vectors(&m2, 2).validate().passed());
        assert!(Bimodule::row_vectors(&m2, 2).validate().passed());
        let d = Arc::new(Algebra::truncated_polynomial(&q, 3));
        assert!(Bimodule::free_right(&d, 2).validate().passed());
    }

    #[test]
    fn quotient_and_submodule() {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let a = Bimodule::right_regular(&d);
        let x = d.basis_vector(1);
        let (sub, inc) = a.submodule(std::slice::from_ref(&x)).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(inc.column(0), x);
        let (quo, proj) = a.quotient(&[x]).unwrap();
        assert_eq!(quo.dim(), 1);
        assert!(quo.validate().passed());
        assert!(right_linearity_failure(&a, &quo, &proj).is_none());
        assert!(a.quotient(&[d.basis_vector(0)]).is_err());
    }

    #[test]
    fn broken_action_is_reported() {
        let q = Rationals;
        let m2 = Arc::new(Algebra::full_matrix(&q, 2));
        let good = Bimodule::column_vectors(&m2, 2);
        let mut ops = good.left_ops().to_vec();
        ops.swap(1, 2);
        let bad = good.with_left(m2, ops).unwrap();
        let r = bad.validate();
        assert!(!r.passed());
        assert_eq!(r.status_of("left_associativity"), Some(crate::report::Status::Fail));
    }
}
