use std::sync::Arc;

use crate::algebra::{left_linearity_failure, reassociate, right_linearity_failure, Algebra, Bimodule, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{kron2_apply, Matrix};
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

/// An `A`-coring: an `A`-`A` bimodule `C` with `Δ: C -> C ⊗_A C` and `ε: C -> A`.
///
/// `comult` is given in the coordinates of `cc`, the computed `C ⊗_A C`.
#[derive(Debug, Clone)]
pub struct Coring<F: Field> {
    base: Arc<Algebra<F>>,
    carrier: Arc<Bimodule<F>>,
    base_module: Arc<Bimodule<F>>,
    cc: Tensor<F>,
    comult: Matrix<F>,
    counit: Matrix<F>,
}

impl<F: Field> PartialEq for Coring<F> {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.comult == other.comult && self.counit == other.counit
    }
}

impl<F: Field> Coring<F> {
    pub fn new(carrier: Arc<Bimodule<F>>, comult: Matrix<F>, counit: Matrix<F>) -> Result<Self> {
        let base = carrier.left_algebra().clone();
        if !crate::algebra::same_algebra(&base, carrier.right_algebra()) {
            return Err(Error::AlgebraMismatch("coring carrier must be a bimodule over one algebra".into()));
        }
        let cc = Tensor::new(&carrier, &carrier)?;
        let d = carrier.dim();
        if comult.rows() != cc.dim() || comult.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "comultiplication is {}x{}, expected {}x{d}",
                comult.rows(),
                comult.cols(),
                cc.dim()
            )));
        }
        if counit.rows() != base.dim() || counit.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "counit is {}x{}, expected {}x{d}",
                counit.rows(),
                counit.cols(),
                base.dim()
            )));
        }
        let base_module = Arc::new(Bimodule::regular(&base));
        Ok(Coring {
            base,
            carrier,
            base_module,
            cc,
            comult,
            counit,
        })
    }

    /// Takes `Δ` on ambient coordinates of `C ⊗_k C` and projects it.
    pub fn from_ambient(carrier: Arc<Bimodule<F>>, comult_ambient: &Matrix<F>, counit: Matrix<F>) -> Result<Self> {
        let cc = Tensor::new(&carrier, &carrier)?;
        if comult_ambient.rows() != cc.ambient_dim() {
            return Err(Error::DimensionMismatch("ambient comultiplication has the wrong number of rows".into()));
        }
        Self::new(carrier, cc.proj().mul(comult_ambient), counit)
    }

    /// `C = A` with `Δ` the inverse of `A ⊗_A A -> A` and `ε = id`.
    pub fn trivial(a: &Arc<Algebra<F>>) -> Result<Self> {
        if !a.is_unital() {
            return Err(Error::NotUnital);
        }
        let c = Arc::new(Bimodule::regular(a));
        let cc = Tensor::new(&c, &c)?;
        let comult = cc.right_collapse().inverse().expect("unital algebra collapses");
        Self::new(c, comult, Matrix::identity(a.field(), a.dim()))
    }

    /// The `n x n` matrix coring over the base field: `Δ(e_ij) = Σ_l e_il ⊗ e_lj`, `ε(e_ij) = δ_ij`.
    pub fn matrix_coring(field: &F, n: usize) -> Self {
        let c = Arc::new(Bimodule::vector_space(field, n * n));
        let d = n * n;
        let mut amb = Matrix::zeros(field, d * d, d);
        let mut counit = Matrix::zeros(field, 1, d);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    amb.set((i * n + l) * d + l * n + j, i * n + j, field.one());
                }
            }
            counit.set(0, i * n + i, field.one());
        }
        Self::from_ambient(c, &amb, counit).expect("shape")
    }

    /// The Sweedler coring `A ⊗_B A` of an algebra map `φ: B -> A` (a `dim A x dim B` matrix).
    ///
    /// `Δ(a ⊗ a') = (a ⊗ 1) ⊗ (1 ⊗ a')` and `ε(a ⊗ a') = a a'`.
    pub fn sweedler(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>, phi: &Matrix<F>) -> Result<Self> {
        let one = a.unit().ok_or(Error::NotUnital)?.to_vec();
        let reg = Bimodule::regular(a);
        let ab = Arc::new(reg.restrict_right(b, phi)?);
        let ba = Arc::new(reg.restrict_left(b, phi)?);
        let t = Tensor::new(&ab, &ba)?;
        let c = t.result().clone();
        let cc = Tensor::new(&c, &c)?;
        let d = a.dim();
        let mut cols = Vec::with_capacity(t.dim());
        for &amb in t.quotient().complement() {
            let (i, j) = (amb / d, amb % d);
            let left = t.pure(&a.basis_vector(i), &one);
            let right = t.pure(&one, &a.basis_vector(j));
            cols.push(cc.pure(&left, &right));
        }
        let comult = Matrix::from_columns(a.field(), cc.dim(), &cols);
        let counit = a.mult().mul(t.sec());
        Self::new(c, comult, counit)
    }

    /// The two-dimensional coalgebra with `Δc0 = c0 ⊗ c0`, `Δc1 = c0 ⊗ c1 + c1 ⊗ c0`,
    /// `ε(c0) = 1`, `ε(c1) = 0`.
    pub fn divided_power(field: &F) -> Self {
        let c = Arc::new(Bimodule::vector_space(field, 2));
        let amb = Matrix::from_i64(field, &[&[1, 0], &[0, 1], &[0, 1], &[0, 0]]);
        Self::from_ambient(c, &amb, Matrix::from_i64(field, &[&[1, 0]])).expect("shape")
    }

    pub fn field(&self) -> &F {
        self.base.field()
    }

    pub fn base(&self) -> &Arc<Algebra<F>> {
        &self.base
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn base_module(&self) -> &Arc<Bimodule<F>> {
        &self.base_module
    }

    pub fn carrier(&self) -> &Arc<Bimodule<F>> {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn cc(&self) -> &Tensor<F> {
        &self.cc
    }

    pub fn comult(&self) -> &Matrix<F> {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix<F> {
        &self.counit
    }

    /// Same carrier, replaced structure maps (for negative controls).
    pub fn with_maps(&self, comult: Matrix<F>, counit: Matrix<F>) -> Result<Self> {
        Self::new(self.carrier.clone(), comult, counit)
    }

    /// `(ε ⊗ C) ∘ Δ` followed by the left action `A ⊗ C -> C`.
    pub fn left_counit_composite(&self) -> Matrix<F> {
        let id = Matrix::identity(self.field(), self.dim());
        let lifted = self.cc.sec().mul(&self.comult);
        self.carrier.left_action_map().mul(&kron2_apply(&self.counit, &id, &lifted))
    }

    /// `(C ⊗ ε) ∘ Δ` followed by the right action `C ⊗ A -> C`.
    pub fn right_counit_composite(&self) -> Matrix<F> {
        let id = Matrix::identity(self.field(), self.dim());
        let lifted = self.cc.sec().mul(&self.comult);
        self.carrier.right_action_map().mul(&kron2_apply(&id, &self.counit, &lifted))
    }

    /// Both sides of coassociativity in `(C ⊗ C) ⊗ C`.
    pub fn coassociativity_sides(&self) -> Result<(Matrix<F>, Matrix<F>)> {
        let id = Matrix::identity(self.field(), self.dim());
        let cc_c = Tensor::new(self.cc.result(), &self.carrier)?;
        let c_cc = Tensor::new(&self.carrier, self.cc.result())?;
        let lhs = self.cc.induced(&cc_c, &self.comult, &id).mul(&self.comult);
        let rhs = self.cc.induced(&c_cc, &id, &self.comult).mul(&self.comult);
        let assoc = reassociate(&c_cc, &self.cc, &self.cc, &cc_c);
        Ok((lhs, assoc.mul(&rhs)))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let c = &self.carrier;
        let ccm = self.cc.result();
        r.expect_none(
            "comult_left_linear",
            "Δ(a·c) = a·Δ(c)",
            left_linearity_failure(c, ccm, &self.comult).map(|(_, m)| Witness::basis("C", m)),
        );
        r.expect_none(
            "comult_right_linear",
            "Δ(c·a) = Δ(c)·a",
            right_linearity_failure(c, ccm, &self.comult).map(|(_, m)| Witness::basis("C", m)),
        );
        r.expect_none(
            "counit_left_linear",
            "ε(a·c) = a ε(c)",
            left_linearity_failure(c, &self.base_module, &self.counit).map(|(_, m)| Witness::basis("C", m)),
        );
        r.expect_none(
            "counit_right_linear",
            "ε(c·a) = ε(c) a",
            right_linearity_failure(c, &self.base_module, &self.counit).map(|(_, m)| Witness::basis("C", m)),
        );
        match self.coassociativity_sides() {
            Ok((lhs, rhs)) => r.expect_none(
                "coassociativity",
                "(Δ⊗C)∘Δ = (C⊗Δ)∘Δ",
                failing_columns(&lhs, &rhs, "C"),
            ),
            Err(e) => r.fail("coassociativity", e.to_string(), None),
        }
        let id = Matrix::identity(self.field(), self.dim());
        r.expect_none(
            "left_counit",
            "(ε⊗C)∘Δ = id",
            failing_columns(&self.left_counit_composite(), &id, "C"),
        );
        r.expect_none(
            "right_counit",
            "(C⊗ε)∘Δ = id",
            failing_columns(&self.right_counit_composite(), &id, "C"),
        );
        r
    }
}

/// All basis vectors on which two maps differ, as a witness.
pub fn failing_columns<F: Field>(lhs: &Matrix<F>, rhs: &Matrix<F>, space: &str) -> Option<Witness> {
    if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
        return Some(Witness::Note(format!(
            "shape {}x{} vs {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    let bad: Vec<usize> = (0..lhs.cols()).filter(|&j| (0..lhs.rows()).any(|i| lhs.get(i, j) != rhs.get(i, j))).collect();
    match bad.len() {
        0 => None,
        1 => Some(Witness::basis(space, bad[0])),
        _ => Some(Witness::BasisSet {
            space: space.to_string(),
            indices: bad,
        }),
    }
}
