use std::sync::Arc;

use crate::algebra::{left_linearity_failure, reassociate, right_linearity_failure, same_algebra, Bimodule, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{kron2_apply, Matrix};
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

use super::coring::{failing_columns, Coring};

/// A right comodule `ρ: M -> M ⊗_A C`; the left action of `M` (if any) is kept.
#[derive(Debug, Clone)]
pub struct Comodule<F: Field> {
    coring: Arc<Coring<F>>,
    carrier: Arc<Bimodule<F>>,
    mc: Tensor<F>,
    coaction: Matrix<F>,
}

impl<F: Field> Comodule<F> {
    pub fn new(coring: &Arc<Coring<F>>, carrier: Arc<Bimodule<F>>, coaction: Matrix<F>) -> Result<Self> {
        let mc = Tensor::new(&carrier, coring.carrier())?;
        Self::with_tensor(coring, carrier, mc, coaction)
    }

    fn with_tensor(coring: &Arc<Coring<F>>, carrier: Arc<Bimodule<F>>, mc: Tensor<F>, coaction: Matrix<F>) -> Result<Self> {
        if coaction.rows() != mc.dim() || coaction.cols() != carrier.dim() {
            return Err(Error::DimensionMismatch(format!(
                "coaction is {}x{}, expected {}x{}",
                coaction.rows(),
                coaction.cols(),
                mc.dim(),
                carrier.dim()
            )));
        }
        Ok(Comodule {
            coring: coring.clone(),
            carrier,
            mc,
            coaction,
        })
    }

    /// Takes `ρ` on ambient coordinates of `M ⊗_k C`.
    pub fn from_ambient(coring: &Arc<Coring<F>>, carrier: Arc<Bimodule<F>>, coaction_ambient: &Matrix<F>) -> Result<Self> {
        let mc = Tensor::new(&carrier, coring.carrier())?;
        if coaction_ambient.rows() != mc.ambient_dim() {
            return Err(Error::DimensionMismatch("ambient coaction has the wrong number of rows".into()));
        }
        let coaction = mc.proj().mul(coaction_ambient);
        Self::with_tensor(coring, carrier, mc, coaction)
    }

    /// Builds `ρ` from the computed `M ⊗_A C`.
    pub fn with_coaction_fn(
        coring: &Arc<Coring<F>>,
        carrier: Arc<Bimodule<F>>,
        build: impl FnOnce(&Tensor<F>) -> Matrix<F>,
    ) -> Result<Self> {
        let mc = Tensor::new(&carrier, coring.carrier())?;
        let coaction = build(&mc);
        Self::with_tensor(coring, carrier, mc, coaction)
    }

    /// `C` over itself with `ρ = Δ`.
    pub fn regular(coring: &Arc<Coring<F>>) -> Self {
        Self::with_tensor(coring, coring.carrier().clone(), coring.cc().clone(), coring.comult().clone())
            .expect("shape")
    }

    /// The cofree comodule `M ⊗_A C` with coaction `M ⊗ Δ`.
    pub fn cofree(coring: &Arc<Coring<F>>, m: &Arc<Bimodule<F>>) -> Result<Self> {
        let c = coring.carrier();
        let mc = Tensor::new(m, c)?;
        let n = mc.result().clone();
        let m_cc = Tensor::new(m, coring.cc().result())?;
        let nc = Tensor::new(&n, c)?;
        let id = Matrix::identity(m.field(), m.dim());
        let coaction = reassociate(&m_cc, coring.cc(), &mc, &nc).mul(&mc.induced(&m_cc, &id, coring.comult()));
        Self::with_tensor(coring, n, nc, coaction)
    }

    pub fn coring(&self) -> &Arc<Coring<F>> {
        &self.coring
    }

    pub fn carrier(&self) -> &Arc<Bimodule<F>> {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn mc(&self) -> &Tensor<F> {
        &self.mc
    }

    pub fn coaction(&self) -> &Matrix<F> {
        &self.coaction
    }

    /// Same carrier, replaced coaction.
    pub fn with_coaction(&self, coaction: Matrix<F>) -> Result<Self> {
        Self::with_tensor(&self.coring, self.carrier.clone(), self.mc.clone(), coaction)
    }

    /// Same coaction, carrier with a different left action.
    pub fn with_carrier(&self, carrier: Arc<Bimodule<F>>) -> Result<Self> {
        Self::new(&self.coring, carrier, self.coaction.clone())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.coring, &other.coring) && *self.coring != *other.coring {
            return Err(Error::CoringMismatch);
        }
        let carrier = Arc::new(self.carrier.direct_sum(&other.carrier)?);
        let mc = Tensor::new(&carrier, self.coring.carrier())?;
        // The ambient of (M ⊕ N) ⊗ C is (M ⊗ C) ⊕ (N ⊗ C) in order.
        let amb = self.mc.sec().mul(&self.coaction).direct_sum(&other.mc.sec().mul(&other.coaction));
        let coaction = mc.proj().mul(&amb);
        Self::with_tensor(&self.coring, carrier, mc, coaction)
    }

    /// `(ρ ⊗ C) ∘ ρ` and the reassociated `(M ⊗ Δ) ∘ ρ`, both in `(M ⊗ C) ⊗ C`.
    pub fn coassociativity_sides(&self) -> Result<(Matrix<F>, Matrix<F>)> {
        let c = self.coring.carrier();
        let id_c = Matrix::identity(c.field(), c.dim());
        let id_m = Matrix::identity(c.field(), self.dim());
        let mc_c = Tensor::new(self.mc.result(), c)?;
        let m_cc = Tensor::new(&self.carrier, self.coring.cc().result())?;
        let lhs = self.mc.induced(&mc_c, &self.coaction, &id_c).mul(&self.coaction);
        let rhs = self.mc.induced(&m_cc, &id_m, self.coring.comult()).mul(&self.coaction);
        let assoc = reassociate(&m_cc, self.coring.cc(), &self.mc, &mc_c);
        Ok((lhs, assoc.mul(&rhs)))
    }

    /// `(M ⊗ ε) ∘ ρ` followed by the right action.
    pub fn counit_composite(&self) -> Matrix<F> {
        let id = Matrix::identity(self.carrier.field(), self.dim());
        let lifted = self.mc.sec().mul(&self.coaction);
        self.carrier.right_action_map().mul(&kron2_apply(&id, self.coring.counit(), &lifted))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let target = self.mc.result();
        r.expect_none(
            "coaction_right_linear",
            "ρ(m·a) = ρ(m)·a",
            right_linearity_failure(&self.carrier, target, &self.coaction).map(|(_, m)| Witness::basis("M", m)),
        );
        r.expect_none(
            "coaction_left_linear",
            "ρ(b·m) = b·ρ(m)",
            left_linearity_failure(&self.carrier, target, &self.coaction).map(|(_, m)| Witness::basis("M", m)),
        );
        match self.coassociativity_sides() {
            Ok((lhs, rhs)) => r.expect_none("coassociativity", "(ρ⊗C)∘ρ = (M⊗Δ)∘ρ", failing_columns(&lhs, &rhs, "M")),
            Err(e) => r.fail("coassociativity", e.to_string(), None),
        }
        let id = Matrix::identity(self.carrier.field(), self.dim());
        r.expect_none("counit", "(M⊗ε)∘ρ = id", failing_columns(&self.counit_composite(), &id, "M"));
        r
    }

    /// Whether `f: self -> other` satisfies `ρ_N ∘ f = (f ⊗ C) ∘ ρ_M`.
    pub fn is_colinear(&self, other: &Comodule<F>, f: &Matrix<F>) -> bool {
        let c = self.coring.carrier();
        let id_c = Matrix::identity(c.field(), c.dim());
        other.coaction.mul(f) == self.mc.induced(&other.mc, f, &id_c).mul(&self.coaction)
    }
}

/// Whether two comodules live over the same coring.
pub fn same_coring<F: Field>(a: &Comodule<F>, b: &Comodule<F>) -> bool {
    Arc::ptr_eq(&a.coring, &b.coring) || (*a.coring == *b.coring && same_algebra(a.coring.base(), b.coring.base()))
}
