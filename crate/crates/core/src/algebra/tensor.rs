use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{kron2_apply, kron_apply, Matrix, QuotientSpace, RowSpace};
use crate::field::Field;

use super::algebra::{same_algebra, Algebra};
use super::bimodule::Bimodule;

/// `M ⊗_A N` as a quotient of `M ⊗_k N`.
///
/// Ambient index of `e_i ⊗ e_j` is `i * dim N + j`. The result carries the
/// left action of `M` and the right action of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor<F: Field> {
    left: Arc<Bimodule<F>>,
    right: Arc<Bimodule<F>>,
    quotient: QuotientSpace<F>,
    result: Arc<Bimodule<F>>,
}

impl<F: Field> Tensor<F> {
    pub fn new(left: &Arc<Bimodule<F>>, right: &Arc<Bimodule<F>>) -> Result<Self> {
        if !same_algebra(left.right_algebra(), right.left_algebra()) {
            return Err(Error::AlgebraMismatch(
                "right algebra of the left factor differs from left algebra of the right factor".into(),
            ));
        }
        let field = left.field().clone();
        let (m, n) = (left.dim(), right.dim());
        let mut rel = RowSpace::new(&field, m * n);
        'outer: for (ra, la) in left.right_ops().iter().zip(right.left_ops()) {
            for i in 0..m {
                for j in 0..n {
                    if rel.is_full() {
                        break 'outer;
                    }
                    // (e_i · a) ⊗ e_j - e_i ⊗ (a · e_j)
                    let mut v = vec![field.zero(); m * n];
                    for k in 0..m {
                        let c = ra.get(k, i);
                        if !field.is_zero(c) {
                            v[k * n + j] = field.add(&v[k * n + j], c);
                        }
                    }
                    for l in 0..n {
                        let c = la.get(l, j);
                        if !field.is_zero(c) {
                            v[i * n + l] = field.sub(&v[i * n + l], c);
                        }
                    }
                    rel.insert(v);
                }
            }
        }
        let quotient = QuotientSpace::from_relations(rel);
        let id_n = Matrix::identity(&field, n);
        let id_m = Matrix::identity(&field, m);
        let sec = quotient.section();
        let left_ops = left
            .left_ops()
            .iter()
            .map(|l| quotient.project().mul(&kron2_apply(l, &id_n, sec)))
            .collect();
        let right_ops = right
            .right_ops()
            .iter()
            .map(|r| quotient.project().mul(&kron2_apply(&id_m, r, sec)))
            .collect();
        let result = Bimodule::new(
            left.left_algebra().clone(),
            right.right_algebra().clone(),
            quotient.basis_dim(),
            left_ops,
            right_ops,
        )?;
        Ok(Tensor {
            left: left.clone(),
            right: right.clone(),
            quotient,
            result: Arc::new(result),
        })
    }

    pub fn left(&self) -> &Arc<Bimodule<F>> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Bimodule<F>> {
        &self.right
    }

    pub fn middle(&self) -> &Arc<Algebra<F>> {
        self.left.right_algebra()
    }

    pub fn result(&self) -> &Arc<Bimodule<F>> {
        &self.result
    }

    pub fn quotient(&self) -> &QuotientSpace<F> {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.basis_dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    /// `M ⊗_k N -> M ⊗_A N`.
    pub fn proj(&self) -> &Matrix<F> {
        self.quotient.project()
    }

    /// The chosen lift `M ⊗_A N -> M ⊗_k N`.
    pub fn sec(&self) -> &Matrix<F> {
        self.quotient.section()
    }

    /// Class of `x ⊗ y`.
    pub fn pure(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.left.field();
        let n = self.right.dim();
        let mut v = vec![f.zero(); self.ambient_dim()];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !f.is_zero(b) {
                    v[i * n + j] = f.mul(a, b);
                }
            }
        }
        self.quotient.project_vec(&v)
    }

    /// `f ⊗ g : self -> target`, computed on lifts.
    pub fn induced(&self, target: &Tensor<F>, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
        assert_eq!(f.cols(), self.left.dim(), "induced: left factor");
        assert_eq!(g.cols(), self.right.dim(), "induced: right factor");
        target.proj().mul(&kron2_apply(f, g, self.sec()))
    }

    /// `f ⊗ g` on ambient coordinates, projected into `target`; checks that relations are annihilated.
    pub fn is_well_defined(&self, target: &Tensor<F>, f: &Matrix<F>, g: &Matrix<F>) -> bool {
        let rel = self.quotient.relations().basis().transpose();
        target.proj().mul(&kron2_apply(f, g, &rel)).is_zero()
    }

    /// The multiplication `M ⊗_A A -> M` when the right factor is the regular module.
    pub fn right_collapse(&self) -> Matrix<F> {
        // Ambient (i, a) ↦ e_i · e_a.
        self.left.right_action_map().mul(self.sec())
    }

    /// The multiplication `A ⊗_A N -> N` when the left factor is the regular module.
    pub fn left_collapse(&self) -> Matrix<F> {
        self.right.left_action_map().mul(self.sec())
    }
}

/// The canonical isomorphism `M ⊗ (N ⊗ P) -> (M ⊗ N) ⊗ P`.
///
/// `np` is `N ⊗ P`, `m_np` is `M ⊗ (N ⊗ P)`, `mn` is `M ⊗ N` and `mn_p` is `(M ⊗ N) ⊗ P`.
pub fn reassociate<F: Field>(m_np: &Tensor<F>, np: &Tensor<F>, mn: &Tensor<F>, mn_p: &Tensor<F>) -> Matrix<F> {
    let m = mn.left().dim();
    let p = np.right().dim();
    let flat = kron_apply(m, np.sec(), 1, m_np.sec());
    mn_p.proj().mul(&kron_apply(1, mn.proj(), p, &flat))
}

/// The canonical isomorphism `(M ⊗ N) ⊗ P -> M ⊗ (N ⊗ P)`.
pub fn reassociate_inverse<F: Field>(mn_p: &Tensor<F>, mn: &Tensor<F>, np: &Tensor<F>, m_np: &Tensor<F>) -> Matrix<F> {
    let m = mn.left().dim();
    let p = np.right().dim();
    let flat = kron_apply(1, mn.sec(), p, mn_p.sec());
    m_np.proj().mul(&kron_apply(m, np.proj(), 1, &flat))
}
