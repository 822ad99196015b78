use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, RowSpace};
use crate::field::Field;

use super::algebra::same_algebra;
use super::bimodule::Bimodule;
use super::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linearity {
    /// Maps commuting with the right actions.
    Right,
    /// Maps commuting with the left actions.
    Left,
}

/// A space of module maps `M -> N`, each stored as a `dim N x dim M` matrix.
///
/// The basis is the reduced echelon basis of the solution space, with maps
/// flattened row-major. `bimodule` carries the induced actions:
/// for right-linear maps `(c · f) = L_N(c) ∘ f` and `(f · b) = f ∘ L_M(b)`,
/// for left-linear maps `(a · f) = f ∘ R_M(a)` and `(f · a') = R_N(a') ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace<F: Field> {
    source: Arc<Bimodule<F>>,
    target: Arc<Bimodule<F>>,
    linearity: Linearity,
    span: RowSpace<F>,
    bimodule: Arc<Bimodule<F>>,
}

/// Solutions of `X S_k = T_k X` for all `k`, `X` of shape `n x m`.
fn intertwiners<F: Field>(field: &F, m: usize, n: usize, pairs: &[(&Matrix<F>, &Matrix<F>)]) -> RowSpace<F> {
    let mut cons = RowSpace::new(field, n * m);
    'outer: for (s, t) in pairs {
        for r in 0..n {
            for c in 0..m {
                if cons.is_full() {
                    break 'outer;
                }
                let mut v = vec![field.zero(); n * m];
                for k in 0..m {
                    let x = s.get(k, c);
                    if !field.is_zero(x) {
                        v[r * m + k] = field.add(&v[r * m + k], x);
                    }
                }
                for k in 0..n {
                    let x = t.get(r, k);
                    if !field.is_zero(x) {
                        v[k * m + c] = field.sub(&v[k * m + c], x);
                    }
                }
                cons.insert(v);
            }
        }
    }
    let mut span = RowSpace::new(field, n * m);
    for v in cons.null_space() {
        span.insert(v);
    }
    span
}

impl<F: Field> HomSpace<F> {
    /// `Hom_A(M, N)` for right `A`-modules.
    pub fn right_linear(m: &Arc<Bimodule<F>>, n: &Arc<Bimodule<F>>) -> Result<Self> {
        if !same_algebra(m.right_algebra(), n.right_algebra()) {
            return Err(Error::AlgebraMismatch("right-linear maps need a common right algebra".into()));
        }
        let field = m.field().clone();
        let pairs: Vec<_> = m.right_ops().iter().zip(n.right_ops()).collect();
        let span = intertwiners(&field, m.dim(), n.dim(), &pairs);
        Self::assemble(m, n, Linearity::Right, span)
    }

    /// `Hom_B(M, N)` for left `B`-modules.
    pub fn left_linear(m: &Arc<Bimodule<F>>, n: &Arc<Bimodule<F>>) -> Result<Self> {
        if !same_algebra(m.left_algebra(), n.left_algebra()) {
            return Err(Error::AlgebraMismatch("left-linear maps need a common left algebra".into()));
        }
        let field = m.field().clone();
        let pairs: Vec<_> = m.left_ops().iter().zip(n.left_ops()).collect();
        let span = intertwiners(&field, m.dim(), n.dim(), &pairs);
        Self::assemble(m, n, Linearity::Left, span)
    }

    fn assemble(m: &Arc<Bimodule<F>>, n: &Arc<Bimodule<F>>, linearity: Linearity, span: RowSpace<F>) -> Result<Self> {
        let field = m.field().clone();
        let (dm, dn) = (m.dim(), n.dim());
        let k = span.rank();
        let basis: Vec<Matrix<F>> =
            (0..k).map(|i| Matrix::from_flat(&field, dn, dm, span.basis_vector(i).to_vec()).expect("shape")).collect();
        let act = |g: &dyn Fn(&Matrix<F>) -> Matrix<F>| -> Matrix<F> {
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|b| span.coords(g(b).as_flat()).expect("hom space is closed under the induced actions"))
                .collect();
            Matrix::from_columns(&field, k, &cols)
        };
        let (left_alg, right_alg, left_ops, right_ops) = match linearity {
            Linearity::Right => (
                n.left_algebra().clone(),
                m.left_algebra().clone(),
                n.left_ops().iter().map(|l| act(&|f| l.mul(f))).collect(),
                m.left_ops().iter().map(|l| act(&|f| f.mul(l))).collect(),
            ),
            Linearity::Left => (
                m.right_algebra().clone(),
                n.right_algebra().clone(),
                m.right_ops().iter().map(|r| act(&|f| f.mul(r))).collect(),
                n.right_ops().iter().map(|r| act(&|f| r.mul(f))).collect(),
            ),
        };
        let bimodule = Bimodule::new(left_alg, right_alg, k, left_ops, right_ops)?;
        Ok(HomSpace {
            source: m.clone(),
            target: n.clone(),
            linearity,
            span,
            bimodule: Arc::new(bimodule),
        })
    }

    pub fn source(&self) -> &Arc<Bimodule<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule<F>> {
        &self.target
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn basis(&self, i: usize) -> Matrix<F> {
        Matrix::from_flat(self.source.field(), self.target.dim(), self.source.dim(), self.span.basis_vector(i).to_vec())
            .expect("shape")
    }

    pub fn basis_maps(&self) -> Vec<Matrix<F>> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    /// Coordinates of a map, if it lies in the space.
    pub fn coords(&self, f: &Matrix<F>) -> Option<Vec<F::Elem>> {
        self.span.coords(f.as_flat())
    }

    pub fn combine(&self, coords: &[F::Elem]) -> Matrix<F> {
        Matrix::from_flat(self.source.field(), self.target.dim(), self.source.dim(), self.span.combine(coords))
            .expect("shape")
    }

    pub fn bimodule(&self) -> &Arc<Bimodule<F>> {
        &self.bimodule
    }

    /// Evaluation `Hom ⊗ M -> N` on the ambient product; column `(f, x)` is `F_f e_x`.
    pub fn evaluation_ambient(&self) -> Matrix<F> {
        let field = self.source.field();
        let (dm, dn) = (self.source.dim(), self.target.dim());
        let mut out = Matrix::zeros(field, dn, self.dim() * dm);
        for i in 0..self.dim() {
            let b = self.basis(i);
            for x in 0..dm {
                for r in 0..dn {
                    out.set(r, i * dm + x, b.get(r, x).clone());
                }
            }
        }
        out
    }
}

/// `Σ* = Hom_A(Σ, A)` for a `B`-`A` bimodule `Σ`, with its evaluation pairing.
#[derive(Debug, Clone)]
pub struct Dual<F: Field> {
    pub hom: HomSpace<F>,
    /// `Σ* ⊗_B Σ` as an `A`-`A` bimodule.
    pub pairing: Tensor<F>,
    /// `ev: Σ* ⊗_B Σ -> A`.
    pub ev: Matrix<F>,
}

impl<F: Field> Dual<F> {
    pub fn new(sigma: &Arc<Bimodule<F>>) -> Result<Self> {
        let a = Arc::new(Bimodule::regular(sigma.right_algebra()));
        let hom = HomSpace::right_linear(sigma, &a)?;
        let pairing = Tensor::new(hom.bimodule(), sigma)?;
        let ev = hom.evaluation_ambient().mul(pairing.sec());
        Ok(Dual { hom, pairing, ev })
    }

    pub fn module(&self) -> &Arc<Bimodule<F>> {
        self.hom.bimodule()
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }
}
