use std::sync::Arc;

use crate::algebra::{Bimodule, HomSpace, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{kron2_apply, Matrix};
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

use super::comodule::{same_coring, Comodule};
use super::coring::Coring;

/// `Hom^C(M, N)` as the equalizer of `j1(f) = ρ_N ∘ f` and `j2(f) = (f ⊗ C) ∘ ρ_M`
/// inside `Hom_A(M, N)`.
#[derive(Debug, Clone)]
pub struct ColinearHom<F: Field> {
    pub hom: HomSpace<F>,
    /// Columns are the colinear basis maps in `hom` coordinates.
    pub inclusion: Matrix<F>,
    /// The colinear maps with the actions induced from `hom` where they restrict.
    pub space: Arc<Bimodule<F>>,
}

impl<F: Field> ColinearHom<F> {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    pub fn basis(&self, i: usize) -> Matrix<F> {
        self.hom.combine(&self.inclusion.column(i))
    }

    pub fn basis_maps(&self) -> Vec<Matrix<F>> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    /// Coordinates of a colinear map.
    pub fn coords(&self, f: &Matrix<F>) -> Option<Vec<F::Elem>> {
        let h = self.hom.coords(f)?;
        self.inclusion.solve_vec(&h)
    }

    /// Evaluation `Hom^C ⊗ M -> N` on ambient coordinates.
    pub fn evaluation_ambient(&self) -> Matrix<F> {
        let field = self.hom.source().field();
        let (dm, dn) = (self.hom.source().dim(), self.hom.target().dim());
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

/// `j1 - j2` on the basis of `Hom_A(M, N)`, one flattened column per basis map.
fn equalizer_defect<F: Field>(m: &Comodule<F>, n: &Comodule<F>, hom: &HomSpace<F>) -> Matrix<F> {
    let field = m.carrier().field();
    let c = m.coring().carrier();
    let id_c = Matrix::identity(field, c.dim());
    let cols: Vec<Vec<F::Elem>> = hom
        .basis_maps()
        .iter()
        .map(|f| {
            let j1 = n.coaction().mul(f);
            let j2 = m.mc().induced(n.mc(), f, &id_c).mul(m.coaction());
            j1.sub(&j2).into_flat()
        })
        .collect();
    Matrix::from_columns(field, n.mc().dim() * m.dim(), &cols)
}

pub fn hom_colinear<F: Field>(m: &Comodule<F>, n: &Comodule<F>) -> Result<ColinearHom<F>> {
    if !same_coring(m, n) {
        return Err(Error::CoringMismatch);
    }
    let hom = HomSpace::right_linear(m.carrier(), n.carrier())?;
    let defect = equalizer_defect(m, n, &hom);
    let kernel: Vec<Vec<F::Elem>> = {
        let k = defect.kernel();
        (0..k.rows()).map(|i| k.row(i).to_vec()).collect()
    };
    let full = hom.bimodule();
    let candidates = [full.as_ref().clone(), full.forget_left(), full.forget_right(), full.forget_left().forget_right()];
    let (space, inclusion) = candidates
        .iter()
        .find_map(|b| b.submodule(&kernel).ok())
        .expect("the trivial actions always restrict");
    Ok(ColinearHom {
        hom,
        inclusion,
        space: Arc::new(space),
    })
}

/// A colinear left inverse `γ_N` of `ρ_N`.
#[derive(Debug, Clone)]
pub struct InjectivityWitness<F: Field> {
    pub cofree: Comodule<F>,
    pub gamma: Matrix<F>,
}

impl<F: Field> InjectivityWitness<F> {
    /// Whether `γ` is colinear and `γ ∘ ρ_N = id`.
    pub fn verify(&self, n: &Comodule<F>) -> bool {
        let Ok(plain) = n.with_carrier(Arc::new(n.carrier().forget_left())) else {
            return false;
        };
        self.gamma.rows() == n.dim()
            && self.gamma.cols() == self.cofree.dim()
            && self.gamma.mul(n.coaction()).is_identity()
            && self.cofree.is_colinear(&plain, &self.gamma)
    }
}

/// The cofree comodule `N = M ⊗_A C` with its retraction `γ(m ⊗ c ⊗ c') = m ⊗ ε(c) c'`.
pub fn cofree_retraction<F: Field>(coring: &Arc<Coring<F>>, m: &Arc<Bimodule<F>>) -> Result<(Comodule<F>, InjectivityWitness<F>)> {
    let field = m.field();
    let c = coring.carrier();
    let dc = c.dim();
    let n = Comodule::cofree(coring, m)?;
    let plain = Arc::new(n.carrier().forget_left());
    let cofree = Comodule::cofree(coring, &plain)?;
    let mc = Tensor::new(m, c)?;
    let nc = Tensor::new(&plain, c)?;
    let counit_ops: Vec<Matrix<F>> = (0..dc).map(|j| c.left_op(&coring.counit().column(j))).collect();
    let mut cols = Vec::with_capacity(nc.dim());
    for b in 0..nc.dim() {
        let mut out = vec![field.zero(); mc.ambient_dim()];
        let amb = nc.sec().column(b);
        for (pc, x) in amb.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            let (p, cp) = (pc / dc, pc % dc);
            for (ij, y) in mc.sec().column(p).iter().enumerate() {
                if field.is_zero(y) {
                    continue;
                }
                let (i, j) = (ij / dc, ij % dc);
                let xy = field.mul(x, y);
                for k in 0..dc {
                    let w = counit_ops[j].get(k, cp);
                    if !field.is_zero(w) {
                        let slot = &mut out[i * dc + k];
                        *slot = field.add(slot, &field.mul(&xy, w));
                    }
                }
            }
        }
        cols.push(mc.proj().mul_vec(&out));
    }
    let gamma = Matrix::from_columns(field, n.dim(), &cols);
    Ok((n, InjectivityWitness { cofree, gamma }))
}

/// The retraction `γ(c ⊗ c') = ε(c) c'` of `Δ` for `C` as a comodule over itself.
pub fn regular_retraction<F: Field>(coring: &Arc<Coring<F>>) -> Result<InjectivityWitness<F>> {
    let c = coring.carrier();
    let cofree = Comodule::cofree(coring, &Arc::new(c.forget_left()))?;
    let id = Matrix::identity(c.field(), c.dim());
    let gamma = c.left_action_map().mul(&kron2_apply(coring.counit(), &id, coring.cc().sec()));
    Ok(InjectivityWitness { cofree, gamma })
}

/// Searches for a colinear `γ: N ⊗_A C -> N` with `γ ∘ ρ_N = id` by solving a linear system.
pub fn relative_injectivity<F: Field>(n: &Comodule<F>) -> Option<InjectivityWitness<F>> {
    let field = n.carrier().field();
    let cofree = Comodule::cofree(n.coring(), &Arc::new(n.carrier().forget_left())).ok()?;
    let plain = n.with_carrier(Arc::new(n.carrier().forget_left())).ok()?;
    let hc = hom_colinear(&cofree, &plain).ok()?;
    let maps = hc.basis_maps();
    let cols: Vec<Vec<F::Elem>> = maps.iter().map(|g| g.mul(n.coaction()).into_flat()).collect();
    let sys = Matrix::from_columns(field, n.dim() * n.dim(), &cols);
    let coeffs = sys.solve_vec(Matrix::identity(field, n.dim()).as_flat())?;
    let mut gamma = Matrix::zeros(field, n.dim(), cofree.dim());
    for (c, g) in coeffs.iter().zip(&maps) {
        if !field.is_zero(c) {
            gamma = gamma.add(&g.scale(c));
        }
    }
    Some(InjectivityWitness { cofree, gamma })
}

/// The four identities making `Hom^C(L, N) -> Hom_A(L, N) ⇉ Hom_A(L, N ⊗ C)` a contractible equalizer.
///
/// With `α(f) = γ ∘ (f ⊗ C) ∘ ρ_L` and `β(g) = γ ∘ g`: `j1 i = j2 i`, `α i = id`,
/// `β j1 = id` and `β j2 = i α`.
pub fn contractible_equalizer_check<F: Field>(l: &Comodule<F>, n: &Comodule<F>, w: &InjectivityWitness<F>) -> Result<ValidationReport> {
    let field = l.carrier().field().clone();
    let hc = hom_colinear(l, n)?;
    let hom = &hc.hom;
    let nc_dim = n.mc().dim();
    let id_c = Matrix::identity(&field, n.coring().dim());
    let j1 = |f: &Matrix<F>| n.coaction().mul(f);
    let j2 = |f: &Matrix<F>| l.mc().induced(n.mc(), f, &id_c).mul(l.coaction());
    let alpha = |f: &Matrix<F>| w.gamma.mul(&j2(f));
    let beta = |g: &Matrix<F>| w.gamma.mul(g);
    let mut r = ValidationReport::new();

    let colinear = hc.basis_maps();
    r.expect_none(
        "j1_i_eq_j2_i",
        "colinear maps equalize j1 and j2",
        colinear.iter().position(|f| j1(f) != j2(f)).map(|i| Witness::basis("Hom^C(L,N)", i)),
    );
    r.expect_none(
        "alpha_i_identity",
        "α fixes colinear maps",
        colinear.iter().position(|f| alpha(f) != *f).map(|i| Witness::basis("Hom^C(L,N)", i)),
    );
    let all = hom.basis_maps();
    r.expect_none(
        "beta_j1_identity",
        "γ ∘ ρ_N ∘ f = f",
        all.iter().position(|f| beta(&j1(f)) != *f).map(|i| Witness::basis("Hom_A(L,N)", i)),
    );
    r.expect_none(
        "beta_j2_eq_i_alpha",
        "β j2 = i α",
        all.iter().position(|f| beta(&j2(f)) != alpha(f)).map(|i| Witness::basis("Hom_A(L,N)", i)),
    );
    r.record(
        "alpha_lands_in_colinear",
        all.iter().all(|f| hc.coords(&alpha(f)).is_some()),
        format!("α maps into Hom^C(L,N) inside Hom_A(L, N⊗C) of row size {nc_dim}"),
    );
    Ok(r)
}

/// `ϖ_M: Hom_A(Σ, M) -> Hom^C(Σ, M ⊗_A C)`, `f ↦ (f ⊗ C) ∘ ρ_Σ`, as a matrix between the
/// two hom bases. Returns the matrix and the colinear hom space.
pub fn varpi<F: Field>(sigma: &Comodule<F>, m: &Arc<Bimodule<F>>) -> Result<(Matrix<F>, HomSpace<F>, ColinearHom<F>)> {
    let field = m.field().clone();
    let cofree = Comodule::cofree(sigma.coring(), m)?;
    let sigma_plain = sigma.with_carrier(Arc::new(sigma.carrier().forget_left()))?;
    let source = HomSpace::right_linear(&Arc::new(sigma.carrier().forget_left()), m)?;
    let target = hom_colinear(&sigma_plain, &cofree)?;
    let id_c = Matrix::identity(&field, sigma.coring().dim());
    let m_c = crate::algebra::Tensor::new(m, sigma.coring().carrier())?;
    let cols = source
        .basis_maps()
        .iter()
        .map(|f| {
            let g = sigma.mc().induced(&m_c, f, &id_c).mul(sigma.coaction());
            target.coords(&g).ok_or_else(|| Error::PreconditionFailed("image of ϖ is not colinear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Matrix::from_columns(&field, target.dim(), &cols), source, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::coring::Coring;
    use crate::field::{Field, PrimeField, Rationals};

    fn column_comodule<F: Field>(f: &F, c: &Arc<Coring<F>>, n: usize) -> Comodule<F> {
        let kn = Arc::new(Bimodule::vector_space(f, n));
        let d = n * n;
        let mut amb = Matrix::zeros(f, n * d, n);
        for i in 0..n {
            for j in 0..n {
                amb.set(j * d + j * n + i, i, f.one());
            }
        }
        Comodule::from_ambient(c, kn, &amb).unwrap()
    }

    #[test]
    fn colinear_maps_into_the_matrix_coring() {
        let q = Rationals;
        let c = Arc::new(Coring::matrix_coring(&q, 2));
        let sigma = column_comodule(&q, &c, 2);
        let hc = hom_colinear(&sigma, &Comodule::regular(&c)).unwrap();
        // Equalizer rank: the colinear maps k² -> M_2 are the row embeddings.
        assert_eq!(hc.dim(), 2);
        assert_eq!(hc.hom.dim(), 8);
        assert_eq!(hc.inclusion.rank(), 2);
        let t = Arc::new(Coring::trivial(&Arc::new(Algebra::truncated_polynomial(&q, 3))).unwrap());
        let reg = Comodule::regular(&t);
        assert_eq!(hom_colinear(&reg, &reg).unwrap().dim(), 3);
    }

    #[test]
    fn cofree_and_regular_comodules_are_injective() {
        let f = PrimeField::new(7).unwrap();
        let c = Arc::new(Coring::matrix_coring(&f, 2));
        let reg = Comodule::regular(&c);
        let w = relative_injectivity(&reg).unwrap();
        assert!(w.gamma.mul(reg.coaction()).is_identity());
        assert!(regular_retraction(&c).unwrap().verify(&reg));
        let sigma = column_comodule(&f, &c, 2);
        let cof = Comodule::cofree(&c, sigma.carrier()).unwrap();
        let w = relative_injectivity(&cof).unwrap();
        let r = contractible_equalizer_check(&sigma, &cof, &w).unwrap();
        assert!(r.passed(), "{r}");
        let (cof2, w2) = cofree_retraction(&c, sigma.carrier()).unwrap();
        assert_eq!(cof2.coaction(), cof.coaction());
        assert!(w2.verify(&cof2));
        assert!(contractible_equalizer_check(&sigma, &cof2, &w2).unwrap().passed());
    }

    #[test]
    fn subcomodule_of_the_divided_power_coalgebra_has_no_retraction() {
        let q = Rationals;
        let c = Arc::new(Coring::divided_power(&q));
        let line = Comodule::from_ambient(&c, Arc::new(Bimodule::vector_space(&q, 1)), &Matrix::from_i64(&q, &[&[1], &[0]])).unwrap();
        assert!(line.validate().passed());
        assert!(relative_injectivity(&line).is_none());
        assert!(relative_injectivity(&Comodule::regular(&c)).is_some());
        let doubled = InjectivityWitness {
            cofree: Comodule::cofree(&c, &Arc::new(line.carrier().forget_left())).unwrap(),
            gamma: Matrix::from_i64(&q, &[&[1, 0]]),
        };
        assert!(!doubled.verify(&line));
    }

    #[test]
    fn varpi_is_an_isomorphism() {
        let q = Rationals;
        let c = Arc::new(Coring::matrix_coring(&q, 2));
        let sigma = column_comodule(&q, &c, 2);
        for n in 1..=2 {
            let m = Arc::new(Bimodule::vector_space(&q, n));
            let (w, source, target) = varpi(&sigma, &m).unwrap();
            assert_eq!(source.dim(), target.dim());
            assert!(w.is_isomorphism());
        }
    }
}
