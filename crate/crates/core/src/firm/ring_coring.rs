use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule, Tensor};
use crate::coring::{Comodule, Coring};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::Field;

use super::dorroh::{dorroh, Dorroh};
use super::firmness::{FirmWitness, Side};

/// A firm ring `R` viewed as an `R̂`-coring `(R, Δ, ι)`.
#[derive(Debug, Clone)]
pub struct RingCoring<F: Field> {
    pub dorroh: Dorroh<F>,
    pub coring: Arc<Coring<F>>,
}

/// `R` as an `R̂`-`R̂` bimodule.
fn carrier<F: Field>(d: &Dorroh<F>) -> Result<Bimodule<F>> {
    let reg = Bimodule::regular(&d.r);
    d.extend_left(&d.extend_right(&reg)?)
}

/// The coring of a firm ring: `Δ = d_R` moved along `R ⊗_R R ≅ R ⊗_R̂ R`, `ε = ι`.
pub fn coring_from_firm_ring<F: Field>(r: &Arc<Algebra<F>>, w: &FirmWitness<F>) -> Result<RingCoring<F>> {
    if w.side != Side::Right || w.module.dim() != r.dim() || !w.is_valid() {
        return Err(Error::NotFirm("witness does not invert R ⊗_R R -> R".into()));
    }
    let d = dorroh(r);
    let c = Arc::new(carrier(&d)?);
    let t_hat = Tensor::new(&c, &c)?;
    // Both tensor products are quotients of the same ambient R ⊗_k R.
    let transport = t_hat.proj().mul(w.tensor.sec());
    let comult = transport.mul(&w.d);
    let coring = Coring::new(c, comult, d.inclusion.clone())?;
    Ok(RingCoring {
        dorroh: d,
        coring: Arc::new(coring),
    })
}

/// A coring candidate built without deciding firmness: `Δ` is a right inverse of
/// `R ⊗_R̂ R -> R` chosen basis vector by basis vector, and zero where none exists.
pub fn candidate_coring<F: Field>(r: &Arc<Algebra<F>>) -> Result<RingCoring<F>> {
    let d = dorroh(r);
    let c = Arc::new(carrier(&d)?);
    let t_hat = Tensor::new(&c, &c)?;
    let mu = r.mult().mul(t_hat.sec());
    let f = r.field();
    let cols: Vec<Vec<F::Elem>> = (0..r.dim())
        .map(|j| mu.solve_vec(&r.basis_vector(j)).unwrap_or_else(|| vec![f.zero(); t_hat.dim()]))
        .collect();
    let comult = Matrix::from_columns(f, t_hat.dim(), &cols);
    let coring = Coring::new(c, comult, d.inclusion.clone())?;
    Ok(RingCoring {
        dorroh: d,
        coring: Arc::new(coring),
    })
}

impl<F: Field> RingCoring<F> {
    pub fn r(&self) -> &Arc<Algebra<F>> {
        &self.dorroh.r
    }

    /// A firm right `R`-module as a comodule: `ρ = d_{M,R}` moved into `M ⊗_R̂ R`.
    pub fn firm_module_to_comodule(&self, w: &FirmWitness<F>) -> Result<Comodule<F>> {
        if w.side != Side::Right || !w.is_valid() {
            return Err(Error::NotFirm("witness does not invert M ⊗_R R -> M".into()));
        }
        let m = Arc::new(self.dorroh.extend_right(&w.module)?);
        Comodule::with_coaction_fn(&self.coring, m, |mc| mc.proj().mul(w.tensor.sec()).mul(&w.d))
    }

    /// A comodule as a firm right `R`-module, with `d_{M,R}` read off the coaction.
    pub fn comodule_to_firm_module(&self, c: &Comodule<F>) -> Result<FirmWitness<F>> {
        let module = Arc::new(c.carrier().restrict_right(self.r(), &self.dorroh.inclusion)?);
        let reg = Arc::new(Bimodule::regular(self.r()));
        let t = Tensor::new(&module, &reg)?;
        let mu = t.right_collapse();
        let d = t.proj().mul(c.mc().sec()).mul(c.coaction());
        let w = FirmWitness {
            module,
            side: Side::Right,
            tensor: t,
            mu,
            d,
        };
        if !w.is_valid() {
            return Err(Error::NotFirm("coaction does not invert M ⊗_R R -> M".into()));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::super::firmness::{firmness, is_firm_ring};
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn upper_row<F: Field>(f: &F) -> Arc<Algebra<F>> {
        let b = [crate::algebra::matrix_unit(f, 2, 0, 0), crate::algebra::matrix_unit(f, 2, 0, 1)];
        Arc::new(Algebra::from_matrix_basis(f, 2, &b).unwrap())
    }

    #[test]
    fn firm_ring_gives_a_valid_coring() {
        let f = PrimeField::new(7).unwrap();
        let r = upper_row(&f);
        let w = is_firm_ring(&r).unwrap().unwrap();
        let rc = coring_from_firm_ring(&r, &w).unwrap();
        assert_eq!(rc.coring.dim(), 2);
        assert_eq!(rc.dorroh.rhat.dim(), 3);
        assert!(rc.coring.validate().passed(), "{}", rc.coring.validate());
        assert_eq!(*candidate_coring(&r).unwrap().coring, *rc.coring);
    }

    #[test]
    fn unital_ring_coring() {
        let q = Rationals;
        let r = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let w = is_firm_ring(&r).unwrap().unwrap();
        let rc = coring_from_firm_ring(&r, &w).unwrap();
        assert!(rc.coring.validate().passed());
    }

    #[test]
    fn non_firm_candidate_fails() {
        let q = Rationals;
        let r = Arc::new(Algebra::zero_multiplication(&q, 1));
        assert!(is_firm_ring(&r).unwrap().is_err());
        assert!(!candidate_coring(&r).unwrap().coring.validate().passed());
    }

    #[test]
    fn module_comodule_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let r = upper_row(&f);
        let w = is_firm_ring(&r).unwrap().unwrap();
        let rc = coring_from_firm_ring(&r, &w).unwrap();
        let m = Arc::new(Bimodule::regular(&r).forget_left().power(2));
        let wm = firmness(&m, &r).unwrap().unwrap();
        let c = rc.firm_module_to_comodule(&wm).unwrap();
        assert!(c.validate().passed());
        let back = rc.comodule_to_firm_module(&c).unwrap();
        assert_eq!(back.module.right_ops(), wm.module.right_ops());
        assert_eq!(back.d, wm.d);
        let again = rc.firm_module_to_comodule(&back).unwrap();
        assert_eq!(again.coaction(), c.coaction());
    }
}
