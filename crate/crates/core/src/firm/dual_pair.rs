use std::sync::Arc;

use crate::algebra::{left_linearity_failure, right_linearity_failure, Algebra, Bimodule, Dual, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::{kron_apply, Matrix};
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

use super::firmness::{firmness, is_firm_ring, left_firmness, FirmWitness, RankCertificate};

/// `(Σ, Σ†, μ)` with `Σ` a `B`-`A` bimodule, `Σ†` an `A`-`B` bimodule and `μ: Σ† ⊗_B Σ -> A`.
#[derive(Debug, Clone)]
pub struct DualPair<F: Field> {
    pub sigma: Arc<Bimodule<F>>,
    pub dagger: Arc<Bimodule<F>>,
    pub pairing: Tensor<F>,
    pub mu: Matrix<F>,
}

/// The elementary ring `Σ ⊗_A Σ†` with its actions on `Σ` (left) and `Σ†` (right).
#[derive(Debug, Clone)]
pub struct ElementaryRing<F: Field> {
    pub z: Arc<Algebra<F>>,
    pub tensor: Tensor<F>,
    pub sigma_ops: Vec<Matrix<F>>,
    pub dagger_ops: Vec<Matrix<F>>,
}

impl<F: Field> ElementaryRing<F> {
    /// `Σ` as a left `Z`-module.
    pub fn sigma_module(&self, sigma: &Bimodule<F>) -> Result<Bimodule<F>> {
        sigma.with_left(self.z.clone(), self.sigma_ops.clone())
    }

    /// `Σ†` as a right `Z`-module.
    pub fn dagger_module(&self, dagger: &Bimodule<F>) -> Result<Bimodule<F>> {
        dagger.with_right(self.z.clone(), self.dagger_ops.clone())
    }
}

impl<F: Field> DualPair<F> {
    pub fn new(sigma: Arc<Bimodule<F>>, dagger: Arc<Bimodule<F>>, mu: Matrix<F>) -> Result<Self> {
        let pairing = Tensor::new(&dagger, &sigma)?;
        let a = sigma.right_algebra();
        if mu.rows() != a.dim() || mu.cols() != pairing.dim() {
            return Err(Error::DimensionMismatch(format!(
                "pairing is {}x{}, expected {}x{}",
                mu.rows(),
                mu.cols(),
                a.dim(),
                pairing.dim()
            )));
        }
        Ok(DualPair {
            sigma,
            dagger,
            pairing,
            mu,
        })
    }

    /// `(Σ, Σ*, ev)`.
    pub fn from_dual(sigma: &Arc<Bimodule<F>>, dual: &Dual<F>) -> Self {
        DualPair {
            sigma: sigma.clone(),
            dagger: dual.module().clone(),
            pairing: dual.pairing.clone(),
            mu: dual.ev.clone(),
        }
    }

    /// `μ` on `Σ† ⊗_k Σ`.
    pub fn mu_ambient(&self) -> Matrix<F> {
        self.mu.mul(self.pairing.proj())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        r.merge("sigma", self.sigma.validate());
        r.merge("dagger", self.dagger.validate());
        let a = Bimodule::regular(self.sigma.right_algebra());
        r.expect_none(
            "mu_left_linear",
            "μ(a·φ ⊗ u) = a μ(φ ⊗ u)",
            left_linearity_failure(self.pairing.result(), &a, &self.mu).map(|(_, m)| Witness::basis("Σ†⊗Σ", m)),
        );
        r.expect_none(
            "mu_right_linear",
            "μ(φ ⊗ u·a) = μ(φ ⊗ u) a",
            right_linearity_failure(self.pairing.result(), &a, &self.mu).map(|(_, m)| Witness::basis("Σ†⊗Σ", m)),
        );
        r
    }

    /// `Σ ⊗_A Σ†` with multiplication `Σ ⊗ μ ⊗ Σ†`.
    pub fn elementary_ring(&self) -> Result<ElementaryRing<F>> {
        let field = self.sigma.field();
        let t = Tensor::new(&self.sigma, &self.dagger)?;
        let (s, d, z) = (self.sigma.dim(), self.dagger.dim(), t.dim());
        let mu_amb = self.mu_ambient();
        let act_sigma = self.sigma.right_action_map();
        let act_dagger = self.dagger.left_action_map();
        let pairs = t.sec().kron(t.sec());
        let x = kron_apply(s, &mu_amb, d, &pairs);
        let mult = t.proj().mul(&kron_apply(1, &act_sigma, d, &x));
        let algebra = Algebra::new(field, z, mult, None)?.with_detected_unit();
        let id_s = Matrix::identity(field, s);
        let id_d = Matrix::identity(field, d);
        let mut sigma_ops = Vec::with_capacity(z);
        let mut dagger_ops = Vec::with_capacity(z);
        for p in 0..z {
            let lift = t.sec().select_columns(&[p]);
            sigma_ops.push(act_sigma.mul(&kron_apply(s, &mu_amb, 1, &lift.kron(&id_s))));
            dagger_ops.push(act_dagger.mul(&kron_apply(1, &mu_amb, d, &id_d.kron(&lift))));
        }
        Ok(ElementaryRing {
            z: Arc::new(algebra),
            tensor: t,
            sigma_ops,
            dagger_ops,
        })
    }
}

/// An `R`-firm dual pair: `ι: R -> Σ ⊗_A Σ†` multiplicative with `Σ`, `Σ†` firm over `R`.
#[derive(Debug, Clone)]
pub struct FirmDualPair<F: Field> {
    pub pair: DualPair<F>,
    pub r: Arc<Algebra<F>>,
    pub iota: Matrix<F>,
    pub z_dagger: ElementaryRing<F>,
    pub sigma_firm: FirmWitness<F>,
    pub dagger_firm: FirmWitness<F>,
}

/// Everything computed on the way to certifying `R`-firm projectivity.
#[derive(Debug, Clone)]
pub struct FirmProjectivity<F: Field> {
    pub dual: Dual<F>,
    /// `Z = Σ ⊗_A Σ*`.
    pub z: ElementaryRing<F>,
    pub iota: Matrix<F>,
    /// `Σ` with the `R`-action induced by `ι`.
    pub sigma_r: Arc<Bimodule<F>>,
    /// `Σ*` as an `A`-`R` bimodule and `Σ† = Σ* ⊗_R R`.
    pub dual_r: Arc<Bimodule<F>>,
    pub dagger_tensor: Tensor<F>,
    pub firm_pair: FirmDualPair<F>,
    /// `R` itself, certified firm.
    pub r_firm: FirmWitness<F>,
    /// `d_{Z,Σ}` and `d_Z` from the explicit construction.
    pub d_z_sigma: Matrix<F>,
    pub d_z: Matrix<F>,
    /// `α: Σ† -> Σ* ⊗_R R` and `β` in the other direction.
    pub alpha: Matrix<F>,
    pub beta: Matrix<F>,
    pub report: ValidationReport,
}

#[derive(Debug, Clone)]
pub enum Projectivity<F: Field> {
    Firm(Box<FirmProjectivity<F>>),
    /// `Σ` is not firm over `R` with the induced action.
    NotFirm(RankCertificate),
}

impl<F: Field> Projectivity<F> {
    pub fn firm(&self) -> Option<&FirmProjectivity<F>> {
        match self {
            Projectivity::Firm(p) => Some(p),
            Projectivity::NotFirm(_) => None,
        }
    }
}

/// Decides whether `Σ` is `R`-firmly projective along `ι: R -> Σ ⊗_A Σ*`, and if so builds
/// `Σ† = Σ* ⊗_R R` with `μ = ev ∘ (Σ* ⊗ μ_{R,Σ})` and checks the explicit inverses of the
/// multiplications of `Z` and of `Σ` over `Z`.
pub fn is_firmly_projective<F: Field>(sigma: &Arc<Bimodule<F>>, r: &Arc<Algebra<F>>, iota: &Matrix<F>) -> Result<Projectivity<F>> {
    firmly_projective_inner(sigma, r, iota, true)
}

fn firmly_projective_inner<F: Field>(
    sigma: &Arc<Bimodule<F>>,
    r: &Arc<Algebra<F>>,
    iota: &Matrix<F>,
    follow_up: bool,
) -> Result<Projectivity<F>> {
    let field = sigma.field().clone();
    let dual = Dual::new(sigma)?;
    let pair = DualPair::from_dual(sigma, &dual);
    let z = pair.elementary_ring()?;
    if iota.rows() != z.z.dim() || iota.cols() != r.dim() {
        return Err(Error::DimensionMismatch(format!(
            "ι is {}x{}, expected {}x{}",
            iota.rows(),
            iota.cols(),
            z.z.dim(),
            r.dim()
        )));
    }
    if let Some((i, j)) = r.morphism_failure(&z.z, iota) {
        return Err(Error::NotAlgebraMorphism(format!("ι(e{i} e{j}) ≠ ι(e{i}) ι(e{j})")));
    }
    let r_firm = is_firm_ring(r)?.map_err(|c| Error::NotFirm(format!("the ring R: {c}")))?;
    let mut report = ValidationReport::new();
    report.pass("iota_multiplicative", "ι: R -> Σ ⊗_A Σ* is an algebra map");

    let (s, ds, dr) = (sigma.dim(), dual.dim(), r.dim());
    let sigma_ops: Vec<Matrix<F>> = (0..dr).map(|b| combine(&field, s, &iota.column(b), &z.sigma_ops)).collect();
    let sigma_r = Arc::new(sigma.with_left(r.clone(), sigma_ops)?);
    let sigma_firm = match left_firmness(&sigma_r, r)? {
        Ok(w) => w,
        Err(c) => return Ok(Projectivity::NotFirm(c)),
    };
    report.pass("sigma_firm_over_r", "R ⊗_R Σ -> Σ is invertible");

    // Σ* as a right R-module: f · r = f ∘ L_Σ(r).
    let dual_ops = sigma_r
        .left_ops()
        .iter()
        .map(|l| {
            let cols: Vec<Vec<F::Elem>> = dual
                .hom
                .basis_maps()
                .iter()
                .map(|f| dual.hom.coords(&f.mul(l)).expect("precomposition keeps right linearity"))
                .collect();
            Matrix::from_columns(&field, ds, &cols)
        })
        .collect();
    let dual_r = Arc::new(dual.module().with_right(r.clone(), dual_ops)?);
    let r_reg = Arc::new(Bimodule::regular(r));
    let dagger_tensor = Tensor::new(&dual_r, &r_reg)?;
    let dagger = dagger_tensor.result().clone();
    let dd = dagger.dim();

    let pairing = Tensor::new(&dagger, &sigma_r)?;
    let ev_amb = dual.hom.evaluation_ambient();
    let lifted = kron_apply(1, dagger_tensor.sec(), s, pairing.sec());
    let mu = ev_amb.mul(&kron_apply(ds, &sigma_r.left_action_map(), 1, &lifted));
    let firm_pair_base = DualPair::new(sigma_r.clone(), dagger.clone(), mu)?;
    report.merge("dual_pair", firm_pair_base.validate());
    let z_dagger = firm_pair_base.elementary_ring()?;
    report.merge("z_dagger", z_dagger.z.validate());

    // ι†(r) = (ι ⊗ R)(d_R(r)) moved into Σ ⊗_A (Σ* ⊗_R R).
    let d_r_lift = r_firm.tensor.sec().mul(&r_firm.d);
    let step = kron_apply(1, iota, dr, &d_r_lift);
    let step = kron_apply(1, z.tensor.sec(), dr, &step);
    let step = kron_apply(s, dagger_tensor.proj(), 1, &step);
    let iota_dagger = z_dagger.tensor.proj().mul(&step);
    report.expect_none(
        "iota_dagger_multiplicative",
        "ι†: R -> Σ ⊗_A Σ† is an algebra map",
        r.morphism_failure(&z_dagger.z, &iota_dagger).map(|(i, _)| Witness::basis("R", i)),
    );
    let induced: Vec<Matrix<F>> = (0..dr).map(|b| combine(&field, s, &iota_dagger.column(b), &z_dagger.sigma_ops)).collect();
    report.record(
        "induced_actions_agree",
        induced.as_slice() == sigma_r.left_ops(),
        "R acts on Σ identically through ι and ι†",
    );
    let dagger_firm = match firmness(&dagger, r)? {
        Ok(w) => {
            report.pass("dagger_firm_over_r", "Σ† ⊗_R R -> Σ† is invertible");
            Some(w)
        }
        Err(c) => {
            report.fail("dagger_firm_over_r", "Σ† ⊗_R R -> Σ† is singular", Some(c.into()));
            None
        }
    };

    // d_{Z,Σ} = (ι ⊗ Σ) ∘ d_{R,Σ} and d_Z(u ⊗ φ) = ι(r) ⊗ u^r ⊗ φ.
    let sigma_z = Arc::new(z.sigma_module(sigma)?);
    let z_reg = Arc::new(Bimodule::regular(&z.z));
    let tzs = Tensor::new(&z_reg, &sigma_z)?;
    let d_rs_lift = sigma_firm.tensor.sec().mul(&sigma_firm.d);
    let d_z_sigma = tzs.proj().mul(&kron_apply(1, iota, s, &d_rs_lift));
    let mu_zs = tzs.left_collapse();
    report.record("sigma_over_z_mu_d", mu_zs.mul(&d_z_sigma).is_identity(), "μ_{Z,Σ} ∘ d_{Z,Σ} = id");
    report.record("sigma_over_z_d_mu", d_z_sigma.mul(&mu_zs).is_identity(), "d_{Z,Σ} ∘ μ_{Z,Σ} = id");
    let tzz = Tensor::new(&z_reg, &z_reg)?;
    let zt = &z.tensor;
    let step = kron_apply(1, &d_rs_lift, ds, zt.sec());
    let step = kron_apply(dr, zt.proj(), 1, &step);
    let d_z = tzz.proj().mul(&kron_apply(1, iota, z.z.dim(), &step));
    let mu_z = tzz.right_collapse();
    report.record("z_mu_d", mu_z.mul(&d_z).is_identity(), "μ_Z ∘ d_Z = id");
    report.record("z_d_mu", d_z.mul(&mu_z).is_identity(), "d_Z ∘ μ_Z = id");

    // α(φ) = ζ(φ^r) ⊗ r and β(ψ ⊗ r) = ψ(e_r) f_r.
    let (alpha, beta) = match &dagger_firm {
        Some(dw) => {
            let zeta_cols: Vec<Vec<F::Elem>> = (0..dd)
                .map(|p| {
                    let ep = crate::algebra::unit_vector(&field, dd, p);
                    let cols: Vec<Vec<F::Elem>> =
                        (0..s).map(|u| firm_pair_base.mu.mul_vec(&pairing.pure(&ep, &crate::algebra::unit_vector(&field, s, u)))).collect();
                    let functional = Matrix::from_columns(&field, sigma.right_algebra().dim(), &cols);
                    dual.hom.coords(&functional).expect("ζ lands in Σ*")
                })
                .collect();
            let zeta = Matrix::from_columns(&field, ds, &zeta_cols);
            let alpha = dagger_tensor.proj().mul(&kron_apply(1, &zeta, dr, &dw.tensor.sec().mul(&dw.d)));
            let fs = dual.hom.basis_maps();
            let lifts = z_dagger.tensor.sec().mul(&iota_dagger);
            let mut beta_amb = Matrix::zeros(&field, dd, ds * dr);
            for (i, f) in fs.iter().enumerate() {
                for b in 0..dr {
                    let mut acc = vec![field.zero(); dd];
                    for u in 0..s {
                        for p in 0..dd {
                            let c = lifts.get(u * dd + p, b);
                            if field.is_zero(c) {
                                continue;
                            }
                            let a = f.column(u);
                            let col = dagger.left_op(&a).column(p);
                            for (o, x) in acc.iter_mut().zip(&col) {
                                field.mul_add_assign(o, c, x);
                            }
                        }
                    }
                    for (row, v) in acc.into_iter().enumerate() {
                        beta_amb.set(row, i * dr + b, v);
                    }
                }
            }
            let beta = beta_amb.mul(dagger_tensor.sec());
            report.record("alpha_beta_identity", alpha.mul(&beta).is_identity(), "α ∘ β = id");
            report.record("beta_alpha_identity", beta.mul(&alpha).is_identity(), "β ∘ α = id");
            (alpha, beta)
        }
        None => {
            report.skip("alpha_beta_identity", "Σ† is not firm");
            report.skip("beta_alpha_identity", "Σ† is not firm");
            (Matrix::zeros(&field, 0, 0), Matrix::zeros(&field, 0, 0))
        }
    };

    if follow_up {
        let id = Matrix::identity(&field, z.z.dim());
        let ok = match firmly_projective_inner(sigma, &z.z, &id, false) {
            Ok(Projectivity::Firm(p)) => p.report.passed(),
            _ => false,
        };
        report.record("z_firmly_projective", ok, "Σ is Z-firmly projective along the identity");
    }

    let dagger_firm = match dagger_firm {
        Some(w) => w,
        None => return Err(Error::NotFirm("Σ† is not a firm right R-module".into())),
    };
    let firm_pair = FirmDualPair {
        pair: firm_pair_base,
        r: r.clone(),
        iota: iota_dagger,
        z_dagger,
        sigma_firm,
        dagger_firm,
    };
    Ok(Projectivity::Firm(Box::new(FirmProjectivity {
        dual,
        z,
        iota: iota.clone(),
        sigma_r,
        dual_r,
        dagger_tensor,
        firm_pair,
        r_firm,
        d_z_sigma,
        d_z,
        alpha,
        beta,
        report,
    })))
}

fn combine<F: Field>(field: &F, dim: usize, coeffs: &[F::Elem], ops: &[Matrix<F>]) -> Matrix<F> {
    let mut acc = Matrix::zeros(field, dim, dim);
    for (c, op) in coeffs.iter().zip(ops) {
        if !field.is_zero(c) {
            acc = acc.add(&op.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn elementary_ring_of_a_plane_is_the_matrix_ring() {
        let q = Rationals;
        let k2 = Arc::new(Bimodule::vector_space(&q, 2));
        let dual = Dual::new(&k2).unwrap();
        let z = DualPair::from_dual(&k2, &dual).elementary_ring().unwrap();
        assert_eq!(z.z.dim(), 4);
        assert!(z.z.is_unital());
        assert!(z.z.validate().passed());
        // Isomorphic to M_2: same dimension, unital, and a non-commutative pair of basis elements.
        let comm = (0..4).any(|i| (0..4).any(|j| z.z.product(i, j) != z.z.product(j, i)));
        assert!(comm);
        assert_eq!(z.z.find_unit().map(|u| u.len()), Some(4));
    }

    #[test]
    fn zero_module_gives_zero_ring() {
        let q = Rationals;
        let zero = Arc::new(Bimodule::vector_space(&q, 0));
        let dual = Dual::new(&zero).unwrap();
        let z = DualPair::from_dual(&zero, &dual).elementary_ring().unwrap();
        assert_eq!(z.z.dim(), 0);
        assert!(z.z.validate().passed());
    }

    #[test]
    fn plane_is_firmly_projective_over_its_endomorphisms() {
        let f = PrimeField::new(7).unwrap();
        let k2 = Arc::new(Bimodule::vector_space(&f, 2));
        let dual = Dual::new(&k2).unwrap();
        let z = DualPair::from_dual(&k2, &dual).elementary_ring().unwrap();
        let id = Matrix::identity(&f, 4);
        let p = is_firmly_projective(&k2, &z.z, &id).unwrap();
        let p = p.firm().expect("firmly projective");
        assert!(p.report.passed(), "{}", p.report);
        assert_eq!(p.firm_pair.pair.dagger.dim(), 2);
    }

    #[test]
    fn regular_module_is_firmly_projective() {
        let q = Rationals;
        let a = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let sigma = Arc::new(Bimodule::regular(&a));
        let dual = Dual::new(&sigma).unwrap();
        let z = DualPair::from_dual(&sigma, &dual).elementary_ring().unwrap();
        // ι(a) is the class of a ⊗ (x ↦ 1·x), found by solving for left multiplication.
        let iota = left_mult_embedding(&a, &z);
        let p = is_firmly_projective(&sigma, &a, &iota).unwrap();
        assert!(p.firm().unwrap().report.passed(), "{}", p.firm().unwrap().report);
    }

    fn left_mult_embedding(a: &Arc<Algebra<Rationals>>, z: &ElementaryRing<Rationals>) -> Matrix<Rationals> {
        let q = Rationals;
        let flat: Vec<Vec<_>> = z.sigma_ops.iter().map(|m| m.as_flat().to_vec()).collect();
        let sys = Matrix::from_columns(&q, a.dim() * a.dim(), &flat);
        let cols: Vec<Vec<_>> = (0..a.dim()).map(|i| sys.solve_vec(a.left_mult_basis(i).as_flat()).unwrap()).collect();
        Matrix::from_columns(&q, z.z.dim(), &cols)
    }

    #[test]
    fn row_ideal_is_not_firm_on_the_plane() {
        let q = Rationals;
        let k2 = Arc::new(Bimodule::vector_space(&q, 2));
        let dual = Dual::new(&k2).unwrap();
        let z = DualPair::from_dual(&k2, &dual).elementary_ring().unwrap();
        let b = [crate::algebra::matrix_unit(&q, 2, 0, 0), crate::algebra::matrix_unit(&q, 2, 0, 1)];
        let r = Arc::new(Algebra::from_matrix_basis(&q, 2, &b).unwrap());
        // Find the images of e11, e12 in Z by matching their actions on k².
        let flat: Vec<Vec<_>> = z.sigma_ops.iter().map(|m| m.as_flat().to_vec()).collect();
        let sys = Matrix::from_columns(&q, 4, &flat);
        let cols: Vec<Vec<_>> = b.iter().map(|m| sys.solve_vec(m.as_flat()).unwrap()).collect();
        let iota = Matrix::from_columns(&q, 4, &cols);
        match is_firmly_projective(&k2, &r, &iota).unwrap() {
            Projectivity::NotFirm(c) => assert_eq!((c.rank, c.target_dim), (1, 2)),
            Projectivity::Firm(_) => panic!("R·Σ = span{{e1}} cannot be firm"),
        }
    }
}
