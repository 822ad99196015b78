use std::sync::Arc;

use crate::algebra::{Bimodule, HomSpace, Tensor};
use crate::coring::{failing_columns, Coring};
use crate::error::{Error, Result};
use crate::exactlin::{kron_apply, Matrix};
use crate::field::Field;
use crate::firm::{is_firm_ring, is_firmly_projective, left_firmness, DualPair, ElementaryRing, Projectivity, RankCertificate};
use crate::report::{ValidationReport, Witness};

use super::context::{comatrix_coring, ComatrixContext, ComatrixCoring};
use super::instance::{coring_morphism_check, is_comonadic_galois, GaloisInstance, TestFamily};

fn not_galois(can: &Matrix<impl Field>) -> Error {
    let c = RankCertificate::of(can);
    Error::NotGalois {
        rank: c.rank,
        source_dim: c.source_dim,
        target_dim: c.target_dim,
    }
}

/// Spanning vectors, in `End^C(Σ)` coordinates, of the image of `R`.
pub fn image_of_r<F: Field>(g: &GaloisInstance<F>) -> Result<Vec<Vec<F::Elem>>> {
    let end = g.endomorphisms()?;
    let mut span = crate::exactlin::RowSpace::new(g.field(), end.t.dim());
    for c in end.jmath.columns() {
        span.insert(c);
    }
    Ok((0..span.rank()).map(|i| span.basis_vector(i).to_vec()).collect())
}

/// The instance over an intermediate ring `R ⊂ S ⊂ End^C(Σ)` given by spanning vectors of `S`.
pub fn intermediate_instance<F: Field>(g: &GaloisInstance<F>, s_span: &[Vec<F::Elem>]) -> Result<GaloisInstance<F>> {
    let end = g.endomorphisms()?;
    let (s_alg, incl) = end.t.subalgebra(s_span)?;
    let mut span = crate::exactlin::RowSpace::new(g.field(), end.t.dim());
    for c in incl.columns() {
        span.insert(c);
    }
    if let Some(i) = end.jmath.columns().iter().position(|c| !span.contains(c)) {
        return Err(Error::PreconditionFailed(format!("the image of basis element {i} of R is not in S")));
    }
    if let Err(c) = is_firm_ring(&Arc::new(s_alg.clone()))? {
        return Err(Error::PreconditionFailed(format!("S is not firm: S ⊗_S S -> S has {c}")));
    }
    let ops = incl.columns().iter().map(|v| end.hom.hom.combine(&end.hom.inclusion.mul_vec(v))).collect();
    g.over(Arc::new(s_alg), ops)
}

/// For a Galois instance and a firm `R ⊂ S ⊂ End^C(Σ)`, builds
/// `ν_M: M ⊗_A C -> Hom_A(Σ, M) ⊗_S (S ⊗_S Σ)` through `can⁻¹` and checks that it inverts
/// `can_M` on each family member.
pub fn galois_implies_comonadic<F: Field>(
    g: &GaloisInstance<F>,
    s_span: &[Vec<F::Elem>],
    family: &TestFamily<F>,
) -> Result<ValidationReport> {
    let field = g.field();
    let dual = g.dual()?;
    let can = g.can_matrix(&dual);
    let can_inv = can.inverse().ok_or_else(|| not_galois(&can))?;
    let gs = intermediate_instance(g, s_span)?;
    let sigma_s = gs.sigma.carrier();
    let s_alg = gs.r().clone();
    let s_reg = Arc::new(Bimodule::regular(&s_alg));
    let ss = Tensor::new(&s_reg, sigma_s)?;
    let mu_s = ss.left_collapse();
    let Some(d_s) = mu_s.inverse() else {
        return Err(Error::PreconditionFailed(format!("Σ is not firm over S: {}", RankCertificate::of(&mu_s))));
    };
    let (s, c, sd) = (g.sigma.dim(), g.coring.dim(), dual.dim());
    let rho = g.rho_ambient();
    let left_s = sigma_s.left_action_map();
    // c ↦ f_c ⊗ d_S(u_c) on Σ* ⊗_k (S ⊗_S Σ).
    let q = kron_apply(sd, &d_s, 1, &dual.pairing.sec().mul(&can_inv));
    let mut rep = ValidationReport::new();
    for (name, m) in &family.members {
        let hom = HomSpace::right_linear(sigma_s, m)?;
        let x = Tensor::new(hom.bimodule(), ss.result())?;
        let mc = Tensor::new(m, g.coring.carrier())?;
        let h = hom.dim();
        let step = kron_apply(h, ss.sec(), 1, x.sec());
        let step = kron_apply(h, &left_s, 1, &step);
        let step = kron_apply(h, &rho, 1, &step);
        let can_s = mc.proj().mul(&kron_apply(1, &hom.evaluation_ambient(), c, &step));
        // (m, f) ↦ (v ↦ m f(v)).
        let p_cols = (0..m.dim())
            .flat_map(|i| (0..sd).map(move |f| (i, f)))
            .map(|(i, f)| {
                let ff = dual.hom.basis(f);
                let cols: Vec<Vec<F::Elem>> = (0..s).map(|v| m.right_op(&ff.column(v)).column(i)).collect();
                hom.coords(&Matrix::from_columns(field, m.dim(), &cols))
                    .ok_or_else(|| Error::InvariantViolation("m f(-) is not A-linear".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Matrix::from_columns(field, h, &p_cols);
        let nu = x.proj().mul(&kron_apply(1, &p, ss.dim(), &kron_apply(m.dim(), &q, 1, mc.sec())));
        rep.expect_none(
            format!("nu_after_can[{name}]"),
            "ν_M ∘ can_M = id",
            failing_columns(&nu.mul(&can_s), &Matrix::identity(field, x.dim()), "Hom⊗S⊗Σ"),
        );
        rep.expect_none(
            format!("can_after_nu[{name}]"),
            "can_M ∘ ν_M = id",
            failing_columns(&can_s.mul(&nu), &Matrix::identity(field, mc.dim()), "M⊗C"),
        );
    }
    Ok(rep)
}

/// Galois and comonadic-Galois verdicts agree whenever `Σ` is firmly projective along the
/// induced embedding; skipped otherwise.
pub fn galois_comonadic_agreement<F: Field>(g: &GaloisInstance<F>, family: &TestFamily<F>) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    let report = is_comonadic_galois(g, family)?;
    let comonadic = report.comonadic.unwrap_or(false);
    match g.firm_projectivity()? {
        Some(_) => rep.record(
            "galois_iff_comonadic",
            report.is_galois == comonadic,
            format!("is_galois = {}, comonadic = {comonadic}", report.is_galois),
        ),
        None => rep.skip(
            "galois_iff_comonadic",
            format!("Σ is not firmly projective (is_galois = {}, comonadic = {comonadic})", report.is_galois),
        ),
    }
    Ok(rep)
}

/// Compares the verdicts over `R` and over `T = End^C(Σ)`: `can_{M,R}` factors as
/// `can_{M,T} ∘ π_M` with `π_M` onto, comonadic over `R` implies comonadic over `T`, and the
/// two agree when the image of `R` is a left ideal of `T`.
pub fn endomorphism_ring_comparison<F: Field>(g: &GaloisInstance<F>, family: &TestFamily<F>) -> Result<ValidationReport> {
    let field = g.field();
    let end = g.endomorphisms()?;
    let full: Vec<Vec<F::Elem>> = (0..end.t.dim()).map(|i| end.t.basis_vector(i)).collect();
    let gt = intermediate_instance(g, &full)?;
    let mut rep = ValidationReport::new();
    let id_s = Matrix::identity(field, g.sigma.dim());
    for (name, m) in &family.members {
        let cr = g.can_m(m)?;
        let ct = gt.can_m(m)?;
        let id_h = Matrix::identity(field, cr.hom.dim());
        let pi = cr.source.induced(&ct.source, &id_h, &id_s);
        rep.expect_none(
            format!("can_factors_through_T[{name}]"),
            "can_{M,R} = can_{M,T} ∘ π_M",
            failing_columns(&ct.matrix.mul(&pi), &cr.matrix, "Hom⊗_RΣ"),
        );
        rep.record(format!("pi_onto[{name}]"), pi.rank() == pi.rows(), "π_M is onto");
    }
    let over_r = is_comonadic_galois(g, family)?.comonadic.unwrap_or(false);
    let over_t = is_comonadic_galois(&gt, family)?.comonadic.unwrap_or(false);
    if over_r {
        rep.record("comonadic_over_t", over_t, "comonadic over R implies comonadic over T");
    } else {
        rep.skip("comonadic_over_t", "Σ is not comonadic-Galois over R");
    }
    let image = end.jmath.columns();
    if end.t.is_left_ideal(&image) {
        rep.record(
            "left_ideal_agreement",
            over_r == over_t,
            format!("R is a left ideal of T; comonadic over R = {over_r}, over T = {over_t}"),
        );
    } else {
        rep.skip("left_ideal_agreement", "the image of R is not a left ideal of T");
    }
    Ok(rep)
}

/// Reconstruction data for an instance with invertible `can`: the elementary ring
/// `Z = Σ ⊗_A Σ*`, the context `(R, A, Σ, Σ* ⊗_R R, ι, ε)` and the coring isomorphism from its
/// comatrix coring to `C`. The report also covers the context `(Z, A, Σ, Σ* ⊗_Z Z, d̄_Z, ε)`.
#[derive(Debug, Clone)]
pub struct ComonadicContext<F: Field> {
    pub z: ElementaryRing<F>,
    pub context: ComatrixContext<F>,
    pub comatrix: ComatrixCoring<F>,
    /// `D -> C`.
    pub iso: Matrix<F>,
    pub report: ValidationReport,
}

/// Builds `d_{Z,Σ} = (Σ ⊗ can⁻¹) ∘ ρ_Σ` and `d_Z = d_{Z,Σ} ⊗ Σ*`, certifies that they invert
/// the multiplications of `Z ⊗_Z Σ` and `Z ⊗_Z Z`, validates the Z-level context and compares
/// its `η` with the image of `d_Z`, then builds the comatrix coring over `R`.
pub fn comonadic_context<F: Field>(g: &GaloisInstance<F>) -> Result<ComonadicContext<F>> {
    let field = g.field();
    let dual = g.dual()?;
    let can = g.can_matrix(&dual);
    let can_inv = can.inverse().ok_or_else(|| not_galois(&can))?;
    let z = DualPair::from_dual(g.sigma.carrier(), &dual).elementary_ring()?;
    let zt = &z.tensor;
    let (s, sd, zd) = (g.sigma.dim(), dual.dim(), z.z.dim());
    let sigma_z = Arc::new(g.sigma.carrier().with_left(z.z.clone(), z.sigma_ops.clone())?);
    // u ↦ u₀ ⊗ can⁻¹(u₁) on Σ ⊗_k Σ* ⊗_k Σ.
    let d_amb = kron_apply(s, &dual.pairing.sec().mul(&can_inv), 1, &g.rho_ambient());
    let mut report = ValidationReport::new();
    let z_reg = Arc::new(Bimodule::regular(&z.z));
    let tzs = Tensor::new(&z_reg, &sigma_z)?;
    let d_zs = tzs.proj().mul(&kron_apply(1, zt.proj(), s, &d_amb));
    let mu_zs = tzs.left_collapse();
    report.expect_none("mu_d_sigma", "μ̄_{Z,Σ} ∘ d̄_{Z,Σ} = id", failing_columns(&mu_zs.mul(&d_zs), &Matrix::identity(field, s), "Σ"));
    report.expect_none(
        "d_mu_sigma",
        "d̄_{Z,Σ} ∘ μ̄_{Z,Σ} = id",
        failing_columns(&d_zs.mul(&mu_zs), &Matrix::identity(field, tzs.dim()), "Z⊗Σ"),
    );
    let tzz = Tensor::new(&z_reg, &z_reg)?;
    // Z ⊗_k Z ambient of d_Z, before any quotient.
    let d_z_amb = {
        let step = kron_apply(1, &d_amb, sd, zt.sec());
        kron_apply(1, zt.proj(), s * sd, &step)
    };
    let d_z = tzz.proj().mul(&kron_apply(zd, zt.proj(), 1, &d_z_amb));
    let mu_z = tzz.left_collapse();
    report.expect_none("mu_d_z", "μ̄_Z ∘ d̄_Z = id", failing_columns(&mu_z.mul(&d_z), &Matrix::identity(field, zd), "Z"));
    report.expect_none(
        "d_mu_z",
        "d̄_Z ∘ μ̄_Z = id",
        failing_columns(&d_z.mul(&mu_z), &Matrix::identity(field, tzz.dim()), "Z⊗Z"),
    );
    report.record("z_firm", is_firm_ring(&z.z)?.is_ok(), "Z ⊗_Z Z -> Z is invertible");
    report.record("sigma_firm_over_z", left_firmness(&sigma_z, &z.z)?.is_ok(), "Z ⊗_Z Σ -> Σ is invertible");

    let pz = match is_firmly_projective(g.sigma.carrier(), &z.z, &Matrix::identity(field, zd))? {
        Projectivity::Firm(p) => p,
        Projectivity::NotFirm(c) => return Err(Error::NotFirm(format!("Z ⊗_Z Σ -> Σ has {c}"))),
    };
    let z_context = ComatrixContext::from_firm_projectivity(&pz)?;
    report.merge("z_context", z_context.validate());

    // η of the Z-level context against d_Z read in Σ ⊗_A (Σ* ⊗_R Z), pushed to Σ ⊗_A (Σ* ⊗_Z Z).
    let z_rz = Arc::new(Bimodule::regular(&z.z).with_left(g.r().clone(), zt.result().left_ops().to_vec())?);
    let dagger_r = Tensor::new(dual.module(), &z_rz)?;
    let to_context = pz.dagger_tensor.proj().mul(dagger_r.sec());
    let eta_r = {
        let step = kron_apply(s * sd, zt.proj(), 1, &kron_apply(1, &d_amb, sd, zt.sec()));
        kron_apply(s, dagger_r.proj(), 1, &step)
    };
    let eta_pushed = z_context.sd.proj().mul(&kron_apply(s, &to_context, 1, &eta_r));
    report.expect_none("eta_is_d_z", "η = d̄_Z", failing_columns(&eta_pushed, &z_context.eta, "Z"));

    let p = g
        .firm_projectivity()?
        .ok_or_else(|| Error::NotFirm("Σ is not firmly projective over R".into()))?;
    let context = ComatrixContext::from_firm_projectivity(&p)?;
    report.merge("context", context.validate());
    let ev = dual.hom.evaluation_ambient();
    let lifted = kron_apply(1, p.dagger_tensor.sec(), s, context.ds.sec());
    let eps_explicit = ev.mul(&kron_apply(sd, &context.sigma.left_action_map(), 1, &lifted));
    report.expect_none("eps_is_ev", "ε(φ ⊗ r ⊗ u) = φ(r u)", failing_columns(&eps_explicit, &context.eps, "Σ†⊗Σ"));

    let comatrix = comatrix_coring(&context)?;
    // Σ† ⊗_Z Σ -> Σ* ⊗_R Σ, φ ⊗ z ⊗ u ↦ φ ⊗ z u.
    let k = dual.pairing.proj().mul(&kron_apply(sd, &context.sigma.left_action_map(), 1, &lifted));
    let iso = can.mul(&k);
    report.merge("iso", coring_isomorphism_check(&comatrix.coring, &g.coring, &iso));
    Ok(ComonadicContext {
        z,
        context,
        comatrix,
        iso,
        report,
    })
}

/// Checks that a map between corings is an isomorphism of corings.
pub fn coring_isomorphism_check<F: Field>(src: &Coring<F>, tgt: &Coring<F>, f: &Matrix<F>) -> ValidationReport {
    let mut rep = coring_morphism_check(src, tgt, f);
    if f.is_isomorphism() {
        rep.pass("bijective", "the map is bijective");
    } else {
        rep.fail("bijective", "the map is not bijective", Some(Witness::from(RankCertificate::of(f))));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::super::instance::tests::{matrix_instance, sweedler};
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn nu_inverts_can_on_sweedler() {
        let g = sweedler(&Rationals);
        let fam = TestFamily::standard(g.a(), 2, 5);
        let r = image_of_r(&g).unwrap();
        let rep = galois_implies_comonadic(&g, &r, &fam).unwrap();
        assert!(rep.passed(), "{rep}");
        let end = g.endomorphisms().unwrap();
        let full: Vec<_> = (0..end.t.dim()).map(|i| end.t.basis_vector(i)).collect();
        let rep = galois_implies_comonadic(&g, &full, &fam).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn agreement_and_comparison_on_the_matrix_coring() {
        let f = PrimeField::new(7).unwrap();
        let g = matrix_instance(&f, 2);
        let fam = TestFamily::standard(g.a(), 3, 1);
        assert!(galois_comonadic_agreement(&g, &fam).unwrap().passed());
        let rep = endomorphism_ring_comparison(&g, &fam).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn context_reconstruction() {
        let g = sweedler(&Rationals);
        let ctx = comonadic_context(&g).unwrap();
        assert!(ctx.report.passed(), "{}", ctx.report);
        assert_eq!(ctx.z.z.dim(), 2);
        let f = PrimeField::new(7).unwrap();
        let g = matrix_instance(&f, 2);
        let ctx = comonadic_context(&g).unwrap();
        assert!(ctx.report.passed(), "{}", ctx.report);
        assert!(ctx.z.z.is_unital());
    }

    #[test]
    fn matrix_coring_has_scalar_endomorphisms() {
        let f = PrimeField::new(7).unwrap();
        let g = matrix_instance(&f, 2);
        let end = g.endomorphisms().unwrap();
        assert_eq!(end.t.dim(), 1);
        let fam = TestFamily::standard(g.a(), 0, 1);
        assert!(galois_implies_comonadic(&g, &[vec![f.one()]], &fam).unwrap().passed());
    }
}
