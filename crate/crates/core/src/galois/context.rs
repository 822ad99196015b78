use std::sync::Arc;

use crate::algebra::{left_linearity_failure, right_linearity_failure, same_algebra, Algebra, Bimodule, Tensor};
use crate::coring::{failing_columns, Comodule, Coring};
use crate::error::{Error, Result};
use crate::exactlin::{kron_apply, Matrix};
use crate::field::Field;
use crate::firm::{firmness, left_firmness, FirmProjectivity};
use crate::report::{ValidationReport, Witness};

/// `(R, A, Σ, Σ†, η, ε)` with `η: R -> Σ ⊗_A Σ†` and `ε: Σ† ⊗_R Σ -> A`.
#[derive(Debug, Clone)]
pub struct ComatrixContext<F: Field> {
    pub r: Arc<Algebra<F>>,
    pub a: Arc<Algebra<F>>,
    /// An `R`-`A` bimodule.
    pub sigma: Arc<Bimodule<F>>,
    /// An `A`-`R` bimodule.
    pub dagger: Arc<Bimodule<F>>,
    /// `Σ ⊗_A Σ†`, the codomain of `η`.
    pub sd: Tensor<F>,
    /// `Σ† ⊗_R Σ`, the domain of `ε`.
    pub ds: Tensor<F>,
    pub eta: Matrix<F>,
    pub eps: Matrix<F>,
}

impl<F: Field> ComatrixContext<F> {
    pub fn new(sigma: Arc<Bimodule<F>>, dagger: Arc<Bimodule<F>>, eta: Matrix<F>, eps: Matrix<F>) -> Result<Self> {
        let r = sigma.left_algebra().clone();
        let a = sigma.right_algebra().clone();
        if !same_algebra(dagger.left_algebra(), &a) || !same_algebra(dagger.right_algebra(), &r) {
            return Err(Error::AlgebraMismatch("Σ† must be an A-R bimodule for the R-A bimodule Σ".into()));
        }
        let sd = Tensor::new(&sigma, &dagger)?;
        let ds = Tensor::new(&dagger, &sigma)?;
        if eta.rows() != sd.dim() || eta.cols() != r.dim() {
            return Err(Error::DimensionMismatch(format!(
                "η is {}x{}, expected {}x{}",
                eta.rows(),
                eta.cols(),
                sd.dim(),
                r.dim()
            )));
        }
        if eps.rows() != a.dim() || eps.cols() != ds.dim() {
            return Err(Error::DimensionMismatch(format!(
                "ε is {}x{}, expected {}x{}",
                eps.rows(),
                eps.cols(),
                a.dim(),
                ds.dim()
            )));
        }
        Ok(ComatrixContext {
            r,
            a,
            sigma,
            dagger,
            sd,
            ds,
            eta,
            eps,
        })
    }

    /// The context `(R, A, Σ, Σ* ⊗_R R, ι†, μ)` of an `R`-firmly projective module.
    pub fn from_firm_projectivity(p: &FirmProjectivity<F>) -> Result<Self> {
        let fp = &p.firm_pair;
        Self::new(fp.pair.sigma.clone(), fp.pair.dagger.clone(), fp.iota.clone(), fp.pair.mu.clone())
    }

    /// Same data with `η` replaced, e.g. for negative controls.
    pub fn with_eta(&self, eta: Matrix<F>) -> Result<Self> {
        Self::new(self.sigma.clone(), self.dagger.clone(), eta, self.eps.clone())
    }

    pub fn with_eps(&self, eps: Matrix<F>) -> Result<Self> {
        Self::new(self.sigma.clone(), self.dagger.clone(), self.eta.clone(), eps)
    }

    pub(crate) fn field(&self) -> &F {
        self.sigma.field()
    }

    /// `η` lifted to `Σ ⊗_k Σ†`.
    pub(crate) fn eta_ambient(&self) -> Matrix<F> {
        self.sd.sec().mul(&self.eta)
    }

    /// `ε` on `Σ† ⊗_k Σ`.
    pub(crate) fn eps_ambient(&self) -> Matrix<F> {
        self.eps.mul(self.ds.proj())
    }

    /// `(Σ ⊗ ε) ∘ (η ⊗ Σ)` on `R ⊗_R Σ`, and the tensor it is defined on.
    pub fn left_triangle(&self) -> Result<(Matrix<F>, Tensor<F>)> {
        let s = self.sigma.dim();
        let reg = Arc::new(Bimodule::regular(&self.r));
        let t = Tensor::new(&reg, &self.sigma)?;
        let step = kron_apply(1, &self.eta_ambient(), s, t.sec());
        let step = kron_apply(s, &self.eps_ambient(), 1, &step);
        Ok((self.sigma.right_action_map().mul(&step), t))
    }

    /// `(ε ⊗ Σ†) ∘ (Σ† ⊗ η)` on `Σ† ⊗_R R`, and the tensor it is defined on.
    pub fn right_triangle(&self) -> Result<(Matrix<F>, Tensor<F>)> {
        let d = self.dagger.dim();
        let reg = Arc::new(Bimodule::regular(&self.r));
        let t = Tensor::new(&self.dagger, &reg)?;
        let step = kron_apply(d, &self.eta_ambient(), 1, t.sec());
        let step = kron_apply(1, &self.eps_ambient(), d, &step);
        Ok((self.dagger.left_action_map().mul(&step), t))
    }

    /// Both triangle identities, the bilinearity of `η` and `ε`, and firmness of `Σ`, `Σ†` over `R`.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let r_reg = Bimodule::regular(&self.r);
        let a_reg = Bimodule::regular(&self.a);
        let lin = |name: &str, f: Option<(usize, usize)>| f.map(|(_, c)| Witness::basis(name, c));
        rep.expect_none("eta_left_linear", "η(r r') = r η(r')", lin("R", left_linearity_failure(&r_reg, self.sd.result(), &self.eta)));
        rep.expect_none("eta_right_linear", "η(r r') = η(r) r'", lin("R", right_linearity_failure(&r_reg, self.sd.result(), &self.eta)));
        rep.expect_none("eps_left_linear", "ε(a x) = a ε(x)", lin("Σ†⊗Σ", left_linearity_failure(self.ds.result(), &a_reg, &self.eps)));
        rep.expect_none("eps_right_linear", "ε(x a) = ε(x) a", lin("Σ†⊗Σ", right_linearity_failure(self.ds.result(), &a_reg, &self.eps)));
        match self.left_triangle() {
            Ok((lhs, t)) => rep.expect_none(
                "left_triangle",
                "(Σ ⊗ ε)(η ⊗ Σ) = μ_{R,Σ}",
                failing_columns(&lhs, &t.left_collapse(), "R⊗Σ"),
            ),
            Err(e) => rep.fail("left_triangle", e.to_string(), None),
        }
        match self.right_triangle() {
            Ok((lhs, t)) => rep.expect_none(
                "right_triangle",
                "(ε ⊗ Σ†)(Σ† ⊗ η) = μ_{Σ†,R}",
                failing_columns(&lhs, &t.right_collapse(), "Σ†⊗R"),
            ),
            Err(e) => rep.fail("right_triangle", e.to_string(), None),
        }
        match left_firmness(&self.sigma, &self.r) {
            Ok(Ok(_)) => rep.pass("sigma_firm", "R ⊗_R Σ -> Σ is invertible"),
            Ok(Err(c)) => rep.fail("sigma_firm", "R ⊗_R Σ -> Σ is singular", Some(c.into())),
            Err(e) => rep.fail("sigma_firm", e.to_string(), None),
        }
        match firmness(&self.dagger, &self.r) {
            Ok(Ok(_)) => rep.pass("dagger_firm", "Σ† ⊗_R R -> Σ† is invertible"),
            Ok(Err(c)) => rep.fail("dagger_firm", "Σ† ⊗_R R -> Σ† is singular", Some(c.into())),
            Err(e) => rep.fail("dagger_firm", e.to_string(), None),
        }
        rep
    }
}

/// The comatrix coring `D = Σ† ⊗_R Σ` with `Σ` as a right and `Σ†` as a left `D`-comodule.
#[derive(Debug, Clone)]
pub struct ComatrixCoring<F: Field> {
    pub coring: Arc<Coring<F>>,
    pub sigma: Comodule<F>,
    /// `D ⊗_A Σ†`.
    pub dagger_tensor: Tensor<F>,
    /// `ρ_{Σ†}: Σ† -> D ⊗_A Σ†`.
    pub dagger_coaction: Matrix<F>,
}

impl<F: Field> ComatrixCoring<F> {
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        rep.merge("coring", self.coring.validate());
        rep.merge("sigma", self.sigma.validate());
        let t = &self.dagger_tensor;
        let dag = t.right();
        let d = dag.dim();
        let lhs = dag
            .left_action_map()
            .mul(&kron_apply(1, self.coring.counit(), d, &t.sec().mul(&self.dagger_coaction)));
        rep.expect_none(
            "dagger_counit",
            "(ε ⊗ Σ†) ∘ ρ_{Σ†} = id",
            failing_columns(&lhs, &Matrix::identity(dag.field(), d), "Σ†"),
        );
        rep
    }
}

/// `Δ(φ ⊗ u) = φ ⊗ η(r) ⊗ u^r`, `ε_D = ε`, `ρ_Σ(u) = η(r) ⊗ u^r` where `d_{R,Σ}(u) = r ⊗ u^r`.
pub fn comatrix_coring<F: Field>(ctx: &ComatrixContext<F>) -> Result<ComatrixCoring<F>> {
    let rep = ctx.validate();
    if !rep.passed() {
        let first = rep.failures().next().map(|c| c.name.clone()).unwrap_or_default();
        return Err(Error::InvalidContext(format!("check `{first}` failed")));
    }
    let sigma_firm = left_firmness(&ctx.sigma, &ctx.r)?.map_err(|c| Error::InvalidContext(format!("Σ is not firm: {c}")))?;
    let dagger_firm = firmness(&ctx.dagger, &ctx.r)?.map_err(|c| Error::InvalidContext(format!("Σ† is not firm: {c}")))?;
    let (s, d) = (ctx.sigma.dim(), ctx.dagger.dim());
    let dd = ctx.ds.dim();
    let eta = ctx.eta_ambient();
    let d_sigma = sigma_firm.tensor.sec().mul(&sigma_firm.d);

    let carrier = ctx.ds.result().clone();
    let step = kron_apply(d, &d_sigma, 1, ctx.ds.sec());
    let step = kron_apply(d, &eta, s, &step);
    let step = kron_apply(1, ctx.ds.proj(), d * s, &step);
    let comult_ambient = kron_apply(dd, ctx.ds.proj(), 1, &step);
    let coring = Arc::new(Coring::from_ambient(carrier, &comult_ambient, ctx.eps.clone())?);

    let rho = kron_apply(s, ctx.ds.proj(), 1, &kron_apply(1, &eta, s, &d_sigma));
    let sigma = Comodule::from_ambient(&coring, ctx.sigma.clone(), &rho)?;

    let dagger_tensor = Tensor::new(coring.carrier(), &ctx.dagger)?;
    let d_dagger = dagger_firm.tensor.sec().mul(&dagger_firm.d);
    let step = kron_apply(d, &eta, 1, &d_dagger);
    let dagger_coaction = dagger_tensor.proj().mul(&kron_apply(1, ctx.ds.proj(), d, &step));
    Ok(ComatrixCoring {
        coring,
        sigma,
        dagger_tensor,
        dagger_coaction,
    })
}

/// A named object of a test family.
pub type Named<T> = (String, T);

/// Unit `α_N(n) = n^r ⊗ η(r)` of the adjunction `(- ⊗_R Σ, - ⊗_A Σ†)`.
fn unit<F: Field>(ctx: &ComatrixContext<F>, n: &Arc<Bimodule<F>>) -> Result<Option<(Tensor<F>, Tensor<F>, Matrix<F>)>> {
    let w = match firmness(n, &ctx.r)? {
        Ok(w) => w,
        Err(_) => return Ok(None),
    };
    let ns = Tensor::new(n, &ctx.sigma)?;
    let nsd = Tensor::new(ns.result(), &ctx.dagger)?;
    let step = kron_apply(n.dim(), &ctx.eta_ambient(), 1, &w.tensor.sec().mul(&w.d));
    let alpha = nsd.proj().mul(&kron_apply(1, ns.proj(), ctx.dagger.dim(), &step));
    Ok(Some((ns, nsd, alpha)))
}

/// Counit `β_M(m ⊗ φ ⊗ u) = m ε(φ ⊗ u)` on `(M ⊗_A Σ†) ⊗_R Σ`.
fn counit<F: Field>(ctx: &ComatrixContext<F>, md: &Tensor<F>, mds: &Tensor<F>) -> Matrix<F> {
    let m = md.left();
    let step = kron_apply(1, md.sec(), ctx.sigma.dim(), mds.sec());
    let step = kron_apply(m.dim(), &ctx.eps_ambient(), 1, &step);
    m.right_action_map().mul(&step)
}

/// Triangle identities `β_{FN} ∘ F(α_N) = id` and `G(β_M) ∘ α_{GM} = id` on the given modules.
pub fn adjunction_check<F: Field>(
    ctx: &ComatrixContext<F>,
    modules_r: &[Named<Arc<Bimodule<F>>>],
    modules_a: &[Named<Arc<Bimodule<F>>>],
) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    let field = ctx.field().clone();
    let (s, d) = (ctx.sigma.dim(), ctx.dagger.dim());
    for (name, n) in modules_r {
        if !same_algebra(n.right_algebra(), &ctx.r) {
            return Err(Error::InvalidContext(format!("{name} is not a right R-module")));
        }
        let check = format!("triangle_F[{name}]");
        let Some((ns, nsd, alpha)) = unit(ctx, n)? else {
            rep.skip(check, format!("{name} is not a firm R-module"));
            continue;
        };
        let nsds = Tensor::new(nsd.result(), &ctx.sigma)?;
        let f_alpha = ns.induced(&nsds, &alpha, &Matrix::identity(&field, s));
        let beta = counit(ctx, &nsd, &nsds);
        let lhs = beta.mul(&f_alpha);
        rep.expect_none(check, "β_{FN} ∘ F(α_N) = id", failing_columns(&lhs, &Matrix::identity(&field, ns.dim()), name));
    }
    for (name, m) in modules_a {
        if !same_algebra(m.right_algebra(), &ctx.a) {
            return Err(Error::InvalidContext(format!("{name} is not a right A-module")));
        }
        let check = format!("triangle_G[{name}]");
        let md = Tensor::new(m, &ctx.dagger)?;
        let gm = md.result().clone();
        let Some((gms, gmsd, alpha)) = unit(ctx, &gm)? else {
            rep.skip(check, format!("{name} ⊗_A Σ† is not a firm R-module"));
            continue;
        };
        let beta = counit(ctx, &md, &gms);
        let g_beta = gmsd.induced(&md, &beta, &Matrix::identity(&field, d));
        let lhs = g_beta.mul(&alpha);
        rep.expect_none(check, "G(β_M) ∘ α_{GM} = id", failing_columns(&lhs, &Matrix::identity(&field, gm.dim()), name));
    }
    Ok(rep)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::Dual;
    use crate::field::{PrimeField, Rationals};
    use crate::firm::{is_firmly_projective, DualPair};

    /// `R = M_2(k)`, `A = k`, `Σ = k²`, `Σ† = (k²)*`, `η(e_ij) = e_i ⊗ e_j*`, `ε = ev`.
    pub(crate) fn matrix_context<F: Field>(f: &F, scale: i64) -> ComatrixContext<F> {
        let r = Arc::new(Algebra::full_matrix(f, 2));
        let sigma = Arc::new(Bimodule::column_vectors(&r, 2));
        let dagger = Arc::new(Bimodule::row_vectors(&r, 2));
        let sd = Tensor::new(&sigma, &dagger).unwrap();
        let ds = Tensor::new(&dagger, &sigma).unwrap();
        let eta_amb = Matrix::identity(f, 4);
        let eta = sd.proj().mul(&eta_amb);
        let mut ev = Matrix::zeros(f, 1, 4);
        ev.set(0, 0, f.from_i64(scale));
        ev.set(0, 3, f.from_i64(scale));
        let eps = ev.mul(ds.sec());
        ComatrixContext::new(sigma, dagger, eta, eps).unwrap()
    }

    pub(crate) fn trivial_context<F: Field>(f: &F) -> ComatrixContext<F> {
        let k = Arc::new(Bimodule::vector_space(f, 1));
        let id = Matrix::identity(f, 1);
        let t = Tensor::new(&k, &k).unwrap();
        ComatrixContext::new(k.clone(), k, t.proj().mul(&id), id.mul(t.sec())).unwrap()
    }

    #[test]
    fn trivial_context_is_valid() {
        let ctx = trivial_context(&Rationals);
        assert!(ctx.validate().passed());
        let cc = comatrix_coring(&ctx).unwrap();
        assert_eq!(cc.coring.dim(), 1);
        assert!(cc.validate().passed());
    }

    #[test]
    fn matrix_context_collapses_to_the_trivial_coring() {
        let ctx = matrix_context(&Rationals, 1);
        assert!(ctx.validate().passed(), "{}", ctx.validate());
        let cc = comatrix_coring(&ctx).unwrap();
        assert_eq!(cc.coring.dim(), 1);
        assert!(cc.validate().passed(), "{}", cc.validate());
    }

    #[test]
    fn doubled_pairing_breaks_the_left_triangle() {
        let ctx = matrix_context(&Rationals, 2);
        let rep = ctx.validate();
        assert_eq!(rep.status_of("left_triangle"), Some(crate::report::Status::Fail));
        assert!(rep.get("left_triangle").unwrap().witness.is_some());
        assert!(matches!(comatrix_coring(&ctx), Err(Error::InvalidContext(_))));
    }

    #[test]
    fn plane_over_the_base_field_gives_the_matrix_coring() {
        let f = PrimeField::new(7).unwrap();
        let k2 = Arc::new(Bimodule::vector_space(&f, 2));
        let dual = Dual::new(&k2).unwrap();
        let z = DualPair::from_dual(&k2, &dual).elementary_ring().unwrap();
        let k = k2.left_algebra().clone();
        // ι(1) is the element of Z acting as the identity on k².
        let flat: Vec<Vec<_>> = z.sigma_ops.iter().map(|m| m.as_flat().to_vec()).collect();
        let sys = Matrix::from_columns(&f, 4, &flat);
        let one = sys.solve_vec(Matrix::identity(&f, 2).as_flat()).unwrap();
        let iota = Matrix::from_columns(&f, 4, &[one]);
        let p = is_firmly_projective(&k2, &k, &iota).unwrap();
        let ctx = ComatrixContext::from_firm_projectivity(p.firm().unwrap()).unwrap();
        assert!(ctx.validate().passed());
        let cc = comatrix_coring(&ctx).unwrap();
        assert_eq!(cc.coring.dim(), 4);
        assert!(cc.validate().passed(), "{}", cc.validate());
        // Each basis element has a comultiplication with exactly two pure terms, as e_ij ↦ Σ_l e_il ⊗ e_lj.
        let mc = Coring::matrix_coring(&f, 2);
        let nonzero = |c: &Coring<PrimeField>| {
            let lifted = c.cc().sec().mul(c.comult());
            (0..c.dim()).map(|j| lifted.column(j).iter().filter(|x| !f.is_zero(x)).count()).collect::<Vec<_>>()
        };
        assert_eq!(nonzero(&cc.coring).iter().sum::<usize>(), nonzero(&mc).iter().sum::<usize>());
    }

    #[test]
    fn triangles_hold_on_matrix_context() {
        let f = Rationals;
        let ctx = matrix_context(&f, 1);
        let r_mod = Arc::new(Bimodule::right_regular(&ctx.r));
        let a_mods = vec![
            ("A".to_string(), Arc::new(Bimodule::right_regular(&ctx.a))),
            ("A^2".to_string(), Arc::new(Bimodule::free_right(&ctx.a, 2))),
        ];
        let rep = adjunction_check(&ctx, &[("R".into(), r_mod)], &a_mods).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks().len(), 3);
    }

    #[test]
    fn doubled_eta_breaks_both_triangles() {
        let f = Rationals;
        let ctx = matrix_context(&f, 1);
        let bad = ctx.with_eta(ctx.eta.scale(&f.from_i64(2))).unwrap();
        assert_eq!(bad.validate().status_of("left_triangle"), Some(crate::report::Status::Fail));
        let r_mod = Arc::new(Bimodule::right_regular(&ctx.r));
        let a_mod = Arc::new(Bimodule::right_regular(&ctx.a));
        let rep = adjunction_check(&bad, &[("R".into(), r_mod)], &[("A".into(), a_mod)]).unwrap();
        assert_eq!(rep.count(crate::report::Status::Fail), 2);
        assert!(rep.failures().all(|c| c.witness.is_some()));
    }
}
