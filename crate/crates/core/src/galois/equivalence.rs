use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Algebra, Bimodule, Dual, HomSpace, Tensor};
use crate::coring::{failing_columns, hom_colinear, Comodule, Coring};
use crate::error::{Error, Result};
use crate::exactlin::{kron_apply, Matrix};
use crate::field::Field;
use crate::firm::{firmness, is_firm_ring, DualPair, RankCertificate};
use crate::report::{ValidationReport, Witness};

use super::context::Named;
use super::instance::{GaloisInstance, TestFamily};

/// `*C`, the left `A`-linear maps `C -> A` with `(φ * ψ)(c) = ψ(c₁ φ(c₂))`.
#[derive(Debug, Clone)]
pub struct LeftDual<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub hom: HomSpace<F>,
}

pub fn left_dual_ring<F: Field>(c: &Coring<F>) -> Result<LeftDual<F>> {
    let field = c.field();
    let a_reg = Arc::new(Bimodule::regular(c.base()));
    let hom = HomSpace::left_linear(c.carrier(), &a_reg)?;
    let n = hom.dim();
    let lifted = c.cc().sec().mul(c.comult());
    let action = c.carrier().right_action_map();
    let maps = hom.basis_maps();
    let mut cols = Vec::with_capacity(n * n);
    for phi in &maps {
        // c ↦ c₁ φ(c₂), then ψ.
        let inner = action.mul(&kron_apply(c.dim(), phi, 1, &lifted));
        for psi in &maps {
            let prod = psi.mul(&inner);
            cols.push(hom.coords(&prod).ok_or_else(|| {
                Error::InvariantViolation("convolution of left-linear maps is not left-linear".into())
            })?);
        }
    }
    let mult = Matrix::from_columns(field, n, &cols);
    let algebra = Algebra::new(field, n, mult, None)?.with_detected_unit();
    Ok(LeftDual {
        algebra: Arc::new(algebra),
        hom,
    })
}

/// `N ⊗_R Σ` with the coaction `N ⊗ ρ_Σ`.
pub fn tensor_comodule<F: Field>(g: &GaloisInstance<F>, n: &Arc<Bimodule<F>>) -> Result<(Tensor<F>, Comodule<F>)> {
    let ns = Tensor::new(n, g.sigma.carrier())?;
    let c = g.coring.dim();
    let rho = g.rho_ambient();
    let comodule = Comodule::with_coaction_fn(&g.coring, ns.result().clone(), |x| {
        let step = kron_apply(n.dim(), &rho, 1, ns.sec());
        x.proj().mul(&kron_apply(1, ns.proj(), c, &step))
    })?;
    Ok((ns, comodule))
}

/// Comodules for the counit and generator checks: `C`, `Σ`, `Σ ⊕ Σ`, `M ⊗_A C` for each `M`.
pub fn comodule_family<F: Field>(g: &GaloisInstance<F>, modules_a: &TestFamily<F>) -> Result<Vec<Named<Comodule<F>>>> {
    let plain = g.plain_sigma();
    let mut out = vec![
        ("C".to_string(), Comodule::regular(&g.coring)),
        ("Σ".to_string(), plain.clone()),
        ("Σ⊕Σ".to_string(), plain.direct_sum(&plain)?),
    ];
    for (name, m) in &modules_a.members {
        out.push((format!("{name}⊗C"), Comodule::cofree(&g.coring, m)?));
    }
    Ok(out)
}

/// Unit `N -> Hom^C(Σ, N ⊗_R Σ) ⊗_R R`, `n ↦ (u ↦ n' ⊗ u) ⊗ r` where `d_{N,R}(n) = n' ⊗ r`.
fn unit_map<F: Field>(g: &GaloisInstance<F>, n: &Arc<Bimodule<F>>) -> Result<std::result::Result<Matrix<F>, RankCertificate>> {
    let w = match firmness(n, g.r())? {
        Ok(w) => w,
        Err(c) => return Ok(Err(c)),
    };
    let s = g.sigma.dim();
    let (ns, fn_) = tensor_comodule(g, n)?;
    let colinear = hom_colinear(&g.sigma, &fn_)?;
    let cols = (0..n.dim())
        .map(|x| {
            let f = ns.proj().select_columns(&(x * s..(x + 1) * s).collect::<Vec<_>>());
            colinear.coords(&f).ok_or_else(|| Error::InvariantViolation("u ↦ n ⊗ u is not colinear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = Matrix::from_columns(g.field(), colinear.dim(), &cols);
    let r_reg = Arc::new(Bimodule::regular(g.r()));
    let gfn = Tensor::new(&colinear.space, &r_reg)?;
    let lifted_d = w.tensor.sec().mul(&w.d);
    Ok(Ok(gfn.proj().mul(&kron_apply(1, &phi, g.r().dim(), &lifted_d))))
}

/// Counit `(Hom^C(Σ, L) ⊗_R R) ⊗_R Σ -> L`, `(f ⊗ r) ⊗ u ↦ f(r u)`.
fn counit_map<F: Field>(g: &GaloisInstance<F>, l: &Comodule<F>) -> Result<Matrix<F>> {
    let colinear = hom_colinear(&g.sigma, l)?;
    let r_reg = Arc::new(Bimodule::regular(g.r()));
    let gl = Tensor::new(&colinear.space, &r_reg)?;
    let fgl = Tensor::new(gl.result(), g.sigma.carrier())?;
    let s = g.sigma.dim();
    let step = kron_apply(1, gl.sec(), s, fgl.sec());
    let step = kron_apply(colinear.dim(), &g.sigma.carrier().left_action_map(), 1, &step);
    Ok(colinear.evaluation_ambient().mul(&step))
}

/// `[f_1 ... f_h]: Σ^h -> L` over a basis of `Hom^C(Σ, L)`.
pub fn generator_map<F: Field>(g: &GaloisInstance<F>, l: &Comodule<F>) -> Result<Matrix<F>> {
    let colinear = hom_colinear(&g.plain_sigma(), l)?;
    let maps = colinear.basis_maps();
    let blocks: Vec<&Matrix<F>> = maps.iter().collect();
    Ok(Matrix::hstack(g.field(), l.dim(), &blocks))
}

/// `α(φ)(u) = u₀ φ(u₁)` into `End(_R Σ)` and `β(ψ)(f ⊗ u) = f(ψ(u))` composed with `can⁻¹`.
#[derive(Debug, Clone)]
pub struct DualIso<F: Field> {
    pub left_dual: LeftDual<F>,
    pub end_r: HomSpace<F>,
    /// `dim End(_RΣ) x dim *C`.
    pub alpha: Matrix<F>,
    /// `dim *C x dim End(_RΣ)`.
    pub beta: Matrix<F>,
}

pub fn dual_iso<F: Field>(g: &GaloisInstance<F>) -> Result<DualIso<F>> {
    let field = g.field();
    let dual = Dual::new(g.sigma.carrier())?;
    let can = g.can_matrix(&dual);
    let can_inv = can.inverse().ok_or_else(|| {
        let c = RankCertificate::of(&can);
        Error::NotGalois {
            rank: c.rank,
            source_dim: c.source_dim,
            target_dim: c.target_dim,
        }
    })?;
    let left_dual = left_dual_ring(&g.coring)?;
    let sigma_left = Arc::new(g.sigma.carrier().forget_right());
    let end_r = HomSpace::left_linear(&sigma_left, &sigma_left)?;
    let s = g.sigma.dim();
    let rho = g.rho_ambient();
    let right_sigma = g.sigma.carrier().right_action_map();
    let alpha_cols = left_dual
        .hom
        .basis_maps()
        .iter()
        .map(|phi| {
            let a = right_sigma.mul(&kron_apply(s, phi, 1, &rho));
            end_r.coords(&a).ok_or_else(|| Error::InvariantViolation("α(φ) is not left R-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = Matrix::from_columns(field, end_r.dim(), &alpha_cols);
    let ev = dual.hom.evaluation_ambient();
    let beta_cols = end_r
        .basis_maps()
        .iter()
        .map(|psi| {
            let b = ev.mul(&kron_apply(dual.dim(), psi, 1, dual.pairing.sec())).mul(&can_inv);
            left_dual.hom.coords(&b).ok_or_else(|| Error::InvariantViolation("β(ψ) is not left A-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let beta = Matrix::from_columns(field, left_dual.hom.dim(), &beta_cols);
    Ok(DualIso {
        left_dual,
        end_r,
        alpha,
        beta,
    })
}

impl<F: Field> DualIso<F> {
    /// `α(φ_i * φ_j) = α(φ_j) ∘ α(φ_i)` on every pair of basis maps.
    pub fn anti_multiplicativity_failure(&self) -> Option<(usize, usize)> {
        let n = self.left_dual.hom.dim();
        let alpha_of = |v: &[F::Elem]| self.end_r.combine(&self.alpha.mul_vec(v));
        for i in 0..n {
            for j in 0..n {
                let lhs = alpha_of(&self.left_dual.algebra.product(i, j));
                let rhs = alpha_of(&self.left_dual.algebra.basis_vector(j)).mul(&alpha_of(&self.left_dual.algebra.basis_vector(i)));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn record_iso<F: Field>(rep: &mut ValidationReport, name: String, detail: &str, m: &Matrix<F>) {
    if m.is_isomorphism() {
        rep.pass(name, detail);
    } else {
        let c = RankCertificate::of(m);
        rep.fail(name, format!("{detail} fails"), Some(c.into()));
    }
}

/// Unit and counit of `(- ⊗_R Σ, Hom^C(Σ, -) ⊗_R R)` on the families, then, when all are
/// isomorphisms, `can` invertible, `*C ≅ End(_RΣ)` and `Σ` generating every comodule.
pub fn equivalence_check<F: Field>(
    g: &GaloisInstance<F>,
    family_r: &TestFamily<F>,
    family_c: &[Named<Comodule<F>>],
) -> Result<ValidationReport> {
    if let Err(c) = is_firm_ring(g.r())? {
        return Err(Error::NotFirm(format!("R ⊗_R R -> R has {c}")));
    }
    let mut rep = ValidationReport::new();
    rep.pass("flatness", "C is flat over A: every module over a field is flat");
    let units: Vec<Result<std::result::Result<Matrix<F>, RankCertificate>>> =
        family_r.members.par_iter().map(|(_, n)| unit_map(g, n)).collect();
    for ((name, _), u) in family_r.members.iter().zip(units) {
        match u? {
            Ok(m) => record_iso(&mut rep, format!("unit[{name}]"), "N -> GF(N) is an isomorphism", &m),
            Err(c) => rep.skip(format!("unit[{name}]"), format!("{name} is not firm over R ({c})")),
        }
    }
    let counits: Vec<Result<Matrix<F>>> = family_c.par_iter().map(|(_, l)| counit_map(g, l)).collect();
    for ((name, _), c) in family_c.iter().zip(counits) {
        record_iso(&mut rep, format!("counit[{name}]"), "FG(L) -> L is an isomorphism", &c?);
    }
    if !rep.passed() {
        rep.skip("consequences", "the unit or counit is not an isomorphism on the families");
        return Ok(rep);
    }
    let dual = Dual::new(g.sigma.carrier())?;
    record_iso(&mut rep, "can_iso".into(), "can: Σ* ⊗_R Σ -> C is an isomorphism", &g.can_matrix(&dual));
    match dual_iso(g) {
        Ok(d) => {
            let ab = d.alpha.mul(&d.beta);
            let ba = d.beta.mul(&d.alpha);
            rep.expect_none(
                "alpha_beta",
                "α ∘ β = id on End(_RΣ)",
                failing_columns(&ab, &Matrix::identity(g.field(), ab.rows()), "End(_RΣ)"),
            );
            rep.expect_none(
                "beta_alpha",
                "β ∘ α = id on *C",
                failing_columns(&ba, &Matrix::identity(g.field(), ba.rows()), "*C"),
            );
            rep.expect_none(
                "alpha_multiplicative",
                "α(φ * ψ) = α(ψ) ∘ α(φ)",
                d.anti_multiplicativity_failure().map(|(i, j)| Witness::Triple(i, j, 0)),
            );
        }
        Err(e) => rep.fail("dual_iso", e.to_string(), None),
    }
    for (name, l) in family_c {
        let p = generator_map(g, l)?;
        let rank = p.rank();
        if rank == l.dim() {
            rep.pass(format!("generates[{name}]"), format!("Σ^{} -> L is onto", p.cols() / g.sigma.dim().max(1)));
        } else {
            rep.fail(
                format!("generates[{name}]"),
                "no epimorphism from a sum of copies of Σ",
                Some(Witness::rank(rank, p.cols(), p.rows())),
            );
        }
    }
    Ok(rep)
}

/// `Σ` is finitely generated projective over `A` when `id_Σ` lies in the image of
/// `Σ ⊗_A Σ* -> End_A(Σ)`; returns the dual basis pairs `(e_i, f_i)` on success.
pub fn dual_basis<F: Field>(sigma: &Arc<Bimodule<F>>) -> Result<Option<Vec<(Vec<F::Elem>, Matrix<F>)>>> {
    let field = sigma.field();
    let dual = Dual::new(sigma)?;
    let z = DualPair::from_dual(sigma, &dual).elementary_ring()?;
    let s = sigma.dim();
    let flat: Vec<Vec<F::Elem>> = z.sigma_ops.iter().map(|m| m.as_flat().to_vec()).collect();
    let sys = Matrix::from_columns(field, s * s, &flat);
    let Some(coeffs) = sys.solve_vec(Matrix::identity(field, s).as_flat()) else {
        return Ok(None);
    };
    let lifted = z.tensor.sec().mul_vec(&coeffs);
    let n = dual.dim();
    let pairs = (0..s)
        .filter_map(|i| {
            let c = &lifted[i * n..(i + 1) * n];
            if c.iter().all(|x| field.is_zero(x)) {
                return None;
            }
            let mut e = vec![field.zero(); s];
            e[i] = field.one();
            Some((e, dual.hom.combine(c)))
        })
        .collect();
    Ok(Some(pairs))
}

/// `u ↦ Σ_i e_i f_i(u)` for dual basis pairs.
pub fn dual_basis_composite<F: Field>(sigma: &Bimodule<F>, pairs: &[(Vec<F::Elem>, Matrix<F>)]) -> Matrix<F> {
    let field = sigma.field();
    let s = sigma.dim();
    let mut out = Matrix::zeros(field, s, s);
    for (e, f) in pairs {
        let cols: Vec<Vec<F::Elem>> = (0..s).map(|u| sigma.right_op(&f.column(u)).mul_vec(e)).collect();
        out = out.add(&Matrix::from_columns(field, s, &cols));
    }
    out
}

/// Unital case: `Σ` finitely generated projective over `A` through an explicit dual basis,
/// `ȷ: R -> End^C(Σ)` an algebra isomorphism, and `Σ` projective relative to the generator
/// epimorphisms of the comodule family.
pub fn unital_corollary_check<F: Field>(g: &GaloisInstance<F>, family_c: &[Named<Comodule<F>>]) -> Result<ValidationReport> {
    if !g.r().is_unital() {
        return Err(Error::NotUnital);
    }
    let mut rep = ValidationReport::new();
    let field = g.field();
    match dual_basis(g.sigma.carrier())? {
        Some(pairs) => {
            let composite = dual_basis_composite(g.sigma.carrier(), &pairs);
            rep.expect_none(
                "dual_basis",
                format!("Σ_i e_i f_i(u) = u with {} pairs", pairs.len()),
                failing_columns(&composite, &Matrix::identity(field, g.sigma.dim()), "Σ"),
            );
        }
        None => rep.fail("dual_basis", "id_Σ is not in the image of Σ ⊗_A Σ*", None),
    }
    let end = g.endomorphisms()?;
    record_iso(&mut rep, "jmath_iso".into(), "ȷ: R -> End^C(Σ) is bijective", &end.jmath);
    rep.expect_none(
        "jmath_multiplicative",
        "ȷ(r r') = ȷ(r) ∘ ȷ(r')",
        g.r().morphism_failure(&end.t, &end.jmath).map(|(i, j)| Witness::Triple(i, j, 0)),
    );
    let unit_ok = g.r().unit().map(|u| end.jmath.mul_vec(u)) == end.t.find_unit();
    rep.record("jmath_unital", unit_ok, "ȷ(1) = id_Σ");
    let plain = g.plain_sigma();
    for (name, l) in family_c {
        if l.dim() == 0 {
            rep.pass(format!("lifting[{name}]"), "L = 0");
            continue;
        }
        let p = generator_map(g, l)?;
        if p.rank() != l.dim() {
            rep.skip(format!("lifting[{name}]"), "Σ does not map onto L");
            continue;
        }
        let copies = p.cols() / g.sigma.dim().max(1);
        let mut cover = plain.clone();
        for _ in 1..copies {
            cover = cover.direct_sum(&plain)?;
        }
        let to_cover = hom_colinear(&plain, &cover)?;
        let to_l = hom_colinear(&plain, l)?;
        let pushed: Vec<Vec<F::Elem>> = to_cover
            .basis_maps()
            .iter()
            .map(|h| to_l.coords(&p.mul(h)).expect("composite of colinear maps is colinear"))
            .collect();
        let sys = Matrix::from_columns(field, to_l.dim(), &pushed);
        let lifts = sys.rank() == to_l.dim();
        rep.record(format!("lifting[{name}]"), lifts, "every Σ -> L lifts through Σ^h -> L");
    }
    Ok(rep)
}

/// Finite surrogate for local units: an element acting as the identity on `R` from the left
/// and from the right, and on `Σ`, with `Σ` finitely generated projective over `A`.
///
/// Without such an element the hypothesis is unmet and the check is skipped.
pub fn local_units_check<F: Field>(g: &GaloisInstance<F>) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    let field = g.field();
    let r = g.r();
    let n = r.dim();
    let solve_unit = |ops: Vec<Matrix<F>>, dim: usize| {
        let flat: Vec<Vec<F::Elem>> = ops.iter().map(|m| m.as_flat().to_vec()).collect();
        Matrix::from_columns(field, dim * dim, &flat).solve_vec(Matrix::identity(field, dim).as_flat())
    };
    let left = solve_unit((0..n).map(|i| r.left_mult_basis(i)).collect(), n);
    let right = solve_unit((0..n).map(|i| r.right_mult_basis(i)).collect(), n);
    if left.is_none() || right.is_none() {
        let side = if left.is_none() { "e x = x" } else { "x e = x" };
        rep.skip("local_units", format!("R has no local units: no e ∈ R has {side} for every x ∈ R"));
        return Ok(rep);
    }
    rep.pass("local_units", "some e ∈ R has e x = x e = x for every x ∈ R");
    let on_sigma = solve_unit(g.sigma.carrier().left_ops().to_vec(), g.sigma.dim());
    rep.record("sigma_unitized", on_sigma.is_some(), "some e ∈ R acts as the identity on Σ");
    rep.record("sigma_projective", dual_basis(g.sigma.carrier())?.is_some(), "e Σ = Σ is finitely generated projective over A");
    Ok(rep)
}
