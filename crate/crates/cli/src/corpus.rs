//! The built-in corpus: instances with known verdicts, generic over the field.

use std::sync::Arc;

use galcom_core::algebra::{matrix_unit, Algebra, Bimodule};
use galcom_core::coring::{Comodule, Coring};
use galcom_core::exactlin::Matrix;
use galcom_core::firm::{coring_from_firm_ring, is_firm_ring};
use galcom_core::galois::{ComatrixContext, GaloisInstance};
use galcom_core::{Field, PrimeField, Rationals};

use crate::builder::DocBuilder;
use crate::format::InstanceFile;
use crate::instance::Instance;

const ALL_PASS: [(&str, &str); 8] = [
    ("axioms", "pass"),
    ("firm", "pass"),
    ("dorroh", "pass"),
    ("context", "pass"),
    ("galois", "pass"),
    ("comonadic", "pass"),
    ("equivalence", "pass"),
    ("compare", "pass"),
];

/// Upper triangular 2x2 matrices with basis `e11, e12, e22`.
pub fn upper_triangular<F: Field>(f: &F) -> Algebra<F> {
    let b = [matrix_unit(f, 2, 0, 0), matrix_unit(f, 2, 0, 1), matrix_unit(f, 2, 1, 1)];
    Algebra::from_matrix_basis(f, 2, &b).expect("upper triangular matrices form a subalgebra")
}

/// `span{e11, e12}`: firm, without a unit.
pub fn first_row<F: Field>(f: &F, n: usize) -> Algebra<F> {
    let b: Vec<Matrix<F>> = (0..n).map(|j| matrix_unit(f, n, 0, j)).collect();
    Algebra::from_matrix_basis(f, n, &b).expect("the first row is a subalgebra")
}

/// `ρ(u) = u ⊗ 1` into `Σ ⊗_A A` for the trivial coring `C = A`.
fn trivial_coaction<F: Field>(c: &Arc<Coring<F>>, sigma: Arc<Bimodule<F>>) -> Comodule<F> {
    let a = c.base();
    let f = a.field();
    let d = a.dim();
    let one = a.unit().expect("trivial corings are unital").to_vec();
    let s = sigma.dim();
    let amb = Matrix::from_fn(f, s * d, s, |row, u| if row / d == u { one[row % d].clone() } else { f.zero() });
    Comodule::from_ambient(c, sigma, &amb).expect("shape")
}

/// Adds the coring, `Σ`, the Galois section and, when `Σ` is firmly projective, its context.
pub(crate) fn add_galois<F: Field>(b: &mut DocBuilder<F>, g: &GaloisInstance<F>) -> Option<ComatrixContext<F>> {
    let coring = b.coring("C", &g.coring);
    b.bimodule("Sigma", g.sigma.carrier());
    b.comodule("Sigma", &coring, &g.sigma);
    b.galois(&coring, "Sigma");
    let ctx = g.firm_projectivity().ok().flatten().and_then(|p| ComatrixContext::from_firm_projectivity(&p).ok());
    if let Some(c) = &ctx {
        b.context("firm", c);
    }
    ctx
}

pub(crate) fn firm_with_dagger<F: Field>(b: &mut DocBuilder<F>, r: &Arc<Algebra<F>>, ctx: &Option<ComatrixContext<F>>) {
    match ctx {
        Some(c) if Arc::ptr_eq(&c.r, r) || *c.r == **r => b.firm(r, &[("firm_dagger", &c.dagger)]),
        _ => b.firm(r, &[]),
    }
}

/// Sweedler coring `A ⊗_k A` of `k ⊂ k[x]/(x²)` with `Σ = A`, `ρ(a) = 1 ⊗ a`.
pub fn sweedler_galois<F: Field>(f: &F) -> GaloisInstance<F> {
    let a = Arc::new(Algebra::truncated_polynomial(f, 2));
    let k = Arc::new(Algebra::base_field(f));
    let unit = Matrix::from_columns(f, 2, &[a.unit().expect("unital").to_vec()]);
    let c = Arc::new(Coring::sweedler(&a, &k, &unit).expect("unit map is an algebra map"));
    let one = a.unit().expect("unital").to_vec();
    // Over k the carrier is A ⊗_k A itself, with e_i ⊗ e_j at i * 2 + j.
    let amb = Matrix::from_fn(f, 2 * 4, 2, |row, j| {
        let (m, rest) = (row / 4, row % 4);
        let (i, l) = (rest / 2, rest % 2);
        if l == j {
            f.mul(&one[m], &one[i])
        } else {
            f.zero()
        }
    });
    let sigma = Comodule::from_ambient(&c, Arc::new(Bimodule::right_regular(&a)), &amb).expect("shape");
    GaloisInstance::new(c, sigma).expect("same coring")
}

pub fn sweedler<F: Field>(f: &F, name: &str) -> InstanceFile {
    let g = sweedler_galois(f);
    let mut b = DocBuilder::new(f, name, "Sweedler coring of k ⊂ k[x]/(x²) with Σ = A");
    let k = Arc::new(Algebra::base_field(f));
    b.algebra("k", &k);
    b.algebra("A", g.a());
    let unit = Matrix::from_columns(f, 2, &[g.a().unit().expect("unital").to_vec()]);
    b.morphism("unit", &k, g.a(), &unit);
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, &k, &ctx);
    b.params(7, None);
    b.expect(&ALL_PASS, Some(true), Some(true));
    b.finish()
}

/// The `n x n` matrix coring over `k` with `Σ = k^n`, `ρ(e_i) = Σ_l e_l ⊗ e_li`, repeated `copies` times.
pub fn matrix_coring_galois<F: Field>(f: &F, n: usize, copies: usize) -> GaloisInstance<F> {
    let c = Arc::new(Coring::matrix_coring(f, n));
    let amb = Matrix::from_fn(f, n * n * n, n, |row, i| {
        let (l, e) = (row / (n * n), row % (n * n));
        if e == l * n + i {
            f.one()
        } else {
            f.zero()
        }
    });
    let one = Comodule::from_ambient(&c, Arc::new(Bimodule::vector_space(f, n)), &amb).expect("shape");
    let mut sigma = one.clone();
    for _ in 1..copies {
        sigma = sigma.direct_sum(&one).expect("same coring");
    }
    GaloisInstance::new(c, sigma).expect("same coring")
}

pub fn matrix_coring<F: Field>(f: &F, name: &str, n: usize) -> InstanceFile {
    let g = matrix_coring_galois(f, n, 1);
    let mut b = DocBuilder::new(f, name, &format!("{n}x{n} matrix coring over k with Σ = k^{n}"));
    b.algebra("k", g.a());
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, g.r(), &ctx);
    b.params(11, None);
    b.expect(&ALL_PASS, Some(true), Some(true));
    b.finish()
}

/// `C = k` with `Σ = k ⊕ k` over `R = k`: `can` has rank 1 on `Σ* ⊗ Σ`, of dimension 4.
pub fn doubled_line<F: Field>(f: &F, name: &str) -> InstanceFile {
    let g = matrix_coring_galois(f, 1, 2);
    let mut b = DocBuilder::new(f, name, "C = k with Σ = k ⊕ k over R = k: can has rank 1 on 4 -> 1");
    b.algebra("k", g.a());
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, g.r(), &ctx);
    b.params(5, None);
    b.expect(
        &[
            ("axioms", "pass"),
            ("firm", "pass"),
            ("dorroh", "pass"),
            ("context", "pass"),
            ("galois", "fail"),
            ("comonadic", "fail"),
            ("equivalence", "fail"),
            ("compare", "pass"),
        ],
        Some(false),
        Some(false),
    );
    b.finish()
}

/// The trivial coring `C = A` with `Σ` an `R`-`A` bimodule and `ρ(u) = u ⊗ 1`.
pub fn trivial_galois<F: Field>(a: &Arc<Algebra<F>>, sigma: Bimodule<F>) -> GaloisInstance<F> {
    let c = Arc::new(Coring::trivial(a).expect("unital"));
    let sigma = trivial_coaction(&c, Arc::new(sigma));
    GaloisInstance::new(c, sigma).expect("same coring")
}

/// `R = M_2(k)`, `A = C = k`, `Σ = k²` column vectors.
pub fn matrix_context_galois<F: Field>(f: &F) -> GaloisInstance<F> {
    let m2 = Arc::new(Algebra::full_matrix(f, 2));
    let sigma = Bimodule::column_vectors(&m2, 2);
    let k = sigma.right_algebra().clone();
    trivial_galois(&k, sigma)
}

pub fn matrix_context<F: Field>(f: &F, name: &str) -> InstanceFile {
    let g = matrix_context_galois(f);
    let mut b = DocBuilder::new(f, name, "R = M₂(k), A = C = k, Σ = k² column vectors");
    b.algebra("k", g.a());
    b.algebra("M2", g.r());
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, g.r(), &ctx);
    b.params(3, None);
    b.expect(&ALL_PASS, Some(true), Some(true));
    b.finish()
}

pub fn trivial<F: Field>(f: &F, name: &str) -> InstanceFile {
    let k = Arc::new(Algebra::base_field(f));
    let g = trivial_galois(&k, Bimodule::regular(&k));
    let mut b = DocBuilder::new(f, name, "R = A = C = Σ = k");
    b.algebra("k", &k);
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, &k, &ctx);
    b.params(1, None);
    b.expect(&ALL_PASS, Some(true), Some(true));
    b.finish()
}

pub fn upper_triangular_trivial<F: Field>(f: &F, name: &str) -> InstanceFile {
    let a = Arc::new(upper_triangular(f));
    let g = trivial_galois(&a, Bimodule::regular(&a));
    let mut b = DocBuilder::new(f, name, "trivial coring over U₂ with Σ = R = U₂");
    b.algebra("U2", &a);
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, &a, &ctx);
    b.params(2, None);
    b.expect(&ALL_PASS, Some(true), Some(true));
    b.finish()
}

/// Trivial coring over `U₂`, `Σ = U₂`, with the diagonal subring `D₂` acting: `T = U₂` but
/// `can` has rank 3 on `U₂ ⊗_{D₂} U₂`, of dimension 4.
pub fn diagonal_in_upper_galois<F: Field>(f: &F) -> GaloisInstance<F> {
    let a = Arc::new(upper_triangular(f));
    let d2 = Arc::new(Algebra::from_matrix_basis(f, 2, &[matrix_unit(f, 2, 0, 0), matrix_unit(f, 2, 1, 1)]).expect("diagonal"));
    let reg = Bimodule::regular(&a);
    // e11 and e22 are basis elements 0 and 2 of U₂.
    let ops = vec![a.left_mult_basis(0), a.left_mult_basis(2)];
    let sigma = reg.with_left(d2, ops).expect("shape");
    trivial_galois(&a, sigma)
}

pub fn diagonal_in_upper<F: Field>(f: &F, name: &str) -> InstanceFile {
    let g = diagonal_in_upper_galois(f);
    let mut b = DocBuilder::new(f, name, "trivial coring over U₂, Σ = U₂, R = D₂ diagonal: comonadic over T = U₂ but not over R");
    b.algebra("U2", g.a());
    b.algebra("D2", g.r());
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, g.r(), &ctx);
    b.params(4, None);
    b.expect(
        &[
            ("axioms", "pass"),
            ("firm", "pass"),
            ("dorroh", "pass"),
            ("context", "pass"),
            ("galois", "fail"),
            ("comonadic", "fail"),
            ("equivalence", "fail"),
            ("compare", "pass"),
        ],
        Some(false),
        Some(false),
    );
    b.finish()
}

/// `R = span{e11, e12}` acting on `Σ = k` through `e11 ↦ 1`, `e12 ↦ 0`; `A = C = k`.
pub fn firm_nonunital_galois<F: Field>(f: &F, n: usize) -> GaloisInstance<F> {
    let r = Arc::new(first_row(f, n));
    let k = Arc::new(Algebra::base_field(f));
    let ops = (0..n).map(|j| Matrix::from_fn(f, 1, 1, |_, _| if j == 0 { f.one() } else { f.zero() })).collect();
    let sigma = Bimodule::new(r, k.clone(), 1, ops, vec![Matrix::identity(f, 1)]).expect("shape");
    trivial_galois(&k, sigma)
}

pub fn firm_nonunital<F: Field>(f: &F, name: &str, n: usize) -> InstanceFile {
    let g = firm_nonunital_galois(f, n);
    let mut b = DocBuilder::new(f, name, "firm ring without unit: the first row of M_n acting on k through e11");
    b.algebra("k", g.a());
    b.algebra("R", g.r());
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, g.r(), &ctx);
    b.params(42, None);
    b.expect(&ALL_PASS, Some(true), Some(true));
    b.finish()
}

pub fn zero_multiplication<F: Field>(f: &F, name: &str) -> InstanceFile {
    let r = Arc::new(Algebra::zero_multiplication(f, 1));
    let mut b = DocBuilder::new(f, name, "one-dimensional ring with zero multiplication: not firm");
    b.algebra("R", &r);
    let reg = Arc::new(Bimodule::regular(&r));
    b.bimodule("R_regular", &reg);
    b.firm(&r, &[("R_regular", &reg)]);
    b.params(0, None);
    b.expect(
        &[
            ("axioms", "pass"),
            ("firm", "fail"),
            ("dorroh", "pass"),
            ("context", "skipped"),
            ("galois", "skipped"),
            ("comonadic", "skipped"),
            ("equivalence", "skipped"),
            ("compare", "skipped"),
        ],
        None,
        None,
    );
    b.finish()
}

pub fn divided_power<F: Field>(f: &F, name: &str) -> InstanceFile {
    let c = Arc::new(Coring::divided_power(f));
    let g = GaloisInstance::new(c.clone(), Comodule::regular(&c)).expect("same coring");
    let mut b = DocBuilder::new(f, name, "divided power coalgebra with Σ = C over R = k: can has rank 2 on 4 -> 2");
    b.algebra("k", g.a());
    let ctx = add_galois(&mut b, &g);
    firm_with_dagger(&mut b, g.r(), &ctx);
    b.params(9, None);
    b.expect(
        &[
            ("axioms", "pass"),
            ("firm", "pass"),
            ("dorroh", "pass"),
            ("context", "pass"),
            ("galois", "fail"),
            ("comonadic", "fail"),
            ("equivalence", "fail"),
            ("compare", "pass"),
        ],
        Some(false),
        Some(false),
    );
    b.finish()
}

/// The coring `(R, d_R, ι)` of the firm ring `span{e11, e12}` over its unitalization, with the
/// comodules of the firm modules `R` and `R²`.
pub fn firm_ring_coring<F: Field>(f: &F, name: &str) -> InstanceFile {
    let r = Arc::new(first_row(f, 2));
    let w = is_firm_ring(&r).expect("shape").expect("the first row is firm");
    let rc = coring_from_firm_ring(&r, &w).expect("firm");
    let mut b = DocBuilder::new(f, name, "the firm ring span{e11, e12} as a coring over its unitalization");
    b.algebra("R", &r);
    b.algebra("R_hat", &rc.dorroh.rhat);
    b.morphism("inclusion", &r, &rc.dorroh.rhat, &rc.dorroh.inclusion);
    let coring = b.coring("C", &rc.coring);
    let mut modules = Vec::new();
    for n in 1..=2 {
        let m = Arc::new(Bimodule::free_right(&r, n));
        let wm = galcom_core::firm::firmness(&m, &r).expect("shape").expect("free modules over a firm ring are firm");
        let c = rc.firm_module_to_comodule(&wm).expect("firm");
        b.comodule(&format!("R^{n}"), &coring, &c);
        modules.push((format!("R^{n}_module"), m));
    }
    let named: Vec<(&str, &Arc<Bimodule<F>>)> = modules.iter().map(|(n, m)| (n.as_str(), m)).collect();
    b.firm(&r, &named);
    b.params(6, None);
    b.expect(
        &[
            ("axioms", "pass"),
            ("firm", "pass"),
            ("dorroh", "pass"),
            ("context", "skipped"),
            ("galois", "skipped"),
            ("comonadic", "skipped"),
            ("equivalence", "skipped"),
            ("compare", "skipped"),
        ],
        None,
        None,
    );
    b.finish()
}

/// Every corpus document, in a fixed order.
pub fn corpus() -> Vec<InstanceFile> {
    let q = Rationals;
    let f7 = PrimeField::new(7).expect("7 is prime");
    vec![
        sweedler(&q, "sweedler"),
        sweedler(&f7, "sweedler_f7"),
        matrix_coring(&q, "matrix_coring_n2", 2),
        matrix_coring(&f7, "matrix_coring_n3_f7", 3),
        matrix_context(&q, "matrix_context"),
        trivial(&f7, "trivial_f7"),
        upper_triangular_trivial(&q, "upper_triangular"),
        diagonal_in_upper(&q, "diagonal_in_upper"),
        firm_nonunital(&q, "firm_nonunital", 2),
        zero_multiplication(&q, "zero_multiplication"),
        divided_power(&f7, "divided_power_f7"),
        doubled_line(&q, "doubled_line"),
        firm_ring_coring(&q, "firm_ring_coring"),
    ]
}

/// Copies of an instance with one structure map doubled: each coring's `Δ`, each comodule's
/// `ρ`, each context's `η`. Every sibling must fail its axiom suite.
pub fn corrupted_siblings<F: Field>(inst: &Instance<F>) -> Vec<(String, Instance<F>)> {
    let two = inst.field.from_i64(2);
    let mut out = Vec::new();
    for (i, c) in inst.corings.iter().enumerate() {
        let mut bad = inst.clone();
        let broken = c.coring.with_maps(c.coring.comult().scale(&two), c.coring.counit().clone()).expect("same shape");
        bad.corings[i].coring = Arc::new(broken);
        out.push((format!("{}:2Δ[{}]", inst.name, c.name), bad));
    }
    for (i, m) in inst.comodules.iter().enumerate() {
        let mut bad = inst.clone();
        bad.comodules[i].comodule = m.comodule.with_coaction(m.comodule.coaction().scale(&two)).expect("same shape");
        out.push((format!("{}:2ρ[{}]", inst.name, m.name), bad));
    }
    for (i, c) in inst.contexts.iter().enumerate() {
        let mut bad = inst.clone();
        bad.contexts[i].context = c.context.with_eta(c.context.eta.scale(&two)).expect("same shape");
        out.push((format!("{}:2η[{}]", inst.name, c.name), bad));
    }
    out
}
