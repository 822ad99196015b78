//! Check suites run on a loaded instance.

use std::sync::Arc;
use std::time::Instant;

use clap::ValueEnum;
use galcom_core::algebra::{Algebra, Bimodule};
use galcom_core::coring::{cofree_retraction, failing_columns, regular_retraction, Comodule};
use galcom_core::firm::{
    candidate_coring, coring_from_firm_ring, dorroh, firmness, is_firm_ring, is_firmly_projective, Projectivity,
};
use galcom_core::galois::*;
use galcom_core::{Error, Field, ValidationReport, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{AnyInstance, Instance};
use crate::report::{ConfigEcho, Counterexample, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    Axioms,
    Firm,
    Dorroh,
    Context,
    Galois,
    Comonadic,
    Equivalence,
    Compare,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Axioms,
        Suite::Firm,
        Suite::Dorroh,
        Suite::Context,
        Suite::Galois,
        Suite::Comonadic,
        Suite::Equivalence,
        Suite::Compare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Firm => "firm",
            Suite::Dorroh => "dorroh",
            Suite::Context => "context",
            Suite::Galois => "galois",
            Suite::Comonadic => "comonadic",
            Suite::Equivalence => "equivalence",
            Suite::Compare => "compare",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Self::EACH.into_iter().chain([Suite::All]).find(|x| x.name() == s)
    }
}

/// Run configuration; values left unset fall back to the instance's `params`, then to defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Config {
    pub seed: Option<u64>,
    /// Target size of each test family of right modules.
    pub family_size: Option<usize>,
}

/// Number of seeded random quotients added to a family when no size is configured.
pub const DEFAULT_RANDOM_MEMBERS: usize = 5;
/// Random morphisms per instance for the naturality check.
pub const NATURALITY_SAMPLES: usize = 20;
/// Smallest family used for the adjunction check, on each side.
pub const MIN_ADJUNCTION_FAMILY: usize = 8;
/// Smallest family of right modules for the equivalence check.
pub const MIN_EQUIVALENCE_FAMILY: usize = 10;

struct Run<'a, F: Field> {
    inst: &'a Instance<F>,
    seed: u64,
    family_size: Option<usize>,
}

impl<F: Field> Run<'_, F> {
    fn family(&self, a: &Arc<Algebra<F>>, min: usize) -> TestFamily<F> {
        let base = 3 + a.dim();
        let random = match self.family_size {
            Some(n) => n.saturating_sub(base),
            None => DEFAULT_RANDOM_MEMBERS,
        };
        TestFamily::standard(a, random.max(min.saturating_sub(base)), self.seed)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }
}

/// Merges `result` under `name`; unmet hypotheses become skipped entries and other errors
/// become failures.
fn absorb(rep: &mut ValidationReport, name: &str, result: galcom_core::Result<ValidationReport>) {
    match result {
        Ok(r) => rep.merge(name, r),
        Err(e) => hypothesis_or_failure(rep, name, e),
    }
}

fn hypothesis_or_failure(rep: &mut ValidationReport, name: &str, e: Error) {
    match e {
        Error::NotFirm(_) | Error::NotUnital | Error::NotGalois { .. } | Error::PreconditionFailed(_) => {
            rep.skip(name, e.to_string())
        }
        e => rep.fail(name, e.to_string(), None),
    }
}

fn galois_of<F: Field>(inst: &Instance<F>) -> Option<&GaloisInstance<F>> {
    inst.galois.as_ref().map(|g| &g.instance)
}

fn axioms<F: Field>(inst: &Instance<F>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for (n, a) in &inst.algebras {
        rep.merge(&format!("algebra[{n}]"), a.validate());
    }
    for b in &inst.bimodules {
        rep.merge(&format!("bimodule[{}]", b.name), b.module.validate());
    }
    for m in &inst.morphisms {
        let (Ok(s), Ok(t)) = (inst.algebra(&m.source), inst.algebra(&m.target)) else {
            continue;
        };
        rep.expect_none(
            format!("morphism[{}]", m.name),
            "φ(xy) = φ(x)φ(y)",
            s.morphism_failure(t, &m.matrix).map(|(i, j)| Witness::Note(format!("basis pair ({i}, {j})"))),
        );
    }
    for c in &inst.corings {
        rep.merge(&format!("coring[{}]", c.name), c.coring.validate());
    }
    for m in &inst.comodules {
        rep.merge(&format!("comodule[{}]", m.name), m.comodule.validate());
    }
    for c in &inst.contexts {
        let name = format!("context[{}]", c.name);
        let ctx = &c.context;
        rep.expect_none(
            format!("{name}.eps_balanced"),
            "ε vanishes on the relations of Σ† ⊗_R Σ",
            failing_columns(&ctx.eps.mul(ctx.ds.proj()), &c.eps_ambient, "Σ†⊗Σ"),
        );
        let v = ctx.validate();
        let valid = v.passed();
        rep.merge(&name, v);
        if valid {
            match comatrix_coring(ctx) {
                Ok(d) => rep.merge(&format!("{name}.comatrix"), d.validate()),
                Err(e) => rep.fail(format!("{name}.comatrix"), e.to_string(), None),
            }
        }
    }
    if let Some(g) = galois_of(inst) {
        rep.merge("galois_instance", g.validate());
    }
    rep
}

/// Right modules over a ring: the declared ones, `R^n` for `n ≤ 4`, `R ⊕ M` for declared `M`,
/// and seeded cyclic quotients of `R²`.
pub fn module_family<F: Field>(
    r: &Arc<Algebra<F>>,
    declared: &[(String, Arc<Bimodule<F>>)],
    seed: u64,
) -> Vec<(String, Arc<Bimodule<F>>)> {
    let f = r.field();
    let mut out: Vec<(String, Arc<Bimodule<F>>)> = declared.to_vec();
    let reg = Bimodule::right_regular(r);
    for n in 1..=4 {
        out.push((format!("R^{n}"), Arc::new(Bimodule::free_right(r, n))));
    }
    for (name, m) in declared {
        if let Ok(sum) = reg.direct_sum(&m.forget_left()) {
            out.push((format!("R+{name}"), Arc::new(sum)));
        }
    }
    let free2 = Bimodule::free_right(r, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..3 {
        let v: Vec<F::Elem> = (0..free2.dim()).map(|_| f.random_small(&mut rng, 3)).collect();
        let span = free2.generated_submodule(&[v]);
        let gens: Vec<Vec<F::Elem>> = (0..span.rank()).map(|j| span.basis_vector(j).to_vec()).collect();
        if let Ok((q, _)) = free2.quotient(&gens) {
            out.push((format!("R^2/rand{i}"), Arc::new(q)));
        }
    }
    out
}

fn firm<F: Field>(run: &Run<F>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let Some(fe) = &run.inst.firm else {
        rep.skip("firm_ring", "no firm ring declared");
        return rep;
    };
    let r = &fe.algebra;
    let firm = match is_firm_ring(r) {
        Ok(f) => f,
        Err(e) => {
            rep.fail("firm_ring", e.to_string(), None);
            return rep;
        }
    };
    match &firm {
        Ok(_) => rep.pass("firm_ring", "R ⊗_R R -> R is invertible"),
        Err(c) => rep.fail("firm_ring", "R ⊗_R R -> R is not invertible", Some((*c).into())),
    }
    match candidate_coring(r) {
        Ok(c) => {
            let valid = c.coring.validate().passed();
            rep.record(
                "firm_iff_coring",
                valid == firm.is_ok(),
                format!("firm: {}, candidate coring valid: {valid}", firm.is_ok()),
            );
        }
        Err(e) => rep.fail("firm_iff_coring", e.to_string(), None),
    }
    let Ok(w) = firm else {
        rep.skip("ring_coring", "R is not firm");
        return rep;
    };
    let rc = match coring_from_firm_ring(r, &w) {
        Ok(rc) => rc,
        Err(e) => {
            rep.fail("ring_coring", e.to_string(), None);
            return rep;
        }
    };
    rep.merge("ring_coring", rc.coring.validate());
    for (name, m) in module_family(r, &fe.modules, run.seed) {
        let check = format!("dictionary[{name}]");
        let wm = match firmness(&m, r) {
            Ok(Ok(wm)) => wm,
            Ok(Err(c)) => {
                rep.skip(check, format!("not a firm module: M ⊗_R R -> M has {c}"));
                continue;
            }
            Err(e) => {
                rep.fail(check, e.to_string(), None);
                continue;
            }
        };
        let round = rc.firm_module_to_comodule(&wm).and_then(|c| {
            let valid = c.validate().passed();
            rc.comodule_to_firm_module(&c).map(|w2| (valid, w2))
        });
        match round {
            Ok((valid, w2)) => {
                rep.record(format!("{check}.comodule"), valid, "the coaction satisfies the comodule axioms");
                rep.record(
                    check,
                    *w2.module == *wm.module && w2.d == wm.d && w2.mu == wm.mu,
                    "comodule to firm module after firm module to comodule is the identity",
                );
            }
            Err(e) => rep.fail(check, e.to_string(), None),
        }
    }
    rep
}

fn ring_under_test<F: Field>(inst: &Instance<F>) -> Option<(String, Arc<Algebra<F>>, Vec<(String, Arc<Bimodule<F>>)>)> {
    if let Some(fe) = &inst.firm {
        return Some((fe.ring.clone(), fe.algebra.clone(), fe.modules.clone()));
    }
    galois_of(inst).map(|g| ("R".to_string(), g.r().clone(), Vec::new()))
}

fn dorroh_suite<F: Field>(run: &Run<F>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let Some((_, r, declared)) = ring_under_test(run.inst) else {
        rep.skip("dorroh", "no ring declared");
        return rep;
    };
    let d = dorroh(&r);
    rep.merge("dorroh", d.validate());
    for (name, m) in module_family(&r, &declared, run.seed) {
        match d.extend_right(&m) {
            Ok(e) => {
                let valid = e.validate();
                rep.merge(&format!("extended[{name}]"), valid);
                let back = e.restrict_right(&r, &d.inclusion).map(|b| b == *m).unwrap_or(false);
                rep.record(format!("extended[{name}].restricts"), back, "restricting along R -> R̂ recovers M");
            }
            Err(e) => rep.fail(format!("extended[{name}]"), e.to_string(), None),
        }
    }
    rep
}

fn context<F: Field>(run: &Run<F>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let f = &run.inst.field;
    for c in &run.inst.contexts {
        let name = format!("context[{}]", c.name);
        let ctx = &c.context;
        rep.merge(&name, ctx.validate());
        let fam_r = run.family(&ctx.r, MIN_ADJUNCTION_FAMILY);
        let fam_a = run.family(&ctx.a, MIN_ADJUNCTION_FAMILY);
        absorb(&mut rep, &format!("adjunction[{}]", c.name), adjunction_check(ctx, &fam_r.members, &fam_a.members));
        let corrupted = ctx.with_eta(ctx.eta.scale(&f.from_i64(2))).and_then(|bad| {
            let v = bad.validate();
            adjunction_check(&bad, &fam_r.members, &fam_a.members).map(|a| !v.passed() && !a.passed())
        });
        match corrupted {
            Ok(caught) => rep.record(format!("eta_control[{}]", c.name), caught, "the context with 2η fails its triangle identities"),
            Err(e) => rep.fail(format!("eta_control[{}]", c.name), e.to_string(), None),
        }
    }
    if run.inst.contexts.is_empty() {
        rep.skip("contexts", "no comatrix coring context declared");
    }
    let Some(g) = galois_of(run.inst) else {
        return rep;
    };
    match g.induced_embedding() {
        Ok(None) => rep.skip("firmly_projective", "the action of R is not induced by Σ ⊗_A Σ*"),
        Ok(Some((_, iota))) => match is_firmly_projective(g.sigma.carrier(), g.r(), &iota) {
            Ok(Projectivity::Firm(p)) => {
                rep.merge("firmly_projective", p.report.clone());
                let n = p.alpha.cols();
                let inverse = p.beta.mul(&p.alpha).is_identity() && p.alpha.mul(&p.beta).is_identity();
                rep.record("firmly_projective.alpha_beta_inverse", inverse, format!("α and β are mutually inverse on a space of dimension {n}"));
            }
            Ok(Projectivity::NotFirm(c)) => rep.skip("firmly_projective", format!("Σ is not firm over R: {c}")),
            Err(e) => hypothesis_or_failure(&mut rep, "firmly_projective", e),
        },
        Err(e) => rep.fail("firmly_projective", e.to_string(), None),
    }
    rep
}

fn galois<F: Field>(g: &GaloisInstance<F>, report: &mut Report) -> ValidationReport {
    let mut rep = ValidationReport::new();
    match canonical_map(g) {
        Ok(c) => {
            if c.is_galois {
                rep.pass("can_iso", "can: Σ* ⊗_R Σ -> C is an isomorphism");
            } else {
                rep.fail("can_iso", "can: Σ* ⊗_R Σ -> C is not an isomorphism", Some(c.can_rank.into()));
            }
            rep.merge("can", c.checks);
            report.verdicts.is_galois = Some(c.is_galois);
        }
        Err(e) => rep.fail("can_iso", e.to_string(), None),
    }
    rep
}

fn comonadic<F: Field>(run: &Run<F>, g: &GaloisInstance<F>, report: &mut Report) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let fam = run.family(g.a(), 0);
    let verdict = match is_comonadic_galois(g, &fam) {
        Ok(r) => {
            let comonadic = r.comonadic.unwrap_or(false);
            rep.merge("", r.checks);
            report.verdicts.is_galois = Some(r.is_galois);
            report.verdicts.comonadic = Some(comonadic);
            report.verdicts.counterexample = r.counterexample.map(|(module, c)| Counterexample {
                module,
                rank: c.rank,
                source_dim: c.source_dim,
                target_dim: c.target_dim,
            });
            comonadic
        }
        Err(e) => {
            rep.fail("can_M", e.to_string(), None);
            return rep;
        }
    };

    let mut rng = run.rng(1);
    let members = &fam.members;
    let mut bad = None;
    for _ in 0..NATURALITY_SAMPLES {
        let (i, j) = (rng.gen_range(0..members.len()), rng.gen_range(0..members.len()));
        let ok = random_morphism(&members[i].1, &members[j].1, &mut rng).and_then(|h| can_naturality(g, &members[i].1, &members[j].1, &h));
        match ok {
            Ok(true) => {}
            Ok(false) => {
                bad.get_or_insert(format!("{} -> {}", members[i].0, members[j].0));
            }
            Err(e) => {
                bad.get_or_insert(format!("{} -> {}: {e}", members[i].0, members[j].0));
            }
        }
    }
    rep.expect_none(
        "naturality",
        format!("(f ⊗ C) ∘ can_M = can_M' ∘ (Hom(Σ, f) ⊗ Σ) on {NATURALITY_SAMPLES} random morphisms"),
        bad.map(Witness::Note),
    );

    let mut rng = run.rng(2);
    for i in 0..3 {
        match Presentation::random(g.a(), 1 + i % 2, 2, &mut rng).and_then(|p| preserves_cokernel(g, &p)) {
            Ok((s, t)) => {
                rep.record(format!("cokernel[{i}].source"), s, "Hom_A(Σ, -) ⊗_R Σ preserves the cokernel");
                rep.record(format!("cokernel[{i}].target"), t, "- ⊗_A C preserves the cokernel");
            }
            Err(e) => hypothesis_or_failure(&mut rep, &format!("cokernel[{i}]"), e),
        }
    }
    for i in 0..3 {
        match Presentation::random(g.r(), 1 + i % 2, 2, &mut rng).and_then(|p| tensor_preserves_cokernel(g.sigma.carrier(), &p)) {
            Ok(ok) => rep.record(format!("tensor_cokernel[{i}]"), ok, "- ⊗_R Σ preserves the cokernel"),
            Err(e) => hypothesis_or_failure(&mut rep, &format!("tensor_cokernel[{i}]"), e),
        }
    }

    let regular = Comodule::regular(&g.coring);
    let checked = regular_retraction(&g.coring).and_then(|w| evaluation_check(g, &regular, Some(&w), verdict));
    absorb(&mut rep, "evaluation[C]", checked);
    for (name, m) in relative_injective_sources(g.a()) {
        let checked = cofree_retraction(&g.coring, &m).and_then(|(n, w)| evaluation_check(g, &n, Some(&w), verdict));
        absorb(&mut rep, &format!("evaluation[{name}⊗C]"), checked);
    }
    match comonadic_from_evaluations(g, &fam) {
        Ok((ev_verdict, r)) => {
            rep.merge("evaluations", r);
            rep.record("evaluations.agree", ev_verdict == verdict, "the verdict through ev_{M⊗C} matches the verdict through can_M");
        }
        Err(e) => hypothesis_or_failure(&mut rep, "evaluations", e),
    }
    rep
}

/// The three modules `M` whose cofree comodules `M ⊗_A C` form the relative-injective sub-corpus.
pub fn relative_injective_sources<F: Field>(a: &Arc<Algebra<F>>) -> Vec<(String, Arc<Bimodule<F>>)> {
    let fam = TestFamily::standard(a, 0, 0);
    let mut out: Vec<(String, Arc<Bimodule<F>>)> = fam.members.iter().take(2).cloned().collect();
    out.push(fam.members.get(3).cloned().unwrap_or_else(|| fam.members[2].clone()));
    out
}

fn equivalence<F: Field>(run: &Run<F>, g: &GaloisInstance<F>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let fam_r = run.family(g.r(), MIN_EQUIVALENCE_FAMILY);
    let fam_a = run.family(g.a(), MIN_EQUIVALENCE_FAMILY);
    let fam_c = match comodule_family(g, &fam_a) {
        Ok(c) => c,
        Err(e) => {
            hypothesis_or_failure(&mut rep, "equivalence", e);
            return rep;
        }
    };
    absorb(&mut rep, "equivalence", equivalence_check(g, &fam_r, &fam_c));
    if g.r().is_unital() {
        absorb(&mut rep, "unital", unital_corollary_check(g, &fam_c));
    } else {
        rep.skip("unital", "R is not unital; the local-units check applies instead");
        absorb(&mut rep, "local_units", local_units_check(g));
    }
    rep
}

fn compare<F: Field>(run: &Run<F>, g: &GaloisInstance<F>) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let fam = run.family(g.a(), 0);
    absorb(&mut rep, "agreement", galois_comonadic_agreement(g, &fam));
    match image_of_r(g) {
        Ok(s) => absorb(&mut rep, "nu[R]", galois_implies_comonadic(g, &s, &fam)),
        Err(e) => hypothesis_or_failure(&mut rep, "nu[R]", e),
    }
    match g.endomorphisms() {
        Ok(end) => {
            let full: Vec<Vec<F::Elem>> = (0..end.t.dim()).map(|i| end.t.basis_vector(i)).collect();
            absorb(&mut rep, "nu[T]", galois_implies_comonadic(g, &full, &fam));
        }
        Err(e) => hypothesis_or_failure(&mut rep, "nu[T]", e),
    }
    absorb(&mut rep, "endomorphisms", endomorphism_ring_comparison(g, &fam));
    match comonadic_context(g) {
        Ok(c) => rep.merge("reconstruction", c.report),
        Err(e) => hypothesis_or_failure(&mut rep, "reconstruction", e),
    }
    rep
}

/// Runs `suite` (every suite for [`Suite::All`]) and assembles the report.
pub fn run_suite<F: Field>(inst: &Instance<F>, suite: Suite, config: Config) -> Report {
    let start = Instant::now();
    let run = Run {
        inst,
        seed: config.seed.unwrap_or_else(|| inst.seed()),
        family_size: config.family_size.or(inst.params.family_size),
    };
    let family = galois_of(inst).map(|g| run.family(g.a(), 0).names()).unwrap_or_default();
    let echo = ConfigEcho {
        seed: run.seed,
        family_size: run.family_size,
        family,
    };
    let mut report = Report::new(&inst.name, inst.field.kind().to_string(), suite.name(), echo);
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        let rep = match (s, galois_of(inst)) {
            (Suite::Axioms, _) => axioms(inst),
            (Suite::Firm, _) => firm(&run),
            (Suite::Dorroh, _) => dorroh_suite(&run),
            (Suite::Context, _) => context(&run),
            (Suite::Galois, Some(g)) => galois(g, &mut report),
            (Suite::Comonadic, Some(g)) => comonadic(&run, g, &mut report),
            (Suite::Equivalence, Some(g)) => equivalence(&run, g),
            (Suite::Compare, Some(g)) => compare(&run, g),
            (_, None) => {
                let mut r = ValidationReport::new();
                r.skip(s.name(), "no Galois comodule declared");
                r
            }
            (Suite::All, _) => unreachable!("expanded above"),
        };
        report.add_suite(s.name(), &rep);
    }
    report.elapsed = Some(start.elapsed());
    report
}

pub fn run_any(inst: &AnyInstance, suite: Suite, config: Config) -> Report {
    match inst {
        AnyInstance::Rational(i) => run_suite(i, suite, config),
        AnyInstance::Prime(i) => run_suite(i, suite, config),
    }
}
