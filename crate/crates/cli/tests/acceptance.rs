//! End-to-end acceptance criteria, one printed verdict line per criterion.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use galcom_cli::corpus::{corpus, corrupted_siblings, diagonal_in_upper_galois, matrix_context_galois, matrix_coring_galois, sweedler_galois};
use galcom_cli::generate::{generate, random_ring, GenParams, Kind};
use galcom_cli::suites::{module_family, relative_injective_sources};
use galcom_cli::{load, run_any, run_suite, AnyInstance, Config, Instance, Suite};
use galcom_core::algebra::{Algebra, Bimodule, Tensor};
use galcom_core::coring::{cofree_retraction, regular_retraction, Comodule};
use galcom_core::exactlin::Matrix;
use galcom_core::firm::{candidate_coring, coring_from_firm_ring, firmness, is_firm_ring, left_firmness};
use galcom_core::galois::{
    adjunction_check, canonical_map, comodule_family, comonadic_context, dual_basis, dual_basis_composite, equivalence_check, evaluation,
    galois_comonadic_agreement, galois_implies_comonadic, image_of_r, intermediate_instance, is_comonadic_galois, unital_corollary_check,
    GaloisInstance, TestFamily,
};
use galcom_core::{Field, PrimeField, Rationals, Status, ValidationReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Wall-clock budget for the axiom suites over the corpus and its corrupted siblings.
const AXIOM_BUDGET: Duration = Duration::from_secs(5);
/// Wall-clock budget for the Galois and comonadic verdicts on the flagship instances.
const FLAGSHIP_BUDGET: Duration = Duration::from_secs(10);
const MIN_CORPUS: usize = 12;
const MIN_RANDOM_RINGS: usize = 20;
const MAX_RING_DIM: usize = 6;
const MIN_FIRM_MODULES: usize = 5;
const MIN_ADJUNCTION_FAMILY: usize = 8;
const MIN_EQUIVALENCE_FAMILY: usize = 10;
const SEED: u64 = 2024;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

/// Runs `$body` with `$i` bound to the typed instance, whichever field it is over.
macro_rules! typed {
    ($inst:expr, |$i:ident| $body:expr) => {
        match $inst {
            AnyInstance::Rational($i) => $body,
            AnyInstance::Prime($i) => $body,
        }
    };
}

fn corpus_instances() -> Vec<AnyInstance> {
    corpus().iter().map(|d| load(d).expect("corpus documents load")).collect()
}

fn galois_of<F: Field>(i: &Instance<F>) -> Option<&GaloisInstance<F>> {
    i.galois.as_ref().map(|g| &g.instance)
}

fn family_of_size<F: Field>(a: &Arc<Algebra<F>>, min: usize) -> TestFamily<F> {
    TestFamily::standard(a, min.saturating_sub(3 + a.dim()), SEED)
}

/// Nonzero modules `N ⊗_R R` for `N` in a standard family; these are firm whenever `R` is.
fn firm_family<F: Field>(r: &Arc<Algebra<F>>, min: usize) -> Vec<(String, Arc<Bimodule<F>>)> {
    let reg = Arc::new(Bimodule::regular(r));
    let mut random = 0;
    loop {
        let members: Vec<(String, Arc<Bimodule<F>>)> = TestFamily::standard(r, random, SEED)
            .members
            .iter()
            .filter_map(|(name, n)| {
                let t = Tensor::new(n, &reg).expect("N ⊗_R R builds");
                (t.dim() > 0).then(|| (format!("{name}⊗R"), t.result().clone()))
            })
            .collect();
        if members.len() >= min {
            return members;
        }
        random += min - members.len();
    }
}

fn status_is(rep: &ValidationReport, name: &str, status: Status) -> bool {
    rep.status_of(name) == Some(status)
}

// Naive oracle: plain Gaussian elimination on vectors, kept apart from the library's quotients.

/// Row-reduces `rows` in place and returns the pivot columns.
fn naive_reduce<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !f.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&factor, &rows[r][j]);
                    rows[i][j] = f.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn naive_rank<F: Field>(f: &F, vectors: &[Vec<F::Elem>]) -> usize {
    let mut rows = vectors.to_vec();
    naive_reduce(f, &mut rows).len()
}

/// Kernel basis of the map whose rows are `eqs`, one vector per free column, with a 1 in
/// that column and zeros in the other free columns.
fn naive_kernel<F: Field>(f: &F, eqs: &[Vec<F::Elem>], n: usize) -> Vec<Vec<F::Elem>> {
    let mut rows = eqs.to_vec();
    let pivots = naive_reduce(f, &mut rows);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = f.neg(&row[free]);
            }
            v
        })
        .collect()
}

fn entries<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect()
}

fn apply<F: Field>(f: &F, m: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
        .collect()
}

/// Rank, source dimension and target dimension of `can_M` recomputed from raw structure
/// matrices: `Hom_A(Σ, M)` as a kernel, `Hom ⊗_R Σ` and `M ⊗_A C` as quotients of the plain
/// tensor products by their balancing relations.
fn naive_can_m<F: Field>(g: &GaloisInstance<F>, m: &Bimodule<F>) -> (usize, usize, usize) {
    let f = g.field();
    let sigma = g.sigma.carrier();
    let c = g.coring.carrier();
    let (s, dm, dc) = (sigma.dim(), m.dim(), c.dim());
    let sigma_right: Vec<_> = sigma.right_ops().iter().map(entries).collect();
    let sigma_left: Vec<_> = sigma.left_ops().iter().map(entries).collect();
    let m_right: Vec<_> = m.right_ops().iter().map(entries).collect();
    let c_left: Vec<_> = c.left_ops().iter().map(entries).collect();

    // Unknown φ with entry (i, j) at i * s + j; φ ∘ R_Σ(a) = R_M(a) ∘ φ for every basis a.
    let mut eqs = Vec::new();
    for (ra, ma) in sigma_right.iter().zip(&m_right) {
        for i in 0..dm {
            for j in 0..s {
                let mut row = vec![f.zero(); dm * s];
                for k in 0..s {
                    row[i * s + k] = f.add(&row[i * s + k], &ra[k][j]);
                }
                for k in 0..dm {
                    row[k * s + j] = f.sub(&row[k * s + j], &ma[i][k]);
                }
                eqs.push(row);
            }
        }
    }
    let homs: Vec<Vec<Vec<F::Elem>>> = naive_kernel(f, &eqs, dm * s)
        .into_iter()
        .map(|v| v.chunks(s).map(|r| r.to_vec()).collect())
        .collect();

    // Σ ⊗_k C with index v * dc + c; ρ lifted along any section of the quotient.
    let rho = entries(&g.sigma.mc().sec().mul(g.sigma.coaction()));

    // Source: span of φ ⊗ u modulo (φ ∘ L(r)) ⊗ u - φ ⊗ L(r) u, written in full matrices
    // so no coordinates in the kernel basis are needed.
    let flat = |phi: &[Vec<F::Elem>], u: &[F::Elem]| -> Vec<F::Elem> {
        let mut out = Vec::with_capacity(dm * s * s);
        for row in phi {
            for x in row {
                out.extend(u.iter().map(|y| f.mul(x, y)));
            }
        }
        out
    };
    let unit = |n: usize, i: usize| -> Vec<F::Elem> { (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect() };
    let mut spanning = Vec::new();
    for phi in &homs {
        for u in 0..s {
            spanning.push(flat(phi, &unit(s, u)));
        }
    }
    let mut rel1 = Vec::new();
    for phi in &homs {
        for l in &sigma_left {
            let phi_l: Vec<Vec<F::Elem>> = (0..dm)
                .map(|i| (0..s).map(|j| (0..s).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&phi[i][k], &l[k][j])))).collect())
                .collect();
            for u in 0..s {
                let lu = apply(f, l, &unit(s, u));
                let a = flat(&phi_l, &unit(s, u));
                let b = flat(phi, &lu);
                rel1.push(a.iter().zip(&b).map(|(x, y)| f.sub(x, y)).collect());
            }
        }
    }
    let source_dim = naive_rank(f, &spanning) - naive_rank(f, &rel1);

    // Target: M ⊗_k C with index m * dc + c, modulo m a ⊗ c - m ⊗ a c.
    let mut rel2 = Vec::new();
    for (ma, ca) in m_right.iter().zip(&c_left) {
        for x in 0..dm {
            for y in 0..dc {
                let mut v = vec![f.zero(); dm * dc];
                for i in 0..dm {
                    v[i * dc + y] = f.add(&v[i * dc + y], &ma[i][x]);
                }
                for j in 0..dc {
                    v[x * dc + j] = f.sub(&v[x * dc + j], &ca[j][y]);
                }
                rel2.push(v);
            }
        }
    }
    let rel2_rank = naive_rank(f, &rel2);
    let target_dim = dm * dc - rel2_rank;

    // can(φ ⊗ u) = Σ ρ[(v, c), u] φ(e_v) ⊗ e_c.
    let mut images = rel2.clone();
    for phi in &homs {
        for u in 0..s {
            let mut v = vec![f.zero(); dm * dc];
            for w in 0..s {
                for cc in 0..dc {
                    let coeff = &rho[w * dc + cc][u];
                    if f.is_zero(coeff) {
                        continue;
                    }
                    for i in 0..dm {
                        let t = f.mul(coeff, &phi[i][w]);
                        v[i * dc + cc] = f.add(&v[i * dc + cc], &t);
                    }
                }
            }
            images.push(v);
        }
    }
    let rank = naive_rank(f, &images) - rel2_rank;
    (rank, source_dim, target_dim)
}

// Criteria.

fn axiom_suites(instances: &[AnyInstance]) -> Outcome {
    let start = Instant::now();
    let mut failing = Vec::new();
    let (mut siblings, mut caught) = (0, 0);
    for inst in instances {
        if !run_any(inst, Suite::Axioms, Config::default()).passed() {
            failing.push(inst.name().to_string());
        }
        let (n, c) = typed!(inst, |i| {
            let sibs = corrupted_siblings(i);
            let caught = sibs
                .iter()
                .filter(|(_, s)| {
                    let r = run_suite(s, Suite::Axioms, Config::default());
                    !r.passed() && r.failures().any(|e| e.witness.is_some())
                })
                .count();
            (sibs.len(), caught)
        });
        siblings += n;
        caught += c;
    }
    let elapsed = start.elapsed();
    Outcome::new(
        "axiom suites",
        failing.is_empty() && instances.len() >= MIN_CORPUS && siblings > 0 && caught == siblings && elapsed < AXIOM_BUDGET,
        format!(
            "{} instances, failing {failing:?}; {caught}/{siblings} corrupted siblings fail with a witness; {:.2} s (budget {} s)",
            instances.len(),
            elapsed.as_secs_f64(),
            AXIOM_BUDGET.as_secs()
        ),
    )
}

fn firm_iff_coring_on<F: Field>(f: &F, seeds: std::ops::Range<u64>, tally: &mut (usize, usize, usize, Vec<String>)) {
    for seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = Arc::new(random_ring(f, &mut rng, MAX_RING_DIM));
        let firm = is_firm_ring(&r).expect("is_firm_ring runs");
        let candidate = candidate_coring(&r).expect("candidate coring builds").coring.validate().passed();
        let built = match &firm {
            Ok(w) => coring_from_firm_ring(&r, w).map(|rc| rc.coring.validate().passed()).unwrap_or(false),
            Err(_) => false,
        };
        let agree = firm.is_ok() == candidate && firm.is_ok() == built && r.dim() <= MAX_RING_DIM;
        tally.0 += 1;
        if firm.is_ok() {
            tally.1 += 1;
        } else {
            tally.2 += 1;
        }
        if !agree {
            tally.3.push(format!("{} seed {seed}", f.kind()));
        }
    }
}

fn firm_ring_iff_coring() -> Outcome {
    let mut tally = (0, 0, 0, Vec::new());
    firm_iff_coring_on(&Rationals, 0..12, &mut tally);
    firm_iff_coring_on(&PrimeField::new(7).unwrap(), 0..12, &mut tally);
    let (n, firm, not_firm, bad) = tally;
    Outcome::new(
        "firm ring iff ring coring",
        n >= MIN_RANDOM_RINGS && firm > 0 && not_firm > 0 && bad.is_empty(),
        format!("{n} rings over Q and F7 (dim ≤ {MAX_RING_DIM}): {firm} firm, {not_firm} not firm, disagreements {bad:?}"),
    )
}

fn dictionary_on<F: Field>(i: &Instance<F>, out: &mut Vec<String>, bad: &mut Vec<String>) {
    let Some(fe) = &i.firm else { return };
    let Ok(Ok(w)) = is_firm_ring(&fe.algebra) else { return };
    let rc = coring_from_firm_ring(&fe.algebra, &w).expect("firm rings give corings");
    let mut count = 0;
    for (name, m) in module_family(&fe.algebra, &fe.modules, SEED) {
        let Ok(Ok(wm)) = firmness(&m, &fe.algebra) else { continue };
        count += 1;
        let back = rc.firm_module_to_comodule(&wm).and_then(|c| rc.comodule_to_firm_module(&c));
        let same = back.map(|b| *b.module == *wm.module && b.mu == wm.mu && b.d == wm.d).unwrap_or(false);
        if !same {
            bad.push(format!("{}:{name}", i.name));
        }
    }
    if count < MIN_FIRM_MODULES {
        bad.push(format!("{}: only {count} firm modules", i.name));
    }
    out.push(format!("{}({count})", i.name));
}

fn firm_module_dictionary(instances: &[AnyInstance]) -> Outcome {
    let (mut rings, mut bad) = (Vec::new(), Vec::new());
    for inst in instances {
        typed!(inst, |i| dictionary_on(i, &mut rings, &mut bad));
    }
    Outcome::new(
        "firm module dictionary",
        !rings.is_empty() && bad.is_empty(),
        format!("round trip exact on rings(firm modules) {rings:?}; failures {bad:?}"),
    )
}

fn projectivity_on<F: Field>(i: &Instance<F>, certified: &mut Vec<String>, bad: &mut Vec<String>) {
    let Some(g) = galois_of(i) else { return };
    let Some(p) = g.firm_projectivity().expect("firm projectivity runs") else { return };
    let inverse = p.alpha.mul(&p.beta).is_identity() && p.beta.mul(&p.alpha).is_identity();
    let d_maps = ["z_mu_d", "z_d_mu", "sigma_over_z_mu_d", "sigma_over_z_d_mu"]
        .iter()
        .all(|n| status_is(&p.report, n, Status::Pass));
    // Second route: decide firmness of Z and of Σ over Z by rank, without the d maps.
    let sigma_z = Arc::new(g.sigma.carrier().with_left(p.z.z.clone(), p.z.sigma_ops.clone()).expect("Σ is a Z-module"));
    let by_rank = is_firm_ring(&p.z.z).map(|c| c.is_ok()).unwrap_or(false)
        && left_firmness(&sigma_z, &p.z.z).map(|c| c.is_ok()).unwrap_or(false);
    if inverse && d_maps && by_rank && p.report.passed() {
        certified.push(i.name.clone());
    } else {
        bad.push(format!("{} (α∘β inverse {inverse}, d maps {d_maps}, rank route {by_rank})", i.name));
    }
}

fn firm_projectivity(instances: &[AnyInstance]) -> Outcome {
    let (mut ok, mut bad) = (Vec::new(), Vec::new());
    for inst in instances {
        typed!(inst, |i| projectivity_on(i, &mut ok, &mut bad));
    }
    Outcome::new(
        "firm projectivity",
        !ok.is_empty() && bad.is_empty(),
        format!("certified {ok:?}; failures {bad:?}"),
    )
}

fn adjunction_on<F: Field>(i: &Instance<F>, summary: &mut Vec<String>, bad: &mut Vec<String>) {
    for c in &i.contexts {
        let ctx = &c.context;
        let fam_r = firm_family(&ctx.r, MIN_ADJUNCTION_FAMILY);
        let fam_a = family_of_size(&ctx.a, MIN_ADJUNCTION_FAMILY);
        let rep = adjunction_check(ctx, &fam_r, &fam_a.members).expect("adjunction check runs");
        let count = |prefix: &str| rep.checks().iter().filter(|o| o.name.starts_with(prefix) && o.status == Status::Pass).count();
        let (tf, tg) = (count("triangle_F"), count("triangle_G"));
        let bad_eta = ctx.with_eta(ctx.eta.scale(&i.field.from_i64(2))).expect("2η has the right shape");
        let control = !adjunction_check(&bad_eta, &fam_r, &fam_a.members).expect("adjunction check runs").passed();
        let ok = rep.passed() && tf >= MIN_ADJUNCTION_FAMILY && tg >= MIN_ADJUNCTION_FAMILY && control;
        summary.push(format!("{}[{}]: {tf}+{tg} triangles, 2η caught {control}", i.name, c.name));
        if !ok {
            bad.push(format!("{}[{}]", i.name, c.name));
        }
    }
}

fn adjunction(instances: &[AnyInstance]) -> Outcome {
    let (mut summary, mut bad) = (Vec::new(), Vec::new());
    for inst in instances {
        typed!(inst, |i| adjunction_on(i, &mut summary, &mut bad));
    }
    Outcome::new(
        "adjunction triangles",
        !summary.is_empty() && bad.is_empty(),
        format!("{}; failures {bad:?}", summary.join("; ")),
    )
}

fn flagships_over<F: Field>(f: &F) -> Vec<(String, GaloisInstance<F>)> {
    let field = f.kind().to_string();
    vec![
        (format!("sweedler/{field}"), sweedler_galois(f)),
        (format!("matrix_coring_n2/{field}"), matrix_coring_galois(f, 2, 1)),
        (format!("matrix_coring_n3/{field}"), matrix_coring_galois(f, 3, 1)),
    ]
}

/// Core verdicts, then the naive oracle on `A` and every family member.
fn flagship_on<F: Field>(name: &str, g: &GaloisInstance<F>, core_time: &mut Duration, bad: &mut Vec<String>) -> usize {
    let fam = TestFamily::standard(g.a(), 3, SEED);
    let start = Instant::now();
    let can = canonical_map(g).expect("canonical map runs");
    let comonadic = is_comonadic_galois(g, &fam).expect("comonadic check runs");
    *core_time += start.elapsed();
    if !(can.is_galois && comonadic.comonadic == Some(true)) {
        bad.push(format!("{name}: is_galois {} comonadic {:?}", can.is_galois, comonadic.comonadic));
    }
    oracle_agrees(name, g, &fam, can.can_rank, can.is_galois, bad)
}

/// Compares `can` and every `can_M` with the naive recomputation; returns the number compared.
fn oracle_agrees<F: Field>(
    name: &str,
    g: &GaloisInstance<F>,
    fam: &TestFamily<F>,
    cert: galcom_core::firm::RankCertificate,
    is_galois: bool,
    bad: &mut Vec<String>,
) -> usize {
    let a = Arc::new(Bimodule::right_regular(g.a()));
    let (rank, src, tgt) = naive_can_m(g, &a);
    if (rank, src, tgt) != (cert.rank, cert.source_dim, cert.target_dim) || (rank == src && rank == tgt) != is_galois {
        bad.push(format!("{name}: can rank {rank} {src}->{tgt} vs {cert}"));
    }
    let mut compared = 1;
    for (m_name, m) in &fam.members {
        let core = g.can_m(m).expect("can_M builds");
        let core_rank = (core.matrix.rank(), core.source.dim(), core.target.dim());
        let naive = naive_can_m(g, m);
        let core_iso = core.matrix.is_isomorphism();
        let naive_iso = naive.0 == naive.1 && naive.0 == naive.2;
        if core_rank != naive || core_iso != naive_iso {
            bad.push(format!("{name}: can_{m_name} core {core_rank:?} naive {naive:?}"));
        }
        compared += 1;
    }
    compared
}

fn galois_flagships() -> Outcome {
    let mut core_time = Duration::ZERO;
    let mut bad = Vec::new();
    let mut compared = 0;
    let mut names = Vec::new();
    for (name, g) in flagships_over(&Rationals) {
        compared += flagship_on(&name, &g, &mut core_time, &mut bad);
        names.push(name);
    }
    for (name, g) in flagships_over(&PrimeField::new(7).unwrap()) {
        compared += flagship_on(&name, &g, &mut core_time, &mut bad);
        names.push(name);
    }
    // Control: the oracle must also reproduce a non-isomorphic canonical map.
    let control = diagonal_in_upper_galois(&Rationals);
    let can = canonical_map(&control).expect("canonical map runs");
    let fam = TestFamily::standard(control.a(), 3, SEED);
    compared += oracle_agrees("diagonal_in_upper", &control, &fam, can.can_rank, can.is_galois, &mut bad);
    if can.is_galois {
        bad.push("diagonal_in_upper control is Galois".into());
    }
    Outcome::new(
        "galois flagships",
        bad.is_empty() && core_time < FLAGSHIP_BUDGET,
        format!(
            "{} instances Galois and comonadic; {compared} can_M ranks match the naive oracle, including a non-Galois control; {:.2} s (budget {} s); failures {bad:?}",
            names.len(),
            core_time.as_secs_f64(),
            FLAGSHIP_BUDGET.as_secs()
        ),
    )
}

fn evaluations_on<F: Field>(i: &Instance<F>, checked: &mut Vec<String>, bad: &mut Vec<String>) {
    let Some(g) = galois_of(i) else { return };
    let fam = TestFamily::standard(g.a(), 2, SEED);
    if is_comonadic_galois(g, &fam).expect("comonadic check runs").comonadic != Some(true) {
        return;
    }
    let mut injectives = Vec::new();
    let regular = Comodule::regular(&g.coring);
    let w = regular_retraction(&g.coring).expect("C has a retraction");
    injectives.push(("C".to_string(), regular, w));
    for (name, m) in relative_injective_sources(g.a()) {
        let (n, w) = cofree_retraction(&g.coring, &m).expect("cofree comodules have retractions");
        injectives.push((format!("{name}⊗C"), n, w));
    }
    let mut n_ok = 0;
    for (name, n, w) in &injectives {
        let ok = w.verify(n) && evaluation(g, n).map(|e| e.matrix.is_isomorphism()).unwrap_or(false);
        if ok {
            n_ok += 1;
        } else {
            bad.push(format!("{}:{name}", i.name));
        }
    }
    checked.push(format!("{}({n_ok})", i.name));
}

fn contractible_evaluations(instances: &[AnyInstance]) -> Outcome {
    let (mut checked, mut bad) = (Vec::new(), Vec::new());
    for inst in instances {
        typed!(inst, |i| evaluations_on(i, &mut checked, &mut bad));
    }
    Outcome::new(
        "evaluation on injectives",
        !checked.is_empty() && bad.is_empty(),
        format!("ev_N iso for C and three M⊗C on {checked:?}; failures {bad:?}"),
    )
}

fn equivalence_on<F: Field>(name: &str, g: &GaloisInstance<F>, summary: &mut Vec<String>, bad: &mut Vec<String>) {
    let fam_r = family_of_size(g.r(), MIN_EQUIVALENCE_FAMILY);
    let fam_a = family_of_size(g.a(), MIN_EQUIVALENCE_FAMILY);
    let fam_c = comodule_family(g, &fam_a).expect("comodule family builds");
    let rep = equivalence_check(g, &fam_r, &fam_c).expect("equivalence check runs");
    let count = |prefix: &str| rep.checks().iter().filter(|o| o.name.starts_with(prefix) && o.status == Status::Pass).count();
    let (units, counits, generates) = (count("unit["), count("counit["), count("generates["));
    let consequences = ["can_iso", "alpha_beta", "beta_alpha", "alpha_multiplicative"].iter().all(|n| status_is(&rep, n, Status::Pass));
    let ok = rep.passed()
        && consequences
        && units >= MIN_EQUIVALENCE_FAMILY
        && counits >= MIN_EQUIVALENCE_FAMILY
        && units == fam_r.members.len()
        && counits == fam_c.len()
        && generates == fam_c.len();
    summary.push(format!("{name}: {units} units, {counits} counits, {generates} generated"));
    if !ok {
        bad.push(name.to_string());
    }
}

fn equivalence() -> Outcome {
    let (mut summary, mut bad) = (Vec::new(), Vec::new());
    for (name, g) in flagships_over(&Rationals) {
        equivalence_on(&name, &g, &mut summary, &mut bad);
    }
    for (name, g) in flagships_over(&PrimeField::new(7).unwrap()) {
        equivalence_on(&name, &g, &mut summary, &mut bad);
    }
    Outcome::new(
        "comodule equivalence",
        bad.is_empty(),
        format!("{}; can, α∘β, β∘α, α multiplicative checked; failures {bad:?}", summary.join("; ")),
    )
}

fn comparison_on<F: Field>(i: &Instance<F>, tally: &mut [usize; 3], bad: &mut Vec<String>) {
    let Some(g) = galois_of(i) else { return };
    let fam = TestFamily::standard(g.a(), 2, SEED);
    let agreement = galois_comonadic_agreement(g, &fam).expect("agreement runs");
    match agreement.status_of("galois_iff_comonadic") {
        Some(Status::Pass) => tally[0] += 1,
        Some(Status::Skipped) => {}
        _ => bad.push(format!("{}: agreement", i.name)),
    }
    if !canonical_map(g).expect("canonical map runs").is_galois {
        return;
    }
    let image = image_of_r(g).expect("image of R");
    let nu = galois_implies_comonadic(g, &image, &fam).expect("ν runs");
    let composites = nu.checks().iter().filter(|o| o.name.starts_with("nu_after_can") || o.name.starts_with("can_after_nu")).count();
    if nu.passed() && composites == 2 * fam.members.len() {
        tally[1] += 1;
    } else {
        bad.push(format!("{}: ν composites", i.name));
    }
    let ctx = comonadic_context(g).expect("reconstruction runs");
    if ctx.report.passed() && ctx.report.checks().iter().any(|o| o.name.starts_with("iso") && o.status == Status::Pass) {
        tally[2] += 1;
    } else {
        bad.push(format!("{}: reconstruction", i.name));
    }
}

fn comparison(instances: &[AnyInstance]) -> Outcome {
    let mut tally = [0; 3];
    let mut bad = Vec::new();
    for inst in instances {
        typed!(inst, |i| comparison_on(i, &mut tally, &mut bad));
    }
    // The diagonal subring of upper triangular matrices: not comonadic over R, comonadic over T.
    let g = diagonal_in_upper_galois(&Rationals);
    let fam = TestFamily::standard(g.a(), 2, SEED);
    let over_r = is_comonadic_galois(&g, &fam).expect("comonadic check runs");
    let cert = over_r.counterexample.clone();
    let certified = matches!(&cert, Some((_, c)) if c.rank < c.source_dim.max(c.target_dim));
    let end = g.endomorphisms().expect("End^C(Σ)");
    let full: Vec<Vec<_>> = (0..end.t.dim()).map(|k| end.t.basis_vector(k)).collect();
    let over_t = intermediate_instance(&g, &full).and_then(|t| is_comonadic_galois(&t, &fam)).expect("comonadic over T runs");
    let remark = over_r.comonadic == Some(false) && certified && over_t.comonadic == Some(true);
    if !remark {
        bad.push("diagonal subring".into());
    }
    let cert_text = cert.map(|(m, c)| format!("can_{m} has {c}")).unwrap_or_default();
    Outcome::new(
        "galois vs comonadic",
        bad.is_empty() && tally.iter().all(|&n| n > 0),
        format!(
            "agreement on {} firmly projective instances; ν composites on {}; reconstruction on {}; diagonal subring: {cert_text}, comonadic over T {:?}; failures {bad:?}",
            tally[0], tally[1], tally[2], over_t.comonadic
        ),
    )
}

fn unital_on<F: Field>(f: &F) -> (bool, String) {
    let g = matrix_context_galois(f);
    let fam_a = TestFamily::standard(g.a(), 2, SEED);
    let fam_c = comodule_family(&g, &fam_a).expect("comodule family builds");
    let rep = unital_corollary_check(&g, &fam_c).expect("unital check runs");
    let named = status_is(&rep, "dual_basis", Status::Pass) && status_is(&rep, "jmath_iso", Status::Pass);
    // Second route: compose the extracted dual basis and test ȷ directly.
    let pairs = dual_basis(g.sigma.carrier()).expect("dual basis search runs");
    let composite = pairs.as_ref().map(|p| dual_basis_composite(g.sigma.carrier(), p).is_identity()).unwrap_or(false);
    let end = g.endomorphisms().expect("End^C(Σ)");
    let jmath = end.jmath.is_isomorphism() && g.r().morphism_failure(&end.t, &end.jmath).is_none();
    let n_pairs = pairs.map_or(0, |p| p.len());
    (
        rep.passed() && named && composite && jmath,
        format!("{}: {n_pairs} dual basis pairs, ȷ iso {jmath}", f.kind()),
    )
}

fn unital_case() -> Outcome {
    let (a, da) = unital_on(&Rationals);
    let (b, db) = unital_on(&PrimeField::new(7).unwrap());
    Outcome::new("unital case", a && b, format!("{da}; {db}"))
}

fn determinism(instances: &[AnyInstance]) -> Outcome {
    let config = Config {
        seed: Some(SEED),
        family_size: None,
    };
    let mut differing = Vec::new();
    for (doc, inst) in corpus().iter().zip(instances) {
        let first = run_any(inst, Suite::All, config).to_json();
        let second = run_any(&load(doc).expect("reload"), Suite::All, config).to_json();
        if first != second {
            differing.push(inst.name().to_string());
        }
    }
    let params = GenParams {
        n: None,
        p: Some(7),
        seed: SEED,
        max_dim: 8,
    };
    let gen_a = generate(Kind::RandomDualPair, &params).unwrap();
    let gen_b = generate(Kind::RandomDualPair, &params).unwrap();
    let same_doc = gen_a.to_json() == gen_b.to_json();
    let ra = run_any(&load(&gen_a).unwrap(), Suite::All, config).to_json();
    let rb = run_any(&load(&gen_b).unwrap(), Suite::All, config).to_json();
    Outcome::new(
        "determinism",
        differing.is_empty() && same_doc && ra == rb,
        format!("{} corpus reports and one generated instance byte-identical across runs; differing {differing:?}", instances.len()),
    )
}

#[test]
fn acceptance() {
    let instances = corpus_instances();
    let criteria: Vec<Box<dyn Fn() -> Outcome + '_>> = vec![
        Box::new(|| axiom_suites(&instances)),
        Box::new(firm_ring_iff_coring),
        Box::new(|| firm_module_dictionary(&instances)),
        Box::new(|| firm_projectivity(&instances)),
        Box::new(|| adjunction(&instances)),
        Box::new(galois_flagships),
        Box::new(|| contractible_evaluations(&instances)),
        Box::new(equivalence),
        Box::new(|| comparison(&instances)),
        Box::new(unital_case),
        Box::new(|| determinism(&instances)),
    ];
    let mut failed = Vec::new();
    for criterion in criteria {
        let o = criterion();
        // Written past the test harness capture so the lines show on passing runs too.
        let mut out = std::io::stdout().lock();
        writeln!(out, "acceptance [{}] {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail).unwrap();
        if !o.pass {
            failed.push(o.name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
