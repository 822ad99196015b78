use std::sync::Arc;

use galcom_cli::corpus::{diagonal_in_upper_galois, sweedler_galois};
use galcom_cli::generate::{random_algebra, random_coring, random_dual_pair, random_ring};
use galcom_core::algebra::{reassociate, Algebra, Bimodule, HomSpace, Tensor};
use galcom_core::coring::{contractible_equalizer_check, hom_colinear, relative_injectivity, varpi, Comodule};
use galcom_core::firm::{candidate_coring, coring_from_firm_ring, dorroh, firmness, is_firm_ring, is_firmly_projective, Projectivity};
use galcom_core::galois::{
    can_naturality, canonical_map, galois_comonadic_agreement, image_of_r, intermediate_instance, is_comonadic_galois, random_morphism,
    GaloisInstance, TestFamily,
};
use galcom_core::{Field, PrimeField, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_in<F: Field>(h: &HomSpace<F>, rng: &mut ChaCha8Rng) -> galcom_core::exactlin::Matrix<F> {
    let f = h.source().field();
    let coords: Vec<F::Elem> = (0..h.dim()).map(|_| f.random_small(rng, 3)).collect();
    h.combine(&coords)
}

fn tensor_properties<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = Arc::new(random_algebra(f, &mut rng, 4));
    let m = Arc::new(Bimodule::free_right(&a, 2));
    let n = Arc::new(Bimodule::left_regular(&a));
    let t = Tensor::new(&m, &n).unwrap();
    let fm = random_in(&HomSpace::right_linear(&m, &m).unwrap(), &mut rng);
    let gn = random_in(&HomSpace::left_linear(&n, &n).unwrap(), &mut rng);
    assert!(t.is_well_defined(&t, &fm, &gn));

    let mid = Arc::new(Bimodule::regular(&a));
    let mn = Tensor::new(&m, &mid).unwrap();
    let mn_p = Tensor::new(mn.result(), &n).unwrap();
    let np = Tensor::new(&mid, &n).unwrap();
    let m_np = Tensor::new(&m, np.result()).unwrap();
    assert_eq!(mn_p.dim(), m_np.dim());
    assert!(reassociate(&m_np, &np, &mn, &mn_p).is_isomorphism());

    assert!(mn.right_collapse().is_isomorphism());
    assert!(np.left_collapse().is_isomorphism());
}

fn coring_properties<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_coring(f, &mut rng, 2);
    assert!(g.validate().passed());
    for (_, m) in &TestFamily::standard(g.a(), 2, seed).members {
        let (w, _, _) = varpi(&g.sigma, m).unwrap();
        assert!(w.is_isomorphism());
    }
    let line = Arc::new(Bimodule::vector_space(f, 1));
    let cof = Comodule::cofree(&g.coring, &line).unwrap();
    let hc = hom_colinear(&g.sigma, &cof).unwrap();
    assert_eq!(hc.inclusion.rank(), hc.dim());
    let w = relative_injectivity(&cof).expect("cofree comodules are injective");
    assert!(contractible_equalizer_check(&g.sigma, &cof, &w).unwrap().passed());
}

fn firm_properties<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = Arc::new(random_ring(f, &mut rng, 6));
    let d = dorroh(&r);
    assert!(d.rhat.is_unital());
    assert!(d.validate().passed());
    let firm = is_firm_ring(&r).unwrap();
    let candidate_valid = candidate_coring(&r).unwrap().coring.validate().passed();
    assert_eq!(firm.is_ok(), candidate_valid);
    if let Ok(w) = firm {
        let rc = coring_from_firm_ring(&r, &w).unwrap();
        assert!(rc.coring.validate().passed());
        for n in 1..=2 {
            let m = Arc::new(Bimodule::free_right(&r, n));
            let wm = firmness(&m, &r).unwrap().expect("free modules over firm rings are firm");
            let back = rc.comodule_to_firm_module(&rc.firm_module_to_comodule(&wm).unwrap()).unwrap();
            assert_eq!(back.module.right_ops(), wm.module.right_ops());
            assert_eq!(back.d, wm.d);
        }
    }
}

fn projectivity_properties<F: Field>(f: &F, seed: u64, n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_dual_pair(f, &mut rng, n, 8).unwrap();
    let p = g.firm_projectivity().unwrap().expect("comatrix corings come from firmly projective modules");
    assert!(p.report.passed());
    assert!(p.alpha.mul(&p.beta).is_identity());
    assert!(p.beta.mul(&p.alpha).is_identity());
    let zd = p.z.z.dim();
    match is_firmly_projective(g.sigma.carrier(), &p.z.z, &galcom_core::exactlin::Matrix::identity(f, zd)).unwrap() {
        Projectivity::Firm(pz) => assert!(pz.report.passed()),
        Projectivity::NotFirm(c) => panic!("Σ is not firm over Z: {c}"),
    }
}

fn galois_properties<F: Field>(g: &GaloisInstance<F>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = canonical_map(g).unwrap();
    assert!(rep.checks.passed(), "{}", rep.checks);
    let fam = TestFamily::standard(g.a(), 2, seed);
    let ms = &fam.members;
    for i in 0..ms.len() {
        let j = (i + 1) % ms.len();
        let h = random_morphism(&ms[i].1, &ms[j].1, &mut rng).unwrap();
        assert!(can_naturality(g, &ms[i].1, &ms[j].1, &h).unwrap(), "{} -> {}", ms[i].0, ms[j].0);
    }
    if g.firm_projectivity().unwrap().is_some() {
        assert!(galois_comonadic_agreement(g, &fam).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tensors_are_functorial_associative_and_unital(seed in any::<u64>()) {
        tensor_properties(&Rationals, seed);
        tensor_properties(&PrimeField::new(7).unwrap(), seed);
    }

    #[test]
    fn random_corings_have_injective_cofree_comodules(seed in any::<u64>()) {
        coring_properties(&Rationals, seed);
        coring_properties(&PrimeField::new(5).unwrap(), seed);
    }

    #[test]
    fn firmness_agrees_with_the_candidate_coring(seed in any::<u64>()) {
        firm_properties(&Rationals, seed);
        firm_properties(&PrimeField::new(7).unwrap(), seed);
        firm_properties(&PrimeField::new(2).unwrap(), seed);
    }

    #[test]
    fn dual_pairs_are_firmly_projective_over_r_and_z(seed in any::<u64>(), n in 1usize..3) {
        projectivity_properties(&Rationals, seed, n);
        projectivity_properties(&PrimeField::new(7).unwrap(), seed, n);
    }

    #[test]
    fn canonical_maps_are_natural_and_counital(seed in any::<u64>()) {
        let f7 = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        galois_properties(&random_coring(&f7, &mut rng, 2), seed);
        galois_properties(&random_dual_pair(&Rationals, &mut rng, 1, 8).unwrap(), seed);
        galois_properties(&sweedler_galois(&Rationals), seed);
        galois_properties(&diagonal_in_upper_galois(&Rationals), seed);
    }
}

#[test]
fn left_ideal_images_give_matching_verdicts_over_r_and_t() {
    // R = T = U₂ (trivially a left ideal) and R = D₂ (not one): only the former must agree.
    let q = Rationals;
    let g = diagonal_in_upper_galois(&q);
    let fam = TestFamily::standard(g.a(), 2, 0);
    let end = g.endomorphisms().unwrap();
    let full: Vec<Vec<_>> = (0..end.t.dim()).map(|i| end.t.basis_vector(i)).collect();
    let over_t = intermediate_instance(&g, &full).unwrap();
    assert_eq!(is_comonadic_galois(&over_t, &fam).unwrap().comonadic, Some(true));
    assert_eq!(is_comonadic_galois(&g, &fam).unwrap().comonadic, Some(false));
    let image = image_of_r(&g).unwrap();
    let span: Vec<Vec<_>> = image.clone();
    assert!(!Algebra::is_left_ideal(&end.t, &span));
}
