mod common;

use common::homs::{algebra, corner_unit, hom_corpus, mutate, random_edge_units, random_valid_hom};
use common::oracles::brute_force_relations;
use common::{essential_graphs, random_unit, rng};
use leavitt::homs::{
    chain_homotopy, constant_homotopy, induced_k0, induced_k0_report, phi_z, rotation_m2_certificate,
    shift_identity_holds, u_f, u_one, verify_homotopy, EdgeUnitFamily, GradedHom, HomotopyCertificate,
};
use leavitt::{AlgebraExt, ElementMatrix, Error, Graph, Rationals};
use proptest::prelude::*;

#[test]
fn corpus_agrees_with_the_brute_force_evaluator() {
    for h in hom_corpus() {
        assert_eq!(brute_force_relations(h.images(), h.target()), Ok(()));
        assert!(h.is_verified());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verification_agrees_with_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let valid = random_valid_hom(&mut r);
        prop_assert!(valid.is_verified());
        prop_assert_eq!(brute_force_relations(valid.images(), valid.target()), Ok(()));
        let mut bad = mutate(&valid, &mut r);
        let report = bad.verify();
        let brute = brute_force_relations(bad.images(), bad.target());
        prop_assert_eq!(report.passed(), brute.is_ok(), "{} vs {:?}", report, brute);
    }

    #[test]
    fn deformations_keep_k0(seed in any::<u64>()) {
        let mut r = rng(seed);
        let corpus = hom_corpus();
        let h = &corpus[(seed % corpus.len() as u64) as usize];
        let z = random_edge_units(h, &mut r);
        let d = phi_z(h, &z).unwrap();
        prop_assert!(d.is_verified());
        prop_assert_eq!(induced_k0(&d).unwrap(), induced_k0(h).unwrap());
    }

    #[test]
    fn rotation_certificates_verify(seed in any::<u64>(), fib in any::<bool>()) {
        let a = algebra(if fib { Graph::fibonacci() } else { Graph::rose(2) });
        let h = GradedHom::identity(&a);
        let (u, _) = random_unit(&a, &mut rng(seed), 2, 2);
        let cert = rotation_m2_certificate(&h, &u).unwrap();
        prop_assert!(cert.report.passed());
    }
}

#[test]
fn induced_k0_is_a_pointed_hom() {
    for h in hom_corpus() {
        let report = induced_k0_report(&h).unwrap();
        assert!(report.passed(), "{}: {report}", h.source().name());
    }
    let a = algebra(Graph::rose(2));
    let unverified = GradedHom::parse(a.graph_arc().clone(), &a, "v -> v\ne -> e\nf -> f\n").unwrap();
    assert_eq!(induced_k0(&unverified).unwrap_err(), Error::UnverifiedHom);
}

#[test]
fn tensor_units_for_essential_graphs() {
    for g in essential_graphs() {
        let a = algebra(g.clone());
        let u = u_one(&a).unwrap();
        assert!(u.verify(), "{}", g.name());
        assert_eq!(u.inverse, u.unit.star());
        assert_eq!(u.unit.degree(), Some(0));
    }
    for h in hom_corpus() {
        assert!(u_f(&h).unwrap().verify());
    }
    let tail = Graph::new("tail", &["s", "v"], &[("i", "s", "v"), ("e", "v", "v")]).unwrap();
    assert_eq!(u_one(&algebra(tail)).unwrap_err(), Error::NotEssential);
}

#[test]
fn corner_condition_is_enforced() {
    let h = hom_corpus().swap_remove(1);
    let a = h.target().clone();
    assert!(matches!(EdgeUnitFamily::new(&h, vec![a.one(), a.one()]), Err(Error::CornerConditionFailed(_))));
    let not_unit = vec![a.parse("2 f f* - f e e* f*").unwrap(), a.parse("e e*").unwrap()];
    // 2 f f* - f e e* f* is a unit of the corner f f*; the first edge maps to f
    assert!(EdgeUnitFamily::new(&h, not_unit).is_ok());
    let singular = vec![a.parse("f e e* f*").unwrap(), a.parse("e e*").unwrap()];
    assert!(matches!(EdgeUnitFamily::new(&h, singular), Err(Error::CornerConditionFailed(_))));
}

#[test]
fn shift_identity_on_all_composable_pairs() {
    let mut r = rng(5);
    for h in hom_corpus() {
        let g = h.source().clone();
        let src = algebra(g.clone());
        for e in g.edges() {
            for f in g.edges().filter(|&f| g.range(f) == g.source(e)) {
                for _ in 0..3 {
                    let (x, _) = corner_unit(&src, &mut r, g.range(e));
                    let u = h.apply(&(&(&src.edge(e) * &x) * &src.ghost(e))).unwrap();
                    assert!(shift_identity_holds(&h, e, f, &u).unwrap(), "{} ({}, {})", g.name(), g.edge_name(e), g.edge_name(f));
                }
            }
        }
    }
}

#[test]
fn homotopy_endpoints_and_chains_are_checked() {
    let a = algebra(Graph::rose(2));
    let id = GradedHom::identity(&a);
    let (u, _) = random_unit(&a, &mut rng(9), 2, 1);
    let cert = rotation_m2_certificate(&id, &u).unwrap();
    // swapped endpoints are rejected unless the unit acts trivially
    let swapped = verify_homotopy(&cert.homotopy, &cert.end, &cert.start, None, &Rationals);
    assert_eq!(swapped.passed(), cert.start == cert.end);

    let swap = hom_corpus().swap_remove(1);
    let poly_one = leavitt::homs::polynomial_algebra(&a).one();
    let good = vec![constant_homotopy(&id), constant_homotopy(&id)];
    assert!(chain_homotopy(&good, Some(&poly_one), &Rationals).passed());
    let broken = vec![constant_homotopy(&id), constant_homotopy(&swap)];
    let report = chain_homotopy(&broken, Some(&poly_one), &Rationals);
    assert_eq!(report.first_failure().unwrap().name, "link1");

    let m = ElementMatrix::identity(&leavitt::homs::polynomial_algebra(&a), 2);
    let _ = HomotopyCertificate { images: cert.homotopy.images.map(|x| x.checked_mul(&m).unwrap()) };
}
