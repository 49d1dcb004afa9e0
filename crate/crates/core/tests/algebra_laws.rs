mod common;

use common::{kernel_graphs, random_element, random_homogeneous, rng};
use leavitt::{AlgebraExt, Graph, LeavittAlgebra, PrimeField, Rationals};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative_and_distributive(seed in any::<u64>(), which in 0usize..5) {
        let g = kernel_graphs().swap_remove(which);
        let a = LeavittAlgebra::new(g, Rationals);
        let mut r = rng(seed);
        let x = random_element(&a, &mut r, 3, 2);
        let y = random_element(&a, &mut r, 3, 2);
        let z = random_element(&a, &mut r, 3, 2);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &a.one(), x.clone());
    }

    #[test]
    fn star_is_an_involutive_anti_automorphism(seed in any::<u64>(), which in 0usize..5) {
        let a = LeavittAlgebra::new(kernel_graphs().swap_remove(which), Rationals);
        let mut r = rng(seed);
        let x = random_element(&a, &mut r, 3, 3);
        let y = random_element(&a, &mut r, 3, 3);
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
    }

    #[test]
    fn grading_is_multiplicative(seed in any::<u64>(), which in 0usize..5, d1 in -2i64..=2, d2 in -2i64..=2) {
        let a = LeavittAlgebra::new(kernel_graphs().swap_remove(which), Rationals);
        let mut r = rng(seed);
        let x = random_homogeneous(&a, &mut r, d1, 3, 3);
        let y = random_homogeneous(&a, &mut r, d2, 3, 3);
        let p = &x * &y;
        prop_assert!(p.is_zero() || p.degree() == Some(d1 + d2));
    }

    #[test]
    fn display_round_trips(seed in any::<u64>(), which in 0usize..5) {
        let a = LeavittAlgebra::new(kernel_graphs().swap_remove(which), Rationals);
        let x = random_element(&a, &mut rng(seed), 4, 3);
        prop_assert_eq!(a.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn prime_field_coefficients(seed in any::<u64>()) {
        let a = LeavittAlgebra::new(Graph::fibonacci(), PrimeField::new(5).unwrap());
        let mut r = rng(seed);
        let x = random_element(&a, &mut r, 3, 2);
        let y = random_element(&a, &mut r, 3, 2);
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(&x + &x.scale(&4), a.zero());
    }
}

#[test]
fn cohn_idempotents_vanish() {
    for g in kernel_graphs() {
        let a = LeavittAlgebra::new(g.clone(), Rationals);
        for v in g.vertices() {
            let q = a.cohn_idempotent(v).unwrap();
            assert!(!q.is_normalized() || q.is_zero());
            assert!(q.normalize().is_zero(), "{}", g.name());
        }
    }
}

#[test]
fn normal_form_does_not_depend_on_the_special_edges() {
    let g = Graph::complete2();
    let first = LeavittAlgebra::new(g.clone(), Rationals);
    let last = LeavittAlgebra::with_special_edges(g.clone(), Rationals, leavitt::SpecialEdgeChoice::last(&g));
    let mut r = rng(7);
    for _ in 0..30 {
        let x = random_element(&first, &mut r, 3, 2);
        let y = random_element(&first, &mut r, 3, 2);
        let in_last = |z: &leavitt::Element<Rationals>| last.parse(&z.to_string()).unwrap();
        assert_eq!(in_last(&(&x * &y)), &in_last(&x) * &in_last(&y));
        assert_eq!((&x * &y).is_zero(), (&in_last(&x) * &in_last(&y)).is_zero());
    }
}

#[test]
fn mixing_algebras_is_an_error() {
    let a = LeavittAlgebra::new(Graph::rose(2), Rationals);
    let b = LeavittAlgebra::new(Graph::rose(3), Rationals);
    let c = LeavittAlgebra::new(Graph::rose(2), PrimeField::new(3).unwrap());
    assert_eq!(a.one().checked_mul(&b.one()).unwrap_err(), leavitt::Error::GraphMismatch);
    assert!(a.one().map_coefficients(&c, |_| 1).is_ok());
}
