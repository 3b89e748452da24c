//! Algebraic invariants on randomly generated scalars and polynomials.

use proptest::prelude::*;
use qharmonic::algebra::q_squared_radius;
use qharmonic::harmonic::{harmonic_decompose, project};
use qharmonic::operators::{laplacian, LaplacianMode};
use qharmonic::{Monomial, Poly, QScalar, Space};

fn laurent() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 1..4).prop_map(|terms| QScalar::from_laurent(&terms))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a / b })
}

fn nonzero_scalar() -> impl Strategy<Value = QScalar> {
    scalar().prop_filter("nonzero", |c| !c.is_zero())
}

fn poly(dim: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=max_deg, dim), laurent());
    prop::collection::vec(term, 1..4).prop_map(move |terms| {
        let space = Space::new(dim).unwrap();
        let terms = terms.into_iter().filter(|(nu, _)| nu.iter().sum::<u32>() <= max_deg);
        Poly::from_terms(&space, terms.map(|(nu, c)| (Monomial::new(nu), c)))
    })
}

fn homogeneous(dim: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let space = Space::new(dim).unwrap();
    let monos = space.monomials(deg);
    prop::collection::vec((0..monos.len(), laurent()), 1..4)
        .prop_map(move |picks| Poly::from_terms(&space, picks.into_iter().map(|(i, c)| (monos[i].clone(), c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses(a in nonzero_scalar()) {
        prop_assert!((&a * a.inv().unwrap()).is_one());
        prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
    }

    #[test]
    fn product_is_associative(a in poly(4, 2), b in poly(4, 2), c in poly(4, 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn star_reverses_products(a in poly(5, 2), b in poly(5, 2)) {
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn radius_is_central(a in poly(5, 3)) {
        let q = q_squared_radius(a.space());
        prop_assert_eq!(&q * &a, &a * &q);
    }

    #[test]
    fn laplacian_forms_agree(a in poly(4, 4)) {
        let s = a.space().clone();
        let direct = laplacian(&s, LaplacianMode::Direct).apply(&a).unwrap();
        let composed = laplacian(&s, LaplacianMode::Composed).apply(&a).unwrap();
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn projection_is_harmonic_and_idempotent(p in homogeneous(4, 3)) {
        let h = project(&p).unwrap();
        let lap = laplacian(p.space(), LaplacianMode::Direct);
        prop_assert!(lap.apply(&h).unwrap().is_zero());
        prop_assert_eq!(project(&h).unwrap(), h);
    }

    #[test]
    fn decomposition_reconstructs(p in homogeneous(5, 4)) {
        let space = p.space().clone();
        let q = q_squared_radius(&space);
        let mut sum = Poly::zero(&space);
        for (j, h) in harmonic_decompose(&p).unwrap() {
            sum = sum + &q.pow(j) * &h;
        }
        prop_assert_eq!(sum, p);
    }
}
