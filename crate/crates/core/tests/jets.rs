use proptest::prelude::*;

use weiljet_core::jets::{JetRing, JetScalar};
use weiljet_core::scalars::rational::ratio;
use weiljet_core::scalars::{Cyclo, Rational, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn base() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![ratio(1, 1), ratio(2, 1), ratio(4, 1), ratio(1, 3), ratio(9, 4), ratio(-1, 2)])
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(re, im)| Scalar::from_cyclo(Cyclo::gaussian(re, im)))
}

fn jet_with(base: Rational, order: usize) -> impl Strategy<Value = JetScalar> {
    prop::collection::vec(coeff(), order).prop_map(move |c| JetScalar::new(base.clone(), c).unwrap())
}

fn jet_pair() -> impl Strategy<Value = (JetScalar, JetScalar, JetScalar)> {
    (base(), 1usize..=4).prop_flat_map(|(b, k)| (jet_with(b.clone(), k), jet_with(b.clone(), k), jet_with(b, k)))
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in jet_pair()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn inverse((a, _, _) in jet_pair()) {
        prop_assume!(!a.leading().is_zero());
        let one = a.ring().one();
        prop_assert_eq!(&a * &a.invert().unwrap(), one);
    }

    #[test]
    fn square_root(b in base(), k in 1usize..=4, lead in 1i64..30, rest in prop::collection::vec(rational(), 3)) {
        let mut coeffs = vec![Scalar::from_rational(ratio(lead, 1))];
        coeffs.extend(rest.into_iter().take(k - 1).map(Scalar::from_rational));
        let a = JetScalar::new(b, coeffs).unwrap();
        let r = a.sqrt().unwrap();
        prop_assert_eq!(&r * &r, a);
    }

    #[test]
    fn involution_is_an_involutive_ring_map((a, b, _) in jet_pair()) {
        prop_assert_eq!(a.involution().involution(), a.clone());
        prop_assert_eq!((&a * &b).involution(), &a.involution() * &b.involution());
        prop_assert_eq!((&a + &b).involution(), &a.involution() + &b.involution());
    }

    #[test]
    fn involution_of_the_variable(b in base(), k in 1usize..=4) {
        let ring = JetRing::new(b, k).unwrap();
        let s = ring.variable();
        let hat = s.invert().unwrap().involution();
        prop_assert_eq!(hat, JetRing::new(ratio(1, 1) / s.base(), k).unwrap().variable());
    }
}

#[test]
fn variable_and_epsilon() {
    let ring = JetRing::new(ratio(3, 1), 3).unwrap();
    let eps = ring.epsilon();
    assert_eq!(&ring.variable() - &eps, ring.constant(Scalar::from_int(3)));
    assert!((&(&eps * &eps) * &eps).is_zero());
}
