use proptest::prelude::*;

use weiljet_core::scalars::rational::ratio;
use weiljet_core::scalars::{Cyclo, Rational, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn cyclo() -> impl Strategy<Value = Cyclo> {
    prop::array::uniform4(rational()).prop_map(Cyclo::new)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((cyclo(), prop::sample::select(vec![1u64, 2, 3, 5, 6, 15]), -1i32..=1), 0..3).prop_map(
        |terms| {
            terms
                .into_iter()
                .fold(Scalar::zero(), |acc, (c, d, k)| &acc + &Scalar::monomial(c, d, k))
        },
    )
}

proptest! {
    #[test]
    fn cyclo_field_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn cyclo_galois_is_a_ring_map(a in cyclo(), b in cyclo(), k in prop::sample::select(vec![1i64, 3, 5, 7])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_conjugation_is_multiplicative(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn monomial_inverse(c in cyclo(), d in prop::sample::select(vec![1u64, 2, 3, 10, 21]), k in -2i32..=2) {
        prop_assume!(!c.is_zero());
        let m = Scalar::monomial(c, d, k);
        prop_assert!((&m * &m.inv().unwrap()).is_one());
    }

    #[test]
    fn positive_rational_square_roots(n in 1i64..200, d in 1i64..50) {
        let q = ratio(n, d);
        let r = Scalar::sqrt_positive_rational(&q).unwrap();
        prop_assert_eq!(&r * &r, Scalar::from_rational(q));
    }
}

#[test]
fn eighth_root_of_unity() {
    let zeta = Cyclo::zeta();
    assert_eq!(zeta.pow(2), Cyclo::i());
    assert_eq!(zeta.pow(8), Cyclo::one());
    assert_eq!(&Cyclo::zeta_pow(1) + &Cyclo::zeta_pow(7), Cyclo::sqrt2());
}
