use proptest::prelude::*;

use weiljet_core::kashiwara::EnvelopingElement;
use weiljet_core::scalars::rational::ratio;

fn element(n: usize) -> impl Strategy<Value = EnvelopingElement> {
    let term = (
        prop::collection::vec(0u32..=2, n),
        -1i32..=2,
        prop::collection::vec(0u32..=2, n),
        -4i64..=4,
        1i64..=3,
    );
    prop::collection::vec(term, 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(EnvelopingElement::zero(n), |acc, (y, z, x, p, q)| {
            acc.add(&EnvelopingElement::monomial(y, z, x, ratio(p, q)))
        })
    })
}

fn triple() -> impl Strategy<Value = (EnvelopingElement, EnvelopingElement, EnvelopingElement)> {
    (1usize..=2).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn associativity((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn distributivity((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn z_is_central((a, _, _) in triple()) {
        let n = a.arity();
        prop_assert!(EnvelopingElement::z_pow(n, 1).commutator(&a).is_zero());
        prop_assert!(EnvelopingElement::z_pow(n, -1).commutator(&a).is_zero());
    }

    #[test]
    fn jacobi_identity((a, b, c) in triple()) {
        let sum = a.commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        prop_assert!(sum.is_zero());
    }
}

#[test]
fn heisenberg_relations() {
    let n = 2;
    for i in 0..n {
        for j in 0..n {
            let xy = EnvelopingElement::x(n, i).commutator(&EnvelopingElement::y(n, j));
            let expected = if i == j { EnvelopingElement::z_pow(n, 1) } else { EnvelopingElement::zero(n) };
            assert_eq!(xy, expected);
        }
    }
    let z = EnvelopingElement::z_pow(n, 1);
    assert_eq!(z.mul(&EnvelopingElement::z_pow(n, -1)), EnvelopingElement::one(n));
}
