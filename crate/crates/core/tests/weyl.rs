use proptest::prelude::*;

use weiljet_core::scalars::rational::ratio;
use weiljet_core::scalars::Scalar;
use weiljet_core::weyl::WeylOp;

const N: usize = 2;

fn op() -> impl Strategy<Value = WeylOp<Scalar>> {
    let term = (prop::collection::vec(0u32..=2, N), prop::collection::vec(0u32..=2, N), -5i64..=5, 1i64..=3);
    prop::collection::vec(term, 1..=3).prop_map(|terms| {
        terms.into_iter().fold(WeylOp::zero(N), |acc, (x, d, p, q)| {
            acc.add(&WeylOp::monomial(x, d, Scalar::from_rational(ratio(p, q))))
        })
    })
}

fn unit() -> Scalar {
    Scalar::one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn associativity(a in op(), b in op(), c in op()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn distributivity(a in op(), b in op(), c in op()) {
        prop_assert_eq!(a.multiply(&b.add(&c)).unwrap(), a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()));
    }

    #[test]
    fn jacobi_identity(a in op(), b in op(), c in op()) {
        let cyc = |p: &WeylOp<Scalar>, q: &WeylOp<Scalar>, r: &WeylOp<Scalar>| {
            p.commutator(&q.commutator(r).unwrap()).unwrap()
        };
        let sum = cyc(&a, &b, &c).add(&cyc(&b, &c, &a)).add(&cyc(&c, &a, &b));
        prop_assert!(sum.is_zero());
    }
}

#[test]
fn canonical_commutation_relations() {
    for i in 0..N {
        for j in 0..N {
            let bracket = WeylOp::d(N, i, unit()).commutator(&WeylOp::x(N, j, unit())).unwrap();
            let expected = if i == j { WeylOp::constant(N, unit()) } else { WeylOp::zero(N) };
            assert_eq!(bracket, expected);
            assert!(WeylOp::x(N, i, unit()).commutator(&WeylOp::x(N, j, unit())).unwrap().is_zero());
            assert!(WeylOp::d(N, i, unit()).commutator(&WeylOp::d(N, j, unit())).unwrap().is_zero());
        }
    }
}
