use proptest::prelude::*;

use weiljet_core::linalg::{invariant_factors, similar, Mat};
use weiljet_core::scalars::rational::rat;

fn square(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |e| Mat::from_fn(n, n, |i, j| rat(e[i * n + j])))
}

/// Unit lower times unit upper triangular: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = Mat> {
    (prop::collection::vec(-2i64..=2, n * n), prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(l, u)| {
        let lower = Mat::from_fn(n, n, |i, j| if i == j { rat(1) } else if i > j { rat(l[i * n + j]) } else { rat(0) });
        let upper = Mat::from_fn(n, n, |i, j| if i == j { rat(1) } else if i < j { rat(u[i * n + j]) } else { rat(0) });
        &lower * &upper
    })
}

fn conjugation_case() -> impl Strategy<Value = (Mat, Mat)> {
    (1usize..=4).prop_flat_map(|n| (square(n), invertible(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn invariant_factors_are_conjugation_invariant((a, p) in conjugation_case()) {
        let b = &(&p * &a) * &p.inverse().unwrap();
        prop_assert_eq!(invariant_factors(&a), invariant_factors(&b));
        prop_assert!(similar(&a, &b));
    }

    #[test]
    fn invariant_factor_degrees_sum_to_dimension((a, _) in conjugation_case()) {
        let total: usize = invariant_factors(&a).iter().map(|f| f.len() - 1).sum();
        prop_assert_eq!(total, a.rows());
    }

    #[test]
    fn transpose_is_similar((a, _) in conjugation_case()) {
        prop_assert!(similar(&a, &a.transpose()));
    }
}

#[test]
fn different_jordan_structure_is_not_similar() {
    let jordan = Mat::from_i64(&[&[2, 1], &[0, 2]]);
    let scalar = Mat::from_i64(&[&[2, 0], &[0, 2]]);
    assert!(!similar(&jordan, &scalar));
}
