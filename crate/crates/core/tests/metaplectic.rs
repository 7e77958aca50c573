use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weiljet_core::linalg::Mat;
use weiljet_core::metaplectic::{factorize, omega, random_word, word_product, SymplecticMatrix};
use weiljet_core::scalars::rational::{rat, ratio};
use weiljet_core::scalars::Rational;

fn nonzero() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

/// Determinant-one 2×2 matrices, including the `a = 0` stratum.
fn sl2() -> impl Strategy<Value = Mat> {
    (nonzero(), prop_oneof![Just(None), nonzero().prop_map(Some)], nonzero(), any::<bool>()).prop_map(
        |(a, b, c, antidiagonal)| {
            if antidiagonal {
                // (0, a; -1/a, c)
                Mat::from_rows(vec![vec![rat(0), a.clone()], vec![-(rat(1) / &a), c]])
            } else {
                let b = b.unwrap_or_else(|| rat(0));
                let d = (rat(1) + &b * &c) / &a;
                Mat::from_rows(vec![vec![a, b], vec![c, d]])
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sl2_factorization_round_trip(m in sl2()) {
        prop_assert_eq!(m.det(), rat(1));
        let sm = SymplecticMatrix::new(m).unwrap();
        let word = factorize(&sm).unwrap();
        prop_assert_eq!(word_product(&word, 1), sm);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_words_are_symplectic_and_refactor(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, n, 4);
        let m = word_product(&w, n);
        let g = m.matrix();
        prop_assert_eq!(&(&g.transpose() * &omega(n)) * g, omega(n));
        prop_assert_eq!(word_product(&factorize(&m).unwrap(), n), m);
    }
}

#[test]
fn non_symplectic_matrices_are_rejected() {
    assert!(SymplecticMatrix::new(Mat::from_i64(&[&[2, 0], &[0, 1]])).is_err());
}
