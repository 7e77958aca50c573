use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weiljet_core::gauss::hermite_probe;
use weiljet_core::jets::JetRing;
use weiljet_core::metaplectic::random_word;
use weiljet_core::oscillator::{rho, rho_r, sigma_word, sign_relation, HeisenbergElement};
use weiljet_core::scalars::rational::rat;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heisenberg_group_law(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = JetRing::new(rat(3), 2).unwrap();
        let s = ring.variable();
        let (h1, h2) = (HeisenbergElement::random(&mut rng, n), HeisenbergElement::random(&mut rng, n));
        let v = hermite_probe(&vec![1; n], &s).unwrap();
        let lhs = rho(&h1, &rho(&h2, &v, &s).unwrap(), &s).unwrap();
        prop_assert_eq!(lhs, rho(&h1.compose(&h2), &v, &s).unwrap());
    }

    #[test]
    fn metaplectic_action_is_projectively_covariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = JetRing::new(rat(1), 2).unwrap();
        let s = ring.variable();
        let w = random_word(&mut rng, 1, 3);
        let h = HeisenbergElement::random(&mut rng, 1);
        let g = weiljet_core::metaplectic::word_product(&w, 1);
        let v = hermite_probe(&[1], &s).unwrap();
        // σ(g)ρ(h) = ρ(g·h)σ(g), up to the metaplectic sign
        let lhs = match sigma_word(&w, &rho(&h, &v, &s).unwrap(), &s) {
            Ok(x) => x,
            Err(_) => return Ok(()),
        };
        let rhs = rho(&h.transform(&g), &sigma_word(&w, &v, &s).unwrap(), &s).unwrap();
        prop_assert!(matches!(sign_relation(&lhs, &rhs), Some(1 | -1)));
    }
}

#[test]
fn right_model_swaps_roles() {
    let ring = JetRing::new(rat(2), 2).unwrap();
    let s = ring.variable();
    let v = hermite_probe(&[2], &s).unwrap();
    let h = HeisenbergElement::new(vec![rat(1)], vec![rat(3)], rat(5)).unwrap();
    let swapped = HeisenbergElement::new(vec![rat(3)], vec![rat(-1)], rat(5)).unwrap();
    assert_eq!(rho_r(&h, &v, &s).unwrap(), rho(&swapped, &v, &s).unwrap());
}

#[test]
fn central_elements_act_by_the_character() {
    let ring = JetRing::new(rat(2), 3).unwrap();
    let s = ring.variable();
    let v = hermite_probe(&[1], &s).unwrap();
    let twice = rho(&HeisenbergElement::central(1, rat(1)), &v, &s).unwrap();
    let half = rho(&HeisenbergElement::central(1, rat(1) / rat(2)), &v, &s).unwrap();
    assert_eq!(rho(&HeisenbergElement::central(1, rat(1) / rat(2)), &half, &s).unwrap(), twice);
}
