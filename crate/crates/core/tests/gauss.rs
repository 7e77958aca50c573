use proptest::prelude::*;

use weiljet_core::gauss::{fourier, hermite_probe, pairing, GaussPhase, GaussVector, Poly};
use weiljet_core::jets::{JetRing, JetScalar};
use weiljet_core::linalg::Mat;
use weiljet_core::scalars::rational::{double_factorial_odd, rat, ratio};
use weiljet_core::scalars::{Cyclo, Rational, Scalar};

fn base() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![ratio(1, 1), ratio(2, 1), ratio(4, 1), ratio(1, 2), ratio(9, 4)])
}

/// `p(x)·e^{-πs x²}` with a random rational polynomial `p` of degree ≤ 3.
fn gaussian_times_poly(ring: &JetRing, coeffs: &[(i64, i64)]) -> GaussVector {
    let mut p = Poly::zero(1, ring);
    for (e, &(re, im)) in coeffs.iter().enumerate() {
        let c = Scalar::from_cyclo(Cyclo::gaussian(rat(re), rat(im)));
        p.add_term(vec![e as u32], ring.constant(c));
    }
    let q = GaussPhase::real_quadratic(&Mat::identity(1).scale(&rat(-1)));
    GaussVector::from_poly(p).mul_s_phase(&q, &ring.variable()).unwrap()
}

fn single_part(v: &GaussVector) -> JetScalar {
    let value = v.phased_value();
    let parts: Vec<_> = value.parts().collect();
    assert_eq!(parts.len(), 1, "expected an untagged value, got {value}");
    assert!(parts[0].0.is_zero());
    parts[0].1.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fourier_round_trip(b in base(), k in 1usize..=3, coeffs in prop::collection::vec((-4i64..=4, -4i64..=4), 1..=4)) {
        let ring = JetRing::new(b, k).unwrap();
        let s = ring.variable();
        let v = gaussian_times_poly(&ring, &coeffs);
        let w = fourier(&fourier(&v, -1, &s).unwrap(), 1, &s).unwrap();
        prop_assert_eq!(w, v);
    }

    #[test]
    fn translation_and_parity_are_invertible(b in base(), a in -5i64..=5, coeffs in prop::collection::vec((-4i64..=4, -4i64..=4), 1..=4)) {
        let ring = JetRing::new(b, 2).unwrap();
        let v = gaussian_times_poly(&ring, &coeffs);
        let back = v.translate(&[rat(a)]).unwrap().translate(&[rat(-a)]).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(&v.parity().parity(), &v);
    }

    #[test]
    fn pairing_is_hermitian(b in base(), f in prop::collection::vec((-3i64..=3, -3i64..=3), 1..=3), g in prop::collection::vec((-3i64..=3, -3i64..=3), 1..=3)) {
        let ring = JetRing::new(b, 2).unwrap();
        let (f, g) = (gaussian_times_poly(&ring, &f), gaussian_times_poly(&ring, &g));
        prop_assert_eq!(pairing(&f, &g).unwrap(), pairing(&g, &f).unwrap().conj());
    }
}

/// `∫ x^{2m} e^{-πs x²} dx = (2m-1)!!/(2π)^m · s^{-m-1/2}`.
#[test]
fn gaussian_moments_match_closed_form() {
    for b in [1, 2, 4, 9] {
        for k in 1..=3 {
            let ring = JetRing::new(rat(b), k).unwrap();
            let s = ring.variable();
            let s_inv = s.invert().unwrap();
            let root = s.sqrt().unwrap().invert().unwrap();
            for m in 0..=4u32 {
                let probe = hermite_probe(&[m], &s).unwrap();
                let integral = probe.integrate(&[0]).unwrap();
                if m % 2 == 1 {
                    assert!(integral.is_zero(), "odd moment {m}");
                    continue;
                }
                let half = m / 2;
                let c = double_factorial_odd(half) / rat(2).pow(half as i32);
                let expected = (0..half)
                    .fold(root.clone(), |acc, _| &acc * &s_inv)
                    .scale(&Scalar::tau_pow(-(half as i32)).scale(&c));
                assert_eq!(single_part(&integral), expected, "b={b} k={k} m={m}");
            }
        }
    }
}
