//! The cyclotomic field ℚ(ζ) with ζ a primitive 8th root of unity.
//!
//! Elements are stored in the power basis `a + bζ + cζ² + dζ³`, reduced with
//! `ζ⁴ = -1`. Under the standard embedding ζ = e^{iπ/4}, so ζ² = i and
//! ζ - ζ³ = √2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rat, Rational};
use super::ScalarError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyclo {
    coords: [Rational; 4],
}

impl Cyclo {
    pub fn new(coords: [Rational; 4]) -> Self {
        Self { coords }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self {
            coords: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `re + im·i` for a Gaussian rational.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self {
            coords: [re, Rational::zero(), im, Rational::zero()],
        }
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut coords = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        if k < 4 {
            coords[k] = Rational::one();
        } else {
            coords[k - 4] = -Rational::one();
        }
        Self { coords }
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    /// √2 = ζ - ζ³ = ζ + ζ⁷.
    pub fn sqrt2() -> Self {
        Self::zeta_pow(1) + Self::zeta_pow(7)
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// `(re, im)` when the element lies in ℚ(i).
    pub fn gaussian_parts(&self) -> Option<(&Rational, &Rational)> {
        if self.coords[1].is_zero() && self.coords[3].is_zero() {
            Some((&self.coords[0], &self.coords[2]))
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            coords: [
                &self.coords[0] * r,
                &self.coords[1] * r,
                &self.coords[2] * r,
                &self.coords[3] * r,
            ],
        }
    }

    /// Galois automorphism ζ ↦ ζ^k (k odd).
    pub fn galois(&self, k: i64) -> Self {
        debug_assert!(k % 2 != 0);
        let mut out = Self::zero();
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                out = out + Self::zeta_pow(k * j as i64).scale(c);
            }
        }
        out
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByNonUnit("zero in Q(zeta8)".into()));
        }
        let others = self.galois(3) * self.galois(5) * self.galois(7);
        let norm = self * &others;
        let n = norm
            .as_rational()
            .expect("field norm of Q(zeta8) element is rational")
            .clone();
        Ok(others.scale(&(Rational::one() / n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match k {
                0 => mag,
                _ if c.abs().is_one() => format!("zeta^{k}"),
                _ => format!("{mag}*zeta^{k}"),
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (idx, (sign, body)) in parts.iter().enumerate() {
            match (idx, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        Cyclo {
            coords: [
                &self.coords[0] + &rhs.coords[0],
                &self.coords[1] + &rhs.coords[1],
                &self.coords[2] + &rhs.coords[2],
                &self.coords[3] + &rhs.coords[3],
            ],
        }
    }
}

impl Sub<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let mut acc: [Rational; 4] = Default::default();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let k = i + j;
                if k < 4 {
                    acc[k] += prod;
                } else {
                    acc[k - 4] -= prod;
                }
            }
        }
        Cyclo { coords: acc }
    }
}

crate::forward_binops!(Cyclo; Add add, Sub sub, Mul mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::ratio;

    #[test]
    fn zeta_fourth_power_is_minus_one() {
        assert_eq!(Cyclo::zeta().pow(4), Cyclo::from_int(-1));
        assert_eq!(Cyclo::zeta().pow(8), Cyclo::one());
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let r = Cyclo::zeta() + Cyclo::zeta_pow(7);
        assert_eq!(&r * &r, Cyclo::from_int(2));
        assert_eq!(Cyclo::sqrt2(), r);
    }

    #[test]
    fn inverse_is_two_sided() {
        let c = Cyclo::new([ratio(1, 2), rat(-3), rat(0), ratio(5, 7)]);
        let inv = c.inv().unwrap();
        assert_eq!(&c * &inv, Cyclo::one());
        assert!(Cyclo::zero().inv().is_err());
    }

    #[test]
    fn conjugation_negates_i() {
        assert_eq!(Cyclo::i().conj(), -Cyclo::i());
        assert_eq!(Cyclo::sqrt2().conj(), Cyclo::sqrt2());
    }

    #[test]
    fn display_is_readable() {
        let c = Cyclo::new([rat(1), rat(0), ratio(-1, 2), rat(0)]);
        assert_eq!(c.to_string(), "1 - 1/2*zeta^2");
    }
}
