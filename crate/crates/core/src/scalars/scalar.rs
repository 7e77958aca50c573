//! The coefficient tower every other module computes in.
//!
//! A [`Scalar`] is a finite sum `Σ c·√d·τ^k` with `c ∈ ℚ(ζ₈)`, `d` an odd
//! square-free positive integer and `τ` a formal invertible transcendental
//! standing for π. A factor of 2 under a root is absorbed into the cyclotomic
//! part (`√2 = ζ - ζ³`), so the representation is canonical: the odd
//! square-free roots are linearly independent over ℚ(ζ₈) and τ is free.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::Cyclo;
use super::rational::{gcd_u64, prime_factors, square_free_split, Rational};
use super::ScalarError;

/// `√d` for a square-free positive integer `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SqrtSymbol(u64);

impl SqrtSymbol {
    /// Canonicalizes an arbitrary positive integer radicand: returns the
    /// rational multiplier and the square-free symbol.
    pub fn canonical(n: u64) -> (u64, SqrtSymbol) {
        let (m, d) = square_free_split(n);
        (m, SqrtSymbol(d))
    }

    pub fn radicand(&self) -> u64 {
        self.0
    }

    /// `√a · √b = q · √c`.
    pub fn product(self, other: SqrtSymbol) -> (u64, SqrtSymbol) {
        let g = gcd_u64(self.0, other.0);
        (g, SqrtSymbol((self.0 / g) * (other.0 / g)))
    }
}

type Key = (u64, i32);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Key, Cyclo>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_cyclo(Cyclo::one())
    }

    pub fn from_cyclo(c: Cyclo) -> Self {
        Self::monomial(c, 1, 0)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_cyclo(Cyclo::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_cyclo(Cyclo::from_int(n))
    }

    pub fn zeta_pow(k: i64) -> Self {
        Self::from_cyclo(Cyclo::zeta_pow(k))
    }

    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    pub fn tau_pow(k: i32) -> Self {
        Self::monomial(Cyclo::one(), 1, k)
    }

    pub fn tau() -> Self {
        Self::tau_pow(1)
    }

    /// `c · √radicand · τ^tau_power` for an arbitrary positive radicand.
    pub fn monomial(c: Cyclo, radicand: u64, tau_power: i32) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        let mut out = Self::zero();
        out.push_term(c, radicand, tau_power);
        out
    }

    /// Adds `c·√n·τ^k`, reducing the radicand to odd square-free form.
    fn push_term(&mut self, c: Cyclo, n: u64, k: i32) {
        if c.is_zero() {
            return;
        }
        let (m, d) = square_free_split(n);
        let mut c = c.scale(&Rational::from_integer(BigInt::from(m)));
        let mut d = d;
        if d % 2 == 0 {
            d /= 2;
            c = c * Cyclo::sqrt2();
        }
        let entry = self.terms.entry((d, k)).or_insert_with(Cyclo::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(d, k));
        }
    }

    /// Terms as `(radicand, tau_power, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i32, &Cyclo)> {
        self.terms.iter().map(|(&(d, k), c)| (d, k, c))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, i32, Cyclo)>) -> Self {
        let mut out = Self::zero();
        for (d, k, c) in terms {
            assert!(d > 0, "radicand must be positive");
            out.push_term(c, d, k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_cyclo().is_some_and(Cyclo::is_one)
    }

    /// The value when it lies in ℚ(ζ₈) (no roots, no τ).
    pub fn as_cyclo(&self) -> Option<&Cyclo> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&(1, 0)),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        self.as_cyclo().and_then(|c| c.as_rational().cloned())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.scale(r))).collect(),
        }
    }

    pub fn mul_cyclo(&self, c: &Cyclo) -> Self {
        self * &Self::from_cyclo(c.clone())
    }

    /// Complex conjugation: ζ ↦ ζ⁻¹, fixing roots of positive rationals and τ.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }

    /// Flips the sign of every term whose radicand is divisible by `p`.
    fn radical_conjugate(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(d, k), c)| ((d, k), if d % p == 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByNonUnit("zero".into()));
        }
        let tau_powers: Vec<i32> = {
            let mut v: Vec<i32> = self.terms.keys().map(|&(_, k)| k).collect();
            v.dedup();
            v.sort_unstable();
            v.dedup();
            v
        };
        if tau_powers.len() != 1 {
            return Err(ScalarError::DivisionByNonUnit(format!(
                "Laurent polynomial in tau with {} monomials",
                tau_powers.len()
            )));
        }
        let k = tau_powers[0];
        let base = self * &Self::tau_pow(-k);
        // Eliminate one prime at a time: a · σ_p(a) has no √p.
        let mut cofactor = Self::one();
        let mut current = base;
        loop {
            let prime = current
                .terms
                .keys()
                .find(|&&(d, _)| d > 1)
                .map(|&(d, _)| prime_factors(d)[0]);
            let Some(p) = prime else { break };
            let conj = current.radical_conjugate(p);
            cofactor = &cofactor * &conj;
            current = &current * &conj;
            if current.is_zero() {
                return Err(ScalarError::DivisionByNonUnit("zero divisor".into()));
            }
        }
        let c = current
            .as_cyclo()
            .expect("radical elimination leaves an element of Q(zeta8)");
        let cinv = c.inv()?;
        Ok(&(&cofactor * &Self::from_cyclo(cinv)) * &Self::tau_pow(-k))
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Square root of a positive rational as `rational · √d`.
    pub fn sqrt_positive_rational(q: &Rational) -> Result<Self, ScalarError> {
        if !q.is_positive() {
            return Err(ScalarError::NegativeRadicand(q.to_string()));
        }
        // √(p/r) = √(p·r) / r
        let prod = q.numer() * q.denom();
        let n = prod
            .to_u64()
            .ok_or_else(|| ScalarError::RadicandTooLarge(prod.to_string()))?;
        let den = Rational::from_integer(q.denom().clone());
        Ok(Self::monomial(Cyclo::one(), n, 0).scale(&(Rational::one() / den)))
    }

    /// Square root restricted to the branches the oscillator formulas need.
    ///
    /// Accepts `m·τ^{2j}` with `m > 0` rational (principal root) and
    /// `±i·m·τ^{2j}` (Fresnel branch `√(i·m) = ζ√m`, `√(-i·m) = ζ⁻¹√m`).
    pub fn sqrt_special(&self) -> Result<Self, ScalarError> {
        let undetermined = || ScalarError::BranchUndetermined(self.to_string());
        if self.terms.len() != 1 {
            return Err(undetermined());
        }
        let (&(d, k), c) = self.terms.iter().next().expect("one term");
        if d != 1 || k % 2 != 0 {
            return Err(undetermined());
        }
        let tau = Self::tau_pow(k / 2);
        if let Some(r) = c.as_rational() {
            if r.is_positive() {
                return Ok(&Self::sqrt_positive_rational(r)? * &tau);
            }
            return Err(undetermined());
        }
        match c.gaussian_parts() {
            Some((re, im)) if re.is_zero() => {
                let root = Self::sqrt_positive_rational(&im.abs())?;
                let phase = if im.is_positive() {
                    Self::zeta_pow(1)
                } else {
                    Self::zeta_pow(-1)
                };
                Ok(&(&phase * &root) * &tau)
            }
            _ => Err(undetermined()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(d, k), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !(c.is_one() && (d > 1 || k != 0)) {
                let text = c.to_string();
                if text.contains(' ') {
                    factors.push(format!("({text})"));
                } else {
                    factors.push(text);
                }
            }
            if d > 1 {
                factors.push(format!("sqrt({d})"));
            }
            match k {
                0 => {}
                1 => factors.push("tau".into()),
                _ => factors.push(format!("tau^{k}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (&(d, k), c) in &rhs.terms {
            let entry = out.terms.entry((d, k)).or_insert_with(Cyclo::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                out.terms.remove(&(d, k));
            }
        }
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(d1, k1), c1) in &self.terms {
            for (&(d2, k2), c2) in &rhs.terms {
                let (m, sym) = SqrtSymbol(d1).product(SqrtSymbol(d2));
                let c = (c1 * c2).scale(&Rational::from_integer(BigInt::from(m)));
                out.push_term(c, sym.radicand(), k1 + k2);
            }
        }
        out
    }
}

crate::forward_binops!(Scalar; Add add, Sub sub, Mul mul);

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<Cyclo> for Scalar {
    fn from(c: Cyclo) -> Self {
        Scalar::from_cyclo(c)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
