//! Truncated Taylor expansions in the central variable `s` around a
//! non-zero rational base point `s₀`.
//!
//! A [`JetScalar`] of order `k` stores `a₀ + a₁ε + … + a_{k-1}ε^{k-1}` where
//! `s = s₀ + ε`. These model the quotient of Schwartz functions on the
//! non-trivial characters by the functions flat at `χ_{s₀}`: the center acts
//! through multiplication by the jet of `s`, which is invertible because
//! `s₀ ≠ 0`.
//!
//! The arithmetic operators panic on mismatched base points or orders; the
//! `checked_*` variants report [`JetError::BaseMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalars::rational::{factorial, format_rational};
use crate::scalars::{Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("jets at different base points or orders")]
    BaseMismatch,
    #[error("leading coefficient is not a unit: {0}")]
    NonUnitLeadingCoefficient(ScalarError),
    #[error("base point must be non-zero")]
    SingularBase,
    #[error("jet order must be at least 1")]
    ZeroOrder,
    #[error("expected a nilpotent jet (zero leading coefficient)")]
    NotNilpotent,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The jet ring `J_k(s₀)`: base point and truncation order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetRing {
    pub base: Rational,
    pub order: usize,
}

impl JetRing {
    pub fn new(base: Rational, order: usize) -> Result<Self, JetError> {
        if base.is_zero() {
            return Err(JetError::SingularBase);
        }
        if order == 0 {
            return Err(JetError::ZeroOrder);
        }
        Ok(Self { base, order })
    }

    pub fn zero(&self) -> JetScalar {
        JetScalar::zero(&self.base, self.order)
    }

    pub fn one(&self) -> JetScalar {
        JetScalar::one(&self.base, self.order)
    }

    pub fn constant(&self, c: Scalar) -> JetScalar {
        JetScalar::constant(&self.base, self.order, c)
    }

    pub fn variable(&self) -> JetScalar {
        JetScalar::variable(&self.base, self.order)
    }

    pub fn epsilon(&self) -> JetScalar {
        JetScalar::epsilon(&self.base, self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetScalar {
    base: Rational,
    coeffs: Vec<Scalar>,
}

impl JetScalar {
    pub fn new(base: Rational, coeffs: Vec<Scalar>) -> Result<Self, JetError> {
        if base.is_zero() {
            return Err(JetError::SingularBase);
        }
        if coeffs.is_empty() {
            return Err(JetError::ZeroOrder);
        }
        Ok(Self { base, coeffs })
    }

    pub fn constant(base: &Rational, order: usize, value: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); order];
        coeffs[0] = value;
        Self::new(base.clone(), coeffs).expect("valid base and order")
    }

    pub fn zero(base: &Rational, order: usize) -> Self {
        Self::constant(base, order, Scalar::zero())
    }

    pub fn one(base: &Rational, order: usize) -> Self {
        Self::constant(base, order, Scalar::one())
    }

    /// The jet of the coordinate function `s` itself: `[s₀, 1, 0, …]`.
    pub fn variable(base: &Rational, order: usize) -> Self {
        let mut out = Self::constant(base, order, Scalar::from_rational(base.clone()));
        if order > 1 {
            out.coeffs[1] = Scalar::one();
        }
        out
    }

    /// The nilpotent jet `ε = s - s₀`.
    pub fn epsilon(base: &Rational, order: usize) -> Self {
        let mut out = Self::zero(base, order);
        if order > 1 {
            out.coeffs[1] = Scalar::one();
        }
        out
    }

    /// A constant with the same base point and order as `self`.
    pub fn lift(&self, value: Scalar) -> Self {
        Self::constant(&self.base, self.order(), value)
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn ring(&self) -> JetRing {
        JetRing {
            base: self.base.clone(),
            order: self.order(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.base == other.base && self.order() == other.order()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, JetError> {
        if !self.same_ring(other) {
            return Err(JetError::BaseMismatch);
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, JetError> {
        if !self.same_ring(other) {
            return Err(JetError::BaseMismatch);
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(Scalar::conj).collect(),
        }
    }

    /// Truncated geometric-series inverse.
    pub fn invert(&self) -> Result<Self, JetError> {
        let lead_inv = self.coeffs[0]
            .inv()
            .map_err(JetError::NonUnitLeadingCoefficient)?;
        let k = self.order();
        let mut out = vec![Scalar::zero(); k];
        out[0] = lead_inv.clone();
        for j in 1..k {
            let mut acc = Scalar::zero();
            for i in 1..=j {
                acc = &acc + &(&self.coeffs[i] * &out[j - i]);
            }
            out[j] = -(&acc * &lead_inv);
        }
        Ok(Self {
            base: self.base.clone(),
            coeffs: out,
        })
    }

    /// Square root whose leading coefficient is the branch chosen by
    /// [`Scalar::sqrt_special`].
    pub fn sqrt(&self) -> Result<Self, JetError> {
        let r0 = self.coeffs[0].sqrt_special()?;
        let two_r0_inv = (&r0 * &Scalar::from_int(2))
            .inv()
            .map_err(JetError::NonUnitLeadingCoefficient)?;
        let k = self.order();
        let mut out = vec![Scalar::zero(); k];
        out[0] = r0;
        for j in 1..k {
            let mut acc = self.coeffs[j].clone();
            for i in 1..j {
                acc = &acc - &(&out[i] * &out[j - i]);
            }
            out[j] = &acc * &two_r0_inv;
        }
        Ok(Self {
            base: self.base.clone(),
            coeffs: out,
        })
    }

    pub fn pow(&self, e: i32) -> Result<Self, JetError> {
        let b = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = self.lift(Scalar::one());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &b;
        }
        Ok(acc)
    }

    /// `exp(self)` for a nilpotent jet, as the finite exponential series.
    pub fn exp_nilpotent(&self) -> Result<Self, JetError> {
        if !self.is_nilpotent() {
            return Err(JetError::NotNilpotent);
        }
        let mut acc = self.lift(Scalar::one());
        let mut power = acc.clone();
        for j in 1..self.order() as u32 {
            power = &power * self;
            acc = &acc + &power.scale_rational(&(Rational::one() / factorial(j)));
        }
        Ok(acc)
    }

    /// Substitutes a nilpotent jet `inner` (in some other base/order ring) for
    /// `ε`: returns `Σ aⱼ·innerʲ`.
    pub fn compose(&self, inner: &JetScalar) -> Result<Self, JetError> {
        if !inner.is_nilpotent() {
            return Err(JetError::NotNilpotent);
        }
        let mut acc = inner.lift(Scalar::zero());
        let mut power = inner.lift(Scalar::one());
        for a in &self.coeffs {
            acc = &acc + &power.scale(a);
            power = &power * inner;
        }
        Ok(acc)
    }

    /// Multiplication by `self` on the Taylor-coefficient basis; entry
    /// `(j, m)` is `a_{m-j}` (upper triangular Toeplitz).
    pub fn mult_matrix(&self) -> Vec<Vec<Scalar>> {
        let k = self.order();
        (0..k)
            .map(|j| {
                (0..k)
                    .map(|m| {
                        if m >= j {
                            self.coeffs[m - j].clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Re-expands `s ↦ a(s)` in the coordinate `ŝ = 1/s` around `1/s₀`.
    pub fn involution(&self) -> Self {
        let new_base = Rational::one() / &self.base;
        let k = self.order();
        // ε = 1/(ŝ₀ + δ) - s₀ = Σ_{j≥1} (-1)^j s₀^{j+1} δ^j
        let mut inner = vec![Scalar::zero(); k];
        let mut s_pow = self.base.clone();
        for (j, slot) in inner.iter_mut().enumerate().skip(1) {
            s_pow *= &self.base;
            let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            *slot = Scalar::from_rational(sign * &s_pow);
        }
        let inner = JetScalar::new(new_base, inner).expect("non-zero base");
        self.compose(&inner).expect("inner series is nilpotent")
    }
}

impl fmt::Display for JetScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "jet@{}[", format_rational(&self.base))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add<&JetScalar> for &JetScalar {
    type Output = JetScalar;
    fn add(self, rhs: &JetScalar) -> JetScalar {
        assert!(self.same_ring(rhs), "jet base mismatch");
        JetScalar {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&JetScalar> for &JetScalar {
    type Output = JetScalar;
    fn sub(self, rhs: &JetScalar) -> JetScalar {
        assert!(self.same_ring(rhs), "jet base mismatch");
        JetScalar {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &JetScalar {
    type Output = JetScalar;
    fn neg(self) -> JetScalar {
        JetScalar {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for JetScalar {
    type Output = JetScalar;
    fn neg(self) -> JetScalar {
        -&self
    }
}

impl Mul<&JetScalar> for &JetScalar {
    type Output = JetScalar;
    fn mul(self, rhs: &JetScalar) -> JetScalar {
        assert!(self.same_ring(rhs), "jet base mismatch");
        let k = self.order();
        let mut out = vec![Scalar::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        JetScalar {
            base: self.base.clone(),
            coeffs: out,
        }
    }
}

crate::forward_binops!(JetScalar; Add add, Sub sub, Mul mul);
