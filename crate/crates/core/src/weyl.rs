//! Normal-ordered Weyl algebra and the infinitesimal oscillator
//! representation of `sp(2n)`.
//!
//! Operators are stored as `Σ c_{αβ} x^α ∂^β` with every `x` to the left of
//! every `∂`. Products are re-normal-ordered with the Leibniz rule
//! `∂^β x^γ = Σ_κ C(β,κ)·γ!/(γ-κ)!·x^{γ-κ} ∂^{β-κ}`.
//!
//! Coefficients are generic over [`Coeff`]: plain [`Scalar`]s, jets at a base
//! point, or [`SLaurent`] polynomials in a formal invertible `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::jets::JetScalar;
use crate::linalg::Mat;
use crate::scalars::rational::{binomial, factorial, format_rational, rat};
use crate::scalars::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operators in {0} and {1} variables")]
    ArityMismatch(usize, usize),
    #[error("not an element of sp(2n): {0}")]
    NotInSp(String),
}

/// Coefficient ring for [`WeylOp`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
    /// A constant of the same ring as `self`.
    fn lift(&self, c: &Scalar) -> Self;
}

impl Coeff for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn lift(&self, c: &Scalar) -> Self {
        c.clone()
    }
}

impl Coeff for JetScalar {
    fn is_zero(&self) -> bool {
        JetScalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale_rational(r)
    }
    fn lift(&self, c: &Scalar) -> Self {
        JetScalar::lift(self, c.clone())
    }
}

/// Laurent polynomial `Σ c_k s^k` in a formal invertible central variable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SLaurent {
    terms: BTreeMap<i32, Scalar>,
}

impl SLaurent {
    pub fn monomial(c: Scalar, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn s() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn s_inv() -> Self {
        Self::monomial(Scalar::one(), -1)
    }

    /// Evaluates at `s = s₀ + ε` as a jet of the given order.
    pub fn specialize(&self, base: &Rational, order: usize) -> JetScalar {
        let s = JetScalar::variable(base, order);
        let mut acc = JetScalar::zero(base, order);
        for (&k, c) in &self.terms {
            let p = s.pow(k).expect("s₀ ≠ 0 makes s a unit");
            acc = &acc + &p.scale(c);
        }
        acc
    }
}

impl fmt::Display for SLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                _ => format!("({c})*s^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coeff for SLaurent {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(Scalar::zero);
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Self { terms }
    }
    fn times(&self, other: &Self) -> Self {
        let mut acc = Self::default();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                acc = acc.plus(&Self::monomial(c1 * c2, k1 + k2));
            }
        }
        acc
    }
    fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn scaled(&self, r: &Rational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.scale(r)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
    fn lift(&self, c: &Scalar) -> Self {
        Self::monomial(c.clone(), 0)
    }
}

type Monomial = (Vec<u32>, Vec<u32>);

/// A normal-ordered differential operator `Σ c·x^α ∂^β` in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylOp<C> {
    n: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> WeylOp<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(x_exp: Vec<u32>, d_exp: Vec<u32>, c: C) -> Self {
        assert_eq!(x_exp.len(), d_exp.len(), "exponent length mismatch");
        let mut out = Self::zero(x_exp.len());
        out.add_term(x_exp, d_exp, c);
        out
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::monomial(vec![0; n], vec![0; n], c)
    }

    /// `x_i` with coefficient `unit`.
    pub fn x(n: usize, i: usize, unit: C) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self::monomial(a, vec![0; n], unit)
    }

    /// `∂_i` with coefficient `unit`.
    pub fn d(n: usize, i: usize, unit: C) -> Self {
        let mut b = vec![0; n];
        b[i] = 1;
        Self::monomial(vec![0; n], b, unit)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &C)> {
        self.terms.iter().map(|((a, b), c)| (a.as_slice(), b.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, a: Vec<u32>, b: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e = e.plus(&c);
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, WeylError> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("arity mismatch")
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.negated())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v.times(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v.scaled(r));
        }
        out
    }

    fn same_arity(&self, other: &Self) -> Result<(), WeylError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(WeylError::ArityMismatch(self.n, other.n))
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, WeylError> {
        self.same_arity(other)?;
        let mut out = Self::zero(self.n);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let c = c1.times(c2);
                for (kappa, weight) in leibniz_terms(b1, a2) {
                    let a: Vec<u32> = (0..self.n).map(|i| a1[i] + a2[i] - kappa[i]).collect();
                    let b: Vec<u32> = (0..self.n).map(|i| b1[i] + b2[i] - kappa[i]).collect();
                    out.add_term(a, b, c.scaled(&weight));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, WeylError> {
        Ok(self.multiply(other)?.sub(&other.multiply(self)?))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> WeylOp<D> {
        let mut out = WeylOp::zero(self.n);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(c));
        }
        out
    }
}

/// Multi-indices `κ ≤ min(β, γ)` with weights `Π C(β_i,κ_i)·γ_i!/(γ_i-κ_i)!`.
fn leibniz_terms(beta: &[u32], gamma: &[u32]) -> Vec<(Vec<u32>, Rational)> {
    let mut out = vec![(Vec::new(), Rational::one())];
    for (&b, &g) in beta.iter().zip(gamma) {
        let mut next = Vec::new();
        for (kappa, w) in &out {
            for k in 0..=b.min(g) {
                let weight = binomial(b, k) * factorial(g) / factorial(g - k);
                let mut kk = kappa.clone();
                kk.push(k);
                next.push((kk, w * &weight));
            }
        }
        out = next;
    }
    out
}

impl<C: Coeff> fmt::Display for WeylOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((a, b), c) in &self.terms {
            let mut factors = vec![format!("({c})")];
            for (i, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            for (i, &e) in b.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("d{i}")),
                    _ => factors.push(format!("d{i}^{e}")),
                }
            }
            parts.push(factors.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The symmetrized Euler operator `E = x∂ + 1/2` in one variable.
pub fn euler<C: Coeff>(unit: &C) -> WeylOp<C> {
    WeylOp::monomial(vec![1], vec![1], unit.clone())
        .add(&WeylOp::constant(1, unit.scaled(&crate::scalars::rational::ratio(1, 2))))
}

/// Splits a `2n × 2n` matrix into `(A, B, C)` if it lies in `sp(2n)`.
pub fn sp_blocks(u: &Mat) -> Result<(Mat, Mat, Mat), WeylError> {
    if !u.is_square() || !u.rows().is_multiple_of(2) {
        return Err(WeylError::NotInSp(format!("shape {}x{}", u.rows(), u.cols())));
    }
    let n = u.rows() / 2;
    let a = u.block(0, 0, n, n);
    let b = u.block(0, n, n, n);
    let c = u.block(n, 0, n, n);
    let d = u.block(n, n, n, n);
    if d != -&a.transpose() || !b.is_symmetric() || !c.is_symmetric() {
        return Err(WeylError::NotInSp(u.to_string()));
    }
    Ok((a, b, c))
}

/// The infinitesimal oscillator operator of `u = (A, B; C, -Aᵀ)`:
///
/// `-Σ A_{jk} x_k ∂_j - tr(A)/2 - τ·i·s·xᵀCx + (4τ·i·s)⁻¹ ∂ᵀB∂`.
pub fn dsigma<C: Coeff>(u: &Mat, s: &C, s_inv: &C) -> Result<WeylOp<C>, WeylError> {
    let (a, b, c) = sp_blocks(u)?;
    let n = a.rows();
    let unit = s.lift(&Scalar::one());
    let mut out = WeylOp::constant(n, unit.scaled(&(-a.trace() / rat(2))));
    let unit_vec = |i: usize, j: usize| -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] += 1;
        v[j] += 1;
        v
    };
    for j in 0..n {
        for k in 0..n {
            let ajk = &a[(j, k)];
            if !ajk.is_zero() {
                let mut xe = vec![0; n];
                xe[k] = 1;
                let mut de = vec![0; n];
                de[j] = 1;
                out = out.add(&WeylOp::monomial(xe, de, unit.scaled(&-ajk)));
            }
        }
    }
    let c_coeff = s.times(&s.lift(&(-(&Scalar::tau() * &Scalar::i()))));
    let b_coeff = s_inv.times(&s_inv.lift(
        &(&Scalar::tau_pow(-1) * &Scalar::i()).scale(&crate::scalars::rational::ratio(-1, 4)),
    ));
    for j in 0..n {
        for k in 0..n {
            if !c[(j, k)].is_zero() {
                out = out.add(&WeylOp::monomial(unit_vec(j, k), vec![0; n], c_coeff.scaled(&c[(j, k)])));
            }
            if !b[(j, k)].is_zero() {
                out = out.add(&WeylOp::monomial(vec![0; n], unit_vec(j, k), b_coeff.scaled(&b[(j, k)])));
            }
        }
    }
    Ok(out)
}

/// A basis of `sp(2n, ℚ)` with readable labels.
pub fn sp_basis(n: usize) -> Vec<(String, Mat)> {
    let mut out = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let mut m = Mat::zeros(2 * n, 2 * n);
            m[(j, k)] = rat(1);
            m[(n + k, n + j)] = rat(-1);
            out.push((format!("A{j}{k}"), m));
        }
    }
    for j in 0..n {
        for k in j..n {
            let mut b = Mat::zeros(2 * n, 2 * n);
            b[(j, n + k)] = rat(1);
            b[(k, n + j)] = rat(1);
            out.push((format!("B{j}{k}"), b));
            let mut c = Mat::zeros(2 * n, 2 * n);
            c[(n + j, k)] = rat(1);
            c[(n + k, j)] = rat(1);
            out.push((format!("C{j}{k}"), c));
        }
    }
    out
}

/// Checks `[dσ(u), dσ(v)] = dσ([u, v])` over every ordered pair of basis
/// elements; returns the labels of failing pairs.
pub fn bracket_homomorphism_check<C: Coeff>(n: usize, s: &C, s_inv: &C) -> Vec<String> {
    let basis = sp_basis(n);
    let images: Vec<WeylOp<C>> = basis
        .iter()
        .map(|(_, m)| dsigma(m, s, s_inv).expect("basis lies in sp"))
        .collect();
    let mut failures = Vec::new();
    for (i, (lu, u)) in basis.iter().enumerate() {
        for (j, (lv, v)) in basis.iter().enumerate() {
            let bracket = &(u * v) - &(v * u);
            let rhs = dsigma(&bracket, s, s_inv).expect("sp is closed under brackets");
            let lhs = images[i].commutator(&images[j]).expect("same arity");
            if lhs != rhs {
                failures.push(format!("[{lu},{lv}]"));
            }
        }
    }
    failures
}

/// Polynomial in `E` as coefficients of `E^0, E^1, ...`.
pub type EPoly = Vec<Rational>;

/// `binom(E, r) = E(E-1)…(E-r+1)/r!`.
pub fn euler_binomial(r: u32) -> EPoly {
    let mut acc: EPoly = vec![Rational::one()];
    for j in 0..r {
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (d, c) in acc.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * rat(j as i64);
        }
        acc = next;
    }
    acc.iter().map(|c| c / factorial(r)).collect()
}

/// Substitutes `E ↦ -E`.
pub fn epoly_negate_variable(p: &EPoly) -> EPoly {
    p.iter()
        .enumerate()
        .map(|(d, c)| if d % 2 == 0 { c.clone() } else { -c.clone() })
        .collect()
}

pub fn epoly_mul(a: &EPoly, b: &EPoly) -> EPoly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_epoly(out)
}

pub fn epoly_add(a: &EPoly, b: &EPoly) -> EPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim_epoly(out)
}

fn trim_epoly(mut p: EPoly) -> EPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn format_epoly(p: &EPoly) -> String {
    let mut parts = Vec::new();
    for (d, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = format_rational(c);
        parts.push(match d {
            0 => coeff,
            1 if c.is_one() => "E".to_string(),
            1 => format!("{coeff}*E"),
            _ if c.is_one() => format!("E^{d}"),
            _ => format!("{coeff}*E^{d}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// The operator `p(E)` in the Weyl algebra of one variable.
pub fn epoly_to_weyl<C: Coeff>(p: &EPoly, unit: &C) -> WeylOp<C> {
    let e = euler(unit);
    let mut acc = WeylOp::zero(1);
    let mut power = WeylOp::constant(1, unit.clone());
    for c in p {
        acc = acc.add(&power.scale_rational(c));
        power = power.multiply(&e).expect("one variable");
    }
    acc
}

/// The jet factor of `σ(J)` relative to the fixed-base transform:
/// `σ_s(J) = ζ·(1 + ε/s₀)^E·σ_{s₀}(J)`, entry `(j, m)` equal to
/// `binom(E, m-j)/s₀^{m-j}` in the upper-triangular convention.
pub fn sigma_j_jet_matrix(s0: &Rational, order: usize) -> Vec<Vec<EPoly>> {
    (0..order)
        .map(|j| {
            (0..order)
                .map(|m| {
                    if m < j {
                        return vec![Rational::zero()];
                    }
                    let r = (m - j) as u32;
                    let scale = Rational::one() / num_traits::pow(s0.clone(), r as usize);
                    euler_binomial(r).iter().map(|c| c * &scale).collect()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::ratio;

    fn x() -> WeylOp<Scalar> {
        WeylOp::x(1, 0, Scalar::one())
    }

    fn d() -> WeylOp<Scalar> {
        WeylOp::d(1, 0, Scalar::one())
    }

    fn mono(a: u32, b: u32, c: i64) -> WeylOp<Scalar> {
        WeylOp::monomial(vec![a], vec![b], Scalar::from_int(c))
    }

    fn pow(op: &WeylOp<Scalar>, e: u32) -> WeylOp<Scalar> {
        (0..e).fold(WeylOp::constant(1, Scalar::one()), |acc, _| acc.multiply(op).unwrap())
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(d().multiply(&x()).unwrap(), mono(1, 1, 1).add(&mono(0, 0, 1)));
        assert_eq!(x().multiply(&x()).unwrap(), mono(2, 0, 1));
    }

    #[test]
    fn second_order_leibniz() {
        // ∂²x²f = x²f'' + 4xf' + 2f
        let lhs = pow(&d(), 2).multiply(&pow(&x(), 2)).unwrap();
        let expect = mono(2, 2, 1).add(&mono(1, 1, 4)).add(&mono(0, 0, 2));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn sl2_commutators() {
        let e = euler(&Scalar::one());
        let x2 = pow(&x(), 2);
        let d2 = pow(&d(), 2);
        assert_eq!(d2.commutator(&x2).unwrap(), e.scale_rational(&rat(4)));
        assert_eq!(e.commutator(&x2).unwrap(), x2.scale_rational(&rat(2)));
        assert_eq!(e.commutator(&d2).unwrap(), d2.scale_rational(&rat(-2)));
        assert!(x().commutator(&x2).unwrap().is_zero());
    }

    #[test]
    fn arity_mismatch() {
        let a = WeylOp::x(2, 0, Scalar::one());
        assert_eq!(a.multiply(&x()), Err(WeylError::ArityMismatch(2, 1)));
    }

    fn sl2(name: &str) -> Mat {
        match name {
            "X" => Mat::from_i64(&[&[0, 1], &[0, 0]]),
            "Y" => Mat::from_i64(&[&[0, 0], &[1, 0]]),
            _ => Mat::from_i64(&[&[1, 0], &[0, -1]]),
        }
    }

    #[test]
    fn dsigma_on_sl2_triple() {
        let s = SLaurent::s();
        let si = SLaurent::s_inv();
        let y = dsigma(&sl2("Y"), &s, &si).unwrap();
        let expect_y = WeylOp::monomial(vec![2], vec![0], SLaurent::monomial(-(&Scalar::tau() * &Scalar::i()), 1));
        assert_eq!(y, expect_y);
        let h = dsigma(&sl2("H"), &s, &si).unwrap();
        assert_eq!(h, euler(&SLaurent::monomial(Scalar::one(), 0)).neg());
        let x = dsigma(&sl2("X"), &s, &si).unwrap();
        let four_pi_i_inv = (&Scalar::from_int(4) * &(&Scalar::tau() * &Scalar::i())).inv().unwrap();
        assert_eq!(x, WeylOp::monomial(vec![0], vec![2], SLaurent::monomial(four_pi_i_inv, -1)));
        assert_eq!(x.commutator(&y).unwrap(), h);
        assert_eq!(h.commutator(&x).unwrap(), x.scale_rational(&rat(2)));
        assert_eq!(h.commutator(&y).unwrap(), y.scale_rational(&rat(-2)));
    }

    #[test]
    fn dsigma_rejects_non_sp() {
        let bad = Mat::from_i64(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            dsigma(&bad, &Scalar::one(), &Scalar::one()),
            Err(WeylError::NotInSp(_))
        ));
        let odd = Mat::from_i64(&[&[1]]);
        assert!(dsigma(&odd, &Scalar::one(), &Scalar::one()).is_err());
    }

    #[test]
    fn bracket_check_formal_s() {
        for n in 1..=2 {
            assert!(bracket_homomorphism_check(n, &SLaurent::s(), &SLaurent::s_inv()).is_empty());
        }
        assert_eq!(sp_basis(2).len(), 10);
    }

    #[test]
    fn euler_binomials() {
        assert_eq!(euler_binomial(0), vec![rat(1)]);
        assert_eq!(euler_binomial(1), vec![rat(0), rat(1)]);
        assert_eq!(euler_binomial(2), vec![rat(0), ratio(-1, 2), ratio(1, 2)]);
        assert_eq!(format_epoly(&euler_binomial(2)), "-1/2*E + 1/2*E^2");
    }

    #[test]
    fn sigma_j_factor_is_inverted_by_its_mirror() {
        // Σ_r binom(E, r)·binom(-E, m-r) = δ_{m0}
        for m in 0..6u32 {
            let mut acc = vec![Rational::zero()];
            for r in 0..=m {
                let t = epoly_mul(&euler_binomial(r), &epoly_negate_variable(&euler_binomial(m - r)));
                acc = epoly_add(&acc, &t);
            }
            let expect = if m == 0 { vec![rat(1)] } else { vec![rat(0)] };
            assert_eq!(acc, expect);
        }
        let m = sigma_j_jet_matrix(&rat(1), 3);
        assert_eq!(format_epoly(&m[0][1]), "E");
        assert_eq!(format_epoly(&m[0][2]), "-1/2*E + 1/2*E^2");
        assert_eq!(format_epoly(&m[2][0]), "0");
    }
}
