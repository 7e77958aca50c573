//! Polynomial × Gaussian-phase vectors with exact Gaussian and Fresnel
//! integration.
//!
//! A [`GaussVector`] in `n` variables is a finite sum of terms
//! `p(x)·e^{τ(xᵀQx + lᵀx + c)}` where `τ` stands for π, the phase data
//! `Q, l, c` are Gaussian rationals, and `p` has [`JetScalar`] coefficients.
//! Dependence on the central variable `s = s₀ + ε` is never stored in the
//! phase: multiplying by `e^{τ·σ·q(x)}` for a jet `σ` puts `σ₀·q` into the
//! phase and expands `e^{τ(σ-σ₀)q}` as a finite series into the polynomial.
//! The constant `c` is a formal tag for the transcendental factor `e^{πc}`;
//! its imaginary part is reduced modulo 2.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::jets::{JetError, JetRing, JetScalar};
use crate::linalg::Mat;
use crate::scalars::rational::{double_factorial_odd, factorial, rat};
use crate::scalars::{Cyclo, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("jet rings differ")]
    RingMismatch,
    #[error("substitution matrix is singular")]
    SingularSubstitution,
    #[error("phase is not integrable: {0}")]
    NonIntegrablePhase(String),
    #[error("phase coefficient outside Q(i): {0}")]
    NonGaussianCoefficient(String),
    #[error("exponent has degree above two")]
    NonQuadraticExponent,
    #[error("dilation factor must have a rational leading term")]
    NonRationalDilation,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

fn gaussian_cyclo(c: &Cyclo) -> Result<(), GaussError> {
    match c.gaussian_parts() {
        Some(_) => Ok(()),
        None => Err(GaussError::NonGaussianCoefficient(c.to_string())),
    }
}

/// Reduces the imaginary part of a tag modulo 2 (`e^{2πi} = 1`).
fn canonical_tag(c: &Cyclo) -> Cyclo {
    let (re, im) = c.gaussian_parts().expect("tags lie in Q(i)");
    let two = rat(2);
    let q = (im / &two).floor();
    Cyclo::gaussian(re.clone(), im - q * two)
}

fn monomial_exps(n: usize, i: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] += 1;
    e[j] += 1;
    e
}

fn unit_exps(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Polynomial in `n` variables with jet coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    n: usize,
    ring: JetRing,
    terms: BTreeMap<Vec<u32>, JetScalar>,
}

impl Poly {
    pub fn zero(n: usize, ring: &JetRing) -> Self {
        Self {
            n,
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: JetScalar) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn one(n: usize, ring: &JetRing) -> Self {
        Self::constant(n, ring.one())
    }

    pub fn monomial(exps: Vec<u32>, c: JetScalar) -> Self {
        let mut out = Self::zero(exps.len(), &c.ring());
        out.add_term(exps, c);
        out
    }

    pub fn var(n: usize, i: usize, ring: &JetRing) -> Self {
        Self::monomial(unit_exps(n, i), ring.one())
    }

    /// `Σ coeffs_i·x_i + constant` with scalar coefficients.
    pub fn linear(ring: &JetRing, coeffs: &[Scalar], constant: Scalar) -> Self {
        let n = coeffs.len();
        let mut out = Self::constant(n, ring.constant(constant));
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(unit_exps(n, i), ring.constant(c.clone()));
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &JetRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &JetScalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coeff(&self, exps: &[u32]) -> JetScalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: JetScalar) {
        debug_assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale_scalar(&Scalar::from_int(-1))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.n, &self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &JetScalar) -> Poly {
        let mut out = Poly::zero(self.n, &self.ring);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.n, &self.ring);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.scale(c));
        }
        out
    }

    pub fn conj(&self) -> Poly {
        Poly {
            n: self.n,
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n, &self.ring);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c.scale_rational(&rat(e[i] as i64)));
            }
        }
        out
    }

    /// Replaces each variable `x_i` by `images[i]`; all images share one
    /// target arity.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.n, "one image per variable");
        let target = images.first().map_or(0, Poly::arity);
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target, &self.ring), p.clone()])
            .collect();
        let mut out = Poly::zero(target, &self.ring);
        for (e, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("non-empty").mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    acc = acc.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Reindexes variables into an arity-`new_n` polynomial.
    pub fn embed(&self, new_n: usize, index: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero(new_n, &self.ring);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_n];
            for (i, &k) in e.iter().enumerate() {
                e2[index(i)] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// `exp(τ·self)` when every coefficient is nilpotent.
    pub fn exp_tau_nilpotent(&self) -> Result<Poly, GaussError> {
        if self.terms.values().any(|c| !c.is_nilpotent()) {
            return Err(JetError::NotNilpotent.into());
        }
        let arg = self.scale_scalar(&Scalar::tau());
        let mut acc = Poly::one(self.n, &self.ring);
        let mut power = acc.clone();
        for j in 1..self.ring.order as u32 {
            power = power.mul(&arg);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale_scalar(&Scalar::from_rational(Rational::one() / factorial(j))));
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("{c}");
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*x{i}")),
                        _ => s.push_str(&format!("*x{i}^{k}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exponent data `xᵀQx + lᵀx + c` over ℚ(i); the represented factor is
/// `e^{τ(xᵀQx + lᵀx + c)}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussPhase {
    n: usize,
    q: Vec<Cyclo>,
    l: Vec<Cyclo>,
    c: Cyclo,
}

impl GaussPhase {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            q: vec![Cyclo::zero(); n * n],
            l: vec![Cyclo::zero(); n],
            c: Cyclo::zero(),
        }
    }

    /// `q` is row-major `n × n` and must be symmetric.
    pub fn new(n: usize, q: Vec<Cyclo>, l: Vec<Cyclo>, c: Cyclo) -> Result<Self, GaussError> {
        if q.len() != n * n {
            return Err(GaussError::DimensionMismatch { expected: n * n, got: q.len() });
        }
        if l.len() != n {
            return Err(GaussError::DimensionMismatch { expected: n, got: l.len() });
        }
        for v in q.iter().chain(&l).chain(std::iter::once(&c)) {
            gaussian_cyclo(v)?;
        }
        for i in 0..n {
            for j in 0..n {
                if q[i * n + j] != q[j * n + i] {
                    return Err(GaussError::NonGaussianCoefficient("asymmetric quadratic part".into()));
                }
            }
        }
        Ok(Self { n, q, l, c: canonical_tag(&c) })
    }

    /// `i·xᵀQx` for a rational symmetric `Q` (a chirp exponent).
    pub fn imaginary_quadratic(q: &Mat) -> Self {
        let n = q.rows();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.q[i * n + j] = Cyclo::gaussian(Rational::zero(), q[(i, j)].clone());
            }
        }
        out
    }

    /// `xᵀQx` for a rational symmetric `Q`.
    pub fn real_quadratic(q: &Mat) -> Self {
        let n = q.rows();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.q[i * n + j] = Cyclo::from_rational(q[(i, j)].clone());
            }
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn quad(&self, i: usize, j: usize) -> &Cyclo {
        &self.q[i * self.n + j]
    }

    pub fn linear(&self, i: usize) -> &Cyclo {
        &self.l[i]
    }

    pub fn constant(&self) -> &Cyclo {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().chain(&self.l).all(Cyclo::is_zero) && self.c.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "phase arity mismatch");
        Self {
            n: self.n,
            q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
            l: self.l.iter().zip(&other.l).map(|(a, b)| a + b).collect(),
            c: canonical_tag(&(&self.c + &other.c)),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            n: self.n,
            q: self.q.iter().map(Cyclo::conj).collect(),
            l: self.l.iter().map(Cyclo::conj).collect(),
            c: canonical_tag(&self.c.conj()),
        }
    }

    /// The exponent as a polynomial with constant-jet coefficients.
    pub fn as_poly(&self, ring: &JetRing) -> Poly {
        let n = self.n;
        let mut out = Poly::constant(n, ring.constant(Scalar::from_cyclo(self.c.clone())));
        for i in 0..n {
            out.add_term(unit_exps(n, i), ring.constant(Scalar::from_cyclo(self.l[i].clone())));
            for j in 0..n {
                out.add_term(monomial_exps(n, i, j), ring.constant(Scalar::from_cyclo(self.quad(i, j).clone())));
            }
        }
        out
    }

    /// Splits a degree ≤ 2 polynomial into the phase of its leading jet
    /// coefficients and the remaining nilpotent polynomial.
    pub fn split_exponent(e: &Poly) -> Result<(GaussPhase, Poly), GaussError> {
        let n = e.arity();
        let mut phase = GaussPhase::zero(n);
        let mut rest = Poly::zero(n, e.ring());
        for (exps, c) in e.terms() {
            let lead = c.leading();
            let cy = if lead.is_zero() {
                Cyclo::zero()
            } else {
                let cy = lead
                    .as_cyclo()
                    .ok_or_else(|| GaussError::NonGaussianCoefficient(lead.to_string()))?
                    .clone();
                gaussian_cyclo(&cy)?;
                cy
            };
            let mut nil = c.clone();
            nil = &nil - &c.lift(Scalar::from_cyclo(cy.clone()));
            rest.add_term(exps.to_vec(), nil);
            let vars: Vec<usize> = exps
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                .collect();
            match vars.as_slice() {
                [] => phase.c = &phase.c + &cy,
                [i] => phase.l[*i] = &phase.l[*i] + &cy,
                [i, j] if i == j => phase.q[i * n + i] = &phase.q[i * n + i] + &cy,
                [i, j] => {
                    let half = cy.scale(&crate::scalars::rational::ratio(1, 2));
                    phase.q[i * n + j] = &phase.q[i * n + j] + &half;
                    phase.q[j * n + i] = &phase.q[j * n + i] + &half;
                }
                _ => return Err(GaussError::NonQuadraticExponent),
            }
        }
        phase.c = canonical_tag(&phase.c);
        Ok((phase, rest))
    }

    /// Real part of the quadratic form is negative semidefinite.
    pub fn is_integrable(&self) -> bool {
        let re = Mat::from_fn(self.n, self.n, |i, j| {
            self.quad(i, j).gaussian_parts().expect("Q(i) entry").0.clone()
        });
        neg_semidefinite(&re)
    }

    fn remove_var(&self, j: usize) -> GaussPhase {
        let n = self.n;
        let keep: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let mut q = Vec::with_capacity((n - 1) * (n - 1));
        for &a in &keep {
            for &b in &keep {
                q.push(self.quad(a, b).clone());
            }
        }
        GaussPhase {
            n: n - 1,
            q,
            l: keep.iter().map(|&a| self.l[a].clone()).collect(),
            c: self.c.clone(),
        }
    }
}

/// All principal minors of `-m` are non-negative.
fn neg_semidefinite(m: &Mat) -> bool {
    let n = m.rows();
    let neg = -m;
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let minor = Mat::from_fn(idx.len(), idx.len(), |a, b| neg[(idx[a], idx[b])].clone());
        !minor.det().is_negative()
    })
}

impl fmt::Display for GaussPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.q.iter().map(|c| format!("({c})")).collect();
        let l: Vec<String> = self.l.iter().map(|c| format!("({c})")).collect();
        write!(f, "exp(tau*[Q={}; l={}; c={}])", q.join(","), l.join(","), self.c)
    }
}

/// Finite sum of polynomial × Gaussian-phase terms in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussVector {
    n: usize,
    ring: JetRing,
    terms: BTreeMap<GaussPhase, Poly>,
}

impl GaussVector {
    pub fn zero(n: usize, ring: &JetRing) -> Self {
        Self {
            n,
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut out = Self::zero(p.arity(), p.ring());
        out.add_term(GaussPhase::zero(p.arity()), p);
        out
    }

    pub fn from_term(phase: GaussPhase, p: Poly) -> Self {
        assert_eq!(phase.arity(), p.arity(), "term arity mismatch");
        let mut out = Self::zero(p.arity(), p.ring());
        out.add_term(phase, p);
        out
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &JetRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GaussPhase, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, phase: GaussPhase, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&phase) {
            Some(e) => {
                *e = e.add(&p);
                if e.is_zero() {
                    self.terms.remove(&phase);
                }
            }
            None => {
                self.terms.insert(phase, p);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GaussError> {
        if self.n != other.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: other.n });
        }
        if self.ring != other.ring {
            return Err(GaussError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GaussError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (ph, p) in &other.terms {
            out.add_term(ph.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("compatible vectors")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_scalar(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &JetScalar) -> Self {
        self.map_polys(|p| p.scale(c))
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Self {
        self.map_polys(|p| p.scale_scalar(c))
    }

    fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(self.n, &self.ring);
        for (ph, p) in &self.terms {
            out.add_term(ph.clone(), f(p));
        }
        out
    }

    pub fn mul_poly(&self, q: &Poly) -> Result<Self, GaussError> {
        if q.arity() != self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: q.arity() });
        }
        Ok(self.map_polys(|p| p.mul(q)))
    }

    /// Multiplies by `e^{τ·phase}` for anchored ℚ(i) phase data.
    pub fn mul_phase(&self, phase: &GaussPhase) -> Result<Self, GaussError> {
        if phase.arity() != self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: phase.arity() });
        }
        let mut out = Self::zero(self.n, &self.ring);
        for (ph, p) in &self.terms {
            out.add_term(ph.add(phase), p.clone());
        }
        Ok(out)
    }

    /// Multiplies by `e^{τ·e(x)}` for a jet-coefficient exponent of degree
    /// at most two whose leading coefficients lie in ℚ(i).
    pub fn mul_exp(&self, e: &Poly) -> Result<Self, GaussError> {
        if e.arity() != self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: e.arity() });
        }
        let (phase, rest) = GaussPhase::split_exponent(e)?;
        self.mul_phase(&phase)?.mul_poly(&rest.exp_tau_nilpotent()?)
    }

    /// Multiplies by `e^{τ·σ·q(x)}` where `q` is given as phase data and `σ`
    /// is a jet with rational leading term.
    /// The constant of `q` must be real: imaginary tags are only defined
    /// mod `2i`.
    pub fn mul_s_phase(&self, q: &GaussPhase, sigma: &JetScalar) -> Result<Self, GaussError> {
        if q.constant().gaussian_parts().is_some_and(|(_, im)| !im.is_zero()) {
            return Err(GaussError::NonGaussianCoefficient("scaled phase with a constant tag".into()));
        }
        self.mul_exp(&q.as_poly(&self.ring).scale(sigma))
    }

    /// Composes with `x ↦ images(x)`, each image affine in the new variables.
    pub fn substitute(&self, images: &[Poly]) -> Result<Self, GaussError> {
        if images.len() != self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: images.len() });
        }
        if images.iter().any(|p| p.degree() > 1) {
            return Err(GaussError::NonQuadraticExponent);
        }
        let target = images.first().map_or(self.n, Poly::arity);
        let mut out = Self::zero(target, &self.ring);
        for (ph, p) in &self.terms {
            let poly = if images.is_empty() {
                p.clone()
            } else {
                p.substitute(images)
            };
            let exponent = if images.is_empty() {
                ph.as_poly(&self.ring)
            } else {
                ph.as_poly(&self.ring).substitute(images)
            };
            let piece = GaussVector::from_poly(poly).mul_exp(&exponent)?;
            for (ph2, p2) in piece.terms {
                out.add_term(ph2, p2);
            }
        }
        Ok(out)
    }

    /// `v(x - a)`.
    pub fn translate(&self, a: &[Rational]) -> Result<Self, GaussError> {
        if a.len() != self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: a.len() });
        }
        let images: Vec<Poly> = (0..self.n)
            .map(|i| {
                let mut coeffs = vec![Scalar::zero(); self.n];
                coeffs[i] = Scalar::one();
                Poly::linear(&self.ring, &coeffs, Scalar::from_rational(-a[i].clone()))
            })
            .collect();
        self.substitute(&images)
    }

    /// `v(Bx)` for an invertible rational matrix `B`.
    pub fn linear_substitute(&self, b: &Mat) -> Result<Self, GaussError> {
        if b.rows() != self.n || b.cols() != self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: b.rows() });
        }
        if b.det().is_zero() {
            return Err(GaussError::SingularSubstitution);
        }
        let images: Vec<Poly> = (0..self.n)
            .map(|i| {
                let coeffs: Vec<Scalar> = b.row(i).iter().cloned().map(Scalar::from_rational).collect();
                Poly::linear(&self.ring, &coeffs, Scalar::zero())
            })
            .collect();
        self.substitute(&images)
    }

    /// `v(λx)` for a jet `λ` with rational non-zero leading term.
    pub fn dilate(&self, lambda: &JetScalar) -> Result<Self, GaussError> {
        let lead = lambda.leading().as_rational().ok_or(GaussError::NonRationalDilation)?;
        if lead.is_zero() {
            return Err(GaussError::NonRationalDilation);
        }
        let images: Vec<Poly> = (0..self.n)
            .map(|i| Poly::monomial(unit_exps(self.n, i), lambda.clone()))
            .collect();
        self.substitute(&images)
    }

    pub fn parity(&self) -> Self {
        let minus = Mat::identity(self.n).scale(&rat(-1));
        self.linear_substitute(&minus).expect("parity is invertible")
    }

    /// `∂v/∂x_i`.
    pub fn differentiate(&self, i: usize) -> Result<Self, GaussError> {
        if i >= self.n {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: i + 1 });
        }
        let mut out = Self::zero(self.n, &self.ring);
        for (ph, p) in &self.terms {
            let grad = ph.as_poly(&self.ring).derivative(i).scale_scalar(&Scalar::tau());
            out.add_term(ph.clone(), p.derivative(i).add(&p.mul(&grad)));
        }
        Ok(out)
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n, &self.ring);
        for (ph, p) in &self.terms {
            out.add_term(ph.conj(), p.conj());
        }
        out
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self, GaussError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, &self.ring);
        for (ph1, p1) in &self.terms {
            for (ph2, p2) in &other.terms {
                out.add_term(ph1.add(ph2), p1.mul(p2));
            }
        }
        Ok(out)
    }

    /// Re-indexes into `new_n` variables; variable `i` becomes `index(i)`.
    pub fn embed(&self, new_n: usize, index: impl Fn(usize) -> usize + Copy) -> Self {
        let mut out = Self::zero(new_n, &self.ring);
        for (ph, p) in &self.terms {
            let poly = p.embed(new_n, index);
            let exponent = ph.as_poly(&self.ring).embed(new_n, index);
            let (phase, rest) = GaussPhase::split_exponent(&exponent).expect("re-indexing keeps the phase shape");
            debug_assert!(rest.is_zero());
            out.add_term(phase, poly);
        }
        out
    }

    /// Integrates out the listed variables; the remaining ones keep their
    /// relative order.
    pub fn integrate(&self, vars: &[usize]) -> Result<Self, GaussError> {
        let mut sorted: Vec<usize> = vars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.last().is_some_and(|&v| v >= self.n) {
            return Err(GaussError::DimensionMismatch { expected: self.n, got: sorted.len() });
        }
        let mut out = Self::zero(self.n - sorted.len(), &self.ring);
        for (ph, p) in &self.terms {
            let piece = integrate_term(ph, p, sorted.clone())?;
            for (ph2, p2) in piece.terms {
                out.add_term(ph2, p2);
            }
        }
        Ok(out)
    }

    /// The `ε^j` coefficient as a vector over the order-1 ring at `s₀`.
    pub fn epsilon_coefficient(&self, j: usize) -> Self {
        let ring = JetRing {
            base: self.ring.base.clone(),
            order: 1,
        };
        let mut out = Self::zero(self.n, &ring);
        for (ph, p) in &self.terms {
            let mut q = Poly::zero(self.n, &ring);
            for (e, c) in p.terms() {
                q.add_term(e.to_vec(), ring.constant(c.coeffs()[j].clone()));
            }
            out.add_term(ph.clone(), q);
        }
        out
    }

    /// Re-assembles a jet-valued vector from its `ε`-coefficients.
    pub fn from_epsilon_coefficients(ring: &JetRing, parts: &[GaussVector]) -> Self {
        let n = parts.first().map_or(0, GaussVector::arity);
        let mut out = Self::zero(n, ring);
        for (j, part) in parts.iter().enumerate().take(ring.order) {
            let mut unit = vec![Scalar::zero(); ring.order];
            unit[j] = Scalar::one();
            let e = JetScalar::new(ring.base.clone(), unit).expect("valid ring");
            for (ph, p) in &part.terms {
                let mut q = Poly::zero(n, ring);
                for (ex, c) in p.terms() {
                    q.add_term(ex.to_vec(), e.scale(c.leading()));
                }
                out.add_term(ph.clone(), q);
            }
        }
        out
    }

    /// Values of a zero-arity vector, keyed by phase tag.
    pub fn phased_value(&self) -> PhasedJet {
        assert_eq!(self.n, 0, "phased_value needs a zero-arity vector");
        let mut out = PhasedJet::zero(&self.ring);
        for (ph, p) in &self.terms {
            out.add(ph.constant().clone(), p.coeff(&[]));
        }
        out
    }
}

/// `∫ u^{2r} e^{τ a u²} du = (2r-1)!!·(-2τa)^{-r}·(-a)^{-1/2}`.
fn gaussian_moment(a: &Cyclo, r: u32, root_inv: &Scalar) -> Result<Scalar, GaussError> {
    let minus_two_a = Scalar::from_cyclo(a.scale(&rat(-2)));
    let base = (&minus_two_a * &Scalar::tau()).pow(-(r as i32))?;
    Ok((&base * root_inv).scale(&double_factorial_odd(r)))
}

fn pivot_rank(a: &Cyclo) -> Option<u8> {
    let (re, im) = a.gaussian_parts()?;
    if re.is_negative() && im.is_zero() {
        Some(0)
    } else if re.is_zero() && !im.is_zero() {
        Some(1)
    } else if re.is_negative() {
        Some(2)
    } else {
        None
    }
}

fn integrate_term(phase: &GaussPhase, poly: &Poly, mut vars: Vec<usize>) -> Result<GaussVector, GaussError> {
    let mut phase = phase.clone();
    let mut poly = poly.clone();
    while !vars.is_empty() {
        let (pos, j) = vars
            .iter()
            .enumerate()
            .filter_map(|(pos, &j)| pivot_rank(phase.quad(j, j)).map(|rank| (rank, pos, j)))
            .min()
            .map(|(_, pos, j)| (pos, j))
            .ok_or_else(|| GaussError::NonIntegrablePhase(phase.to_string()))?;
        let (p2, ph2) = integrate_one(&phase, &poly, j)?;
        poly = p2;
        phase = ph2;
        vars.remove(pos);
        for v in vars.iter_mut() {
            if *v > j {
                *v -= 1;
            }
        }
    }
    Ok(GaussVector::from_term(phase, poly))
}

fn integrate_one(phase: &GaussPhase, poly: &Poly, j: usize) -> Result<(Poly, GaussPhase), GaussError> {
    let n = phase.arity();
    let ring = poly.ring().clone();
    let a = phase.quad(j, j).clone();
    let a_inv = a.inv()?;
    let root_inv = Scalar::from_cyclo(-&a).sqrt_special()?.inv()?;
    // x_j = u - (Σ_{i≠j} Q_ij x_i)/a - l_j/(2a)
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let mut coeffs = vec![Scalar::zero(); n];
            if i != j {
                coeffs[i] = Scalar::one();
                return Poly::linear(&ring, &coeffs, Scalar::zero());
            }
            for (k, c) in coeffs.iter_mut().enumerate() {
                *c = if k == j {
                    Scalar::one()
                } else {
                    Scalar::from_cyclo(-(phase.quad(k, j) * &a_inv))
                };
            }
            let shift = -(phase.linear(j) * &a_inv).scale(&crate::scalars::rational::ratio(1, 2));
            Poly::linear(&ring, &coeffs, Scalar::from_cyclo(shift))
        })
        .collect();
    let shifted = GaussVector::from_term(phase.clone(), poly.clone()).substitute(&images)?;
    let (new_phase, shifted_poly) = shifted
        .terms
        .into_iter()
        .next()
        .unwrap_or_else(|| (phase.clone(), Poly::zero(n, &ring)));
    debug_assert!((0..n).all(|i| i == j || new_phase.quad(i, j).is_zero()));
    debug_assert!(new_phase.linear(j).is_zero());
    let mut moments: Vec<Scalar> = Vec::new();
    let mut out = Poly::zero(n - 1, &ring);
    for (e, c) in shifted_poly.terms() {
        if e[j] % 2 == 1 {
            continue;
        }
        let r = e[j] / 2;
        while moments.len() <= r as usize {
            let next = gaussian_moment(&a, moments.len() as u32, &root_inv)?;
            moments.push(next);
        }
        let mut e2 = e.to_vec();
        e2.remove(j);
        out.add_term(e2, c.scale(&moments[r as usize]));
    }
    Ok((out, new_phase.remove_var(j)))
}

/// A sum `Σ e^{π·c}·jet_c` over formal phase tags `c ∈ ℚ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhasedJet {
    ring: JetRing,
    parts: BTreeMap<Cyclo, JetScalar>,
}

impl PhasedJet {
    pub fn zero(ring: &JetRing) -> Self {
        Self {
            ring: ring.clone(),
            parts: BTreeMap::new(),
        }
    }

    pub fn from_jet(j: JetScalar) -> Self {
        let mut out = Self::zero(&j.ring());
        out.add(Cyclo::zero(), j);
        out
    }

    /// `χ_σ(t) = e^{2πiσt}` with the `σ₀` part kept as a tag.
    pub fn character(sigma: &JetScalar, t: &Rational) -> Result<Self, GaussError> {
        let ring = sigma.ring();
        let e = Poly::constant(0, sigma.clone()).scale_scalar(&Scalar::from_cyclo(Cyclo::gaussian(
            Rational::zero(),
            t * rat(2),
        )));
        Ok(GaussVector::from_poly(Poly::one(0, &ring)).mul_exp(&e)?.phased_value())
    }

    pub fn ring(&self) -> &JetRing {
        &self.ring
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Cyclo, &JetScalar)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&mut self, tag: Cyclo, j: JetScalar) {
        if j.is_zero() {
            return;
        }
        let tag = canonical_tag(&tag);
        match self.parts.get_mut(&tag) {
            Some(e) => {
                *e = &*e + &j;
                if e.is_zero() {
                    self.parts.remove(&tag);
                }
            }
            None => {
                self.parts.insert(tag, j);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (t1, j1) in &self.parts {
            for (t2, j2) in &other.parts {
                out.add(t1 + t2, j1 * j2);
            }
        }
        out
    }

    pub fn scale(&self, c: &JetScalar) -> Self {
        let mut out = Self::zero(&self.ring);
        for (t, j) in &self.parts {
            out.add(t.clone(), j * c);
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (t, j) in &self.parts {
            out.add(t.conj(), j.conj());
        }
        out
    }
}

impl fmt::Display for PhasedJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(t, j)| if t.is_zero() { format!("{j}") } else { format!("exp(pi*({t}))*{j}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for GaussVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(ph, p)| format!("[{p}]*{ph}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Fourier transform in all variables with jet-valued central parameter
/// `σ`: `direction = -1` is `F⁻¹f(x) = |σ|^{n/2}∫e^{2πiσxᵀy}f(y)dy`,
/// `direction = +1` uses the kernel `e^{-2πiσxᵀy}`.
pub fn fourier(v: &GaussVector, direction: i8, sigma: &JetScalar) -> Result<GaussVector, GaussError> {
    fourier_with_order(v, direction, sigma, false)
}

/// As [`fourier`], optionally multiplying by the `|σ|^{n/2}` factor before
/// integrating instead of after.
pub fn fourier_with_order(
    v: &GaussVector,
    direction: i8,
    sigma: &JetScalar,
    scale_first: bool,
) -> Result<GaussVector, GaussError> {
    let n = v.arity();
    let factor = abs_sqrt_power(sigma, n)?;
    let kernel = fourier_kernel(n, direction);
    let mut w = v.embed(2 * n, |i| n + i);
    if scale_first {
        w = w.scale(&factor);
    }
    w = w.mul_s_phase(&kernel, sigma)?;
    let out = w.integrate(&(n..2 * n).collect::<Vec<_>>())?;
    Ok(if scale_first { out } else { out.scale(&factor) })
}

/// Partial Fourier transform without the `|σ|^{n/2}` normalization.
pub fn fourier_unnormalized(v: &GaussVector, direction: i8, sigma: &JetScalar) -> Result<GaussVector, GaussError> {
    let n = v.arity();
    let w = v.embed(2 * n, |i| n + i).mul_s_phase(&fourier_kernel(n, direction), sigma)?;
    w.integrate(&(n..2 * n).collect::<Vec<_>>())
}

/// `∓2i·xᵀy` on `(x, y)` as phase data.
fn fourier_kernel(n: usize, direction: i8) -> GaussPhase {
    let sign = if direction < 0 { rat(1) } else { rat(-1) };
    let mut q = vec![Cyclo::zero(); 4 * n * n];
    for i in 0..n {
        let c = Cyclo::gaussian(Rational::zero(), sign.clone());
        q[i * 2 * n + (n + i)] = c.clone();
        q[(n + i) * 2 * n + i] = c;
    }
    GaussPhase::new(2 * n, q, vec![Cyclo::zero(); 2 * n], Cyclo::zero()).expect("kernel is symmetric")
}

/// `|σ|^{n/2}` as a jet.
pub fn abs_sqrt_power(sigma: &JetScalar, n: usize) -> Result<JetScalar, GaussError> {
    let lead = sigma.leading().as_rational().ok_or(GaussError::NonRationalDilation)?;
    let abs = if lead.is_negative() { -sigma } else { sigma.clone() };
    Ok(abs.sqrt()?.pow(n as i32)?)
}

/// `∫ f·ḡ dx` over all variables.
pub fn pairing(f: &GaussVector, g: &GaussVector) -> Result<PhasedJet, GaussError> {
    let prod = f.mul(&g.conj())?;
    Ok(prod.integrate(&(0..f.arity()).collect::<Vec<_>>())?.phased_value())
}

/// `x^α·e^{-πσ|x|²}`.
pub fn hermite_probe(exps: &[u32], sigma: &JetScalar) -> Result<GaussVector, GaussError> {
    let n = exps.len();
    let ring = sigma.ring();
    let q = GaussPhase::real_quadratic(&Mat::identity(n).scale(&rat(-1)));
    GaussVector::from_poly(Poly::monomial(exps.to_vec(), ring.one())).mul_s_phase(&q, sigma)
}

/// `x^α·e^{πiσ·xᵀQx}` for a rational symmetric `Q`.
pub fn chirp_probe(exps: &[u32], q: &Mat, sigma: &JetScalar) -> Result<GaussVector, GaussError> {
    let ring = sigma.ring();
    GaussVector::from_poly(Poly::monomial(exps.to_vec(), ring.one()))
        .mul_s_phase(&GaussPhase::imaginary_quadratic(q), sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::ratio;

    fn ring(base: i64, order: usize) -> JetRing {
        JetRing::new(rat(base), order).unwrap()
    }

    fn gaussian(r: &JetRing) -> GaussVector {
        hermite_probe(&[0], &r.variable()).unwrap()
    }

    #[test]
    fn parity_of_odd_probe() {
        let r = ring(1, 2);
        let v = hermite_probe(&[1], &r.variable()).unwrap();
        assert_eq!(v.parity(), v.neg());
    }

    #[test]
    fn derivative_of_gaussian() {
        let r = ring(2, 3);
        let s = r.variable();
        let g = gaussian(&r);
        let expect = hermite_probe(&[1], &s)
            .unwrap()
            .scale(&s)
            .scale_scalar(&(&Scalar::tau() * &Scalar::from_int(-2)));
        assert_eq!(g.differentiate(0).unwrap(), expect);
    }

    #[test]
    fn translate_completes_the_square() {
        let r = ring(1, 2);
        let s = r.variable();
        let g = gaussian(&r).translate(&[rat(1)]).unwrap();
        // e^{-πs(x-1)²} = e^{πs(-x² + 2x - 1)}
        let exponent = GaussPhase::new(1, vec![Cyclo::from_int(-1)], vec![Cyclo::from_int(2)], Cyclo::from_int(-1)).unwrap();
        let expect = GaussVector::from_poly(Poly::one(1, &r)).mul_s_phase(&exponent, &s).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn gaussian_integral_is_inverse_root_of_s() {
        for (base, order) in [(1, 1), (1, 3), (4, 2), (2, 3)] {
            let r = ring(base, order);
            let s = r.variable();
            let total = gaussian(&r).integrate(&[0]).unwrap().phased_value();
            let expect = s.invert().unwrap().sqrt().unwrap();
            assert_eq!(total, PhasedJet::from_jet(expect));
        }
    }

    #[test]
    fn odd_moment_vanishes_and_second_moment() {
        let r = ring(1, 2);
        let s = r.variable();
        assert!(hermite_probe(&[1], &s).unwrap().integrate(&[0]).unwrap().is_zero());
        let second = hermite_probe(&[2], &s).unwrap().integrate(&[0]).unwrap().phased_value();
        let two_tau_s = s.scale(&(&Scalar::tau() * &Scalar::from_int(2)));
        let expect = &two_tau_s.invert().unwrap() * &s.invert().unwrap().sqrt().unwrap();
        assert_eq!(second, PhasedJet::from_jet(expect));
    }

    #[test]
    fn gaussian_is_fourier_fixed_point() {
        for order in 1..=3 {
            let r = ring(1, order);
            let g = gaussian(&r);
            assert_eq!(fourier(&g, -1, &r.variable()).unwrap(), g);
            assert_eq!(fourier(&g, 1, &r.variable()).unwrap(), g);
        }
        let r = ring(1, 2);
        assert!(fourier(&GaussVector::zero(1, &r), -1, &r.variable()).unwrap().is_zero());
    }

    #[test]
    fn fourier_inverse_pair() {
        let r = ring(4, 3);
        let s = r.variable();
        for m in 0..4 {
            let v = hermite_probe(&[m], &s).unwrap();
            let back = fourier(&fourier(&v, -1, &s).unwrap(), 1, &s).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn scale_before_or_after_integral_agree() {
        let r = ring(9, 3);
        let s = r.variable();
        let v = hermite_probe(&[3], &s).unwrap();
        assert_eq!(
            fourier_with_order(&v, -1, &s, true).unwrap(),
            fourier_with_order(&v, -1, &s, false).unwrap()
        );
    }

    #[test]
    fn pairing_of_gaussians() {
        let r = ring(1, 3);
        let s = r.variable();
        let g = gaussian(&r);
        let two_s = s.scale_rational(&rat(2));
        // (2s)^{-1/2}; the leading root √(1/2) lives in the registry
        let p = pairing(&g, &g).unwrap();
        let j = p.parts().next().unwrap().1.clone();
        assert_eq!(&(&j * &j) * &two_s, r.one());
        assert_eq!(j.leading(), &Scalar::sqrt_positive_rational(&ratio(1, 2)).unwrap());
        let odd = hermite_probe(&[1], &s).unwrap();
        assert!(pairing(&odd, &g).unwrap().is_zero());
    }

    #[test]
    fn positive_real_part_is_rejected() {
        let r = ring(1, 1);
        let bad = GaussVector::from_poly(Poly::one(1, &r))
            .mul_phase(&GaussPhase::real_quadratic(&Mat::from_i64(&[&[1]])))
            .unwrap();
        assert!(matches!(bad.integrate(&[0]), Err(GaussError::NonIntegrablePhase(_))));
        assert!(!GaussPhase::real_quadratic(&Mat::from_i64(&[&[1]])).is_integrable());
    }

    #[test]
    fn chirp_fourier_is_a_chirp() {
        // F⁻¹(e^{πi x²}) = ζ·e^{-πi x²} at s = 1
        let r = ring(1, 1);
        let s = r.variable();
        let v = chirp_probe(&[0], &Mat::from_i64(&[&[1]]), &s).unwrap();
        let expect = chirp_probe(&[0], &Mat::from_i64(&[&[-1]]), &s).unwrap().scale_scalar(&Scalar::zeta_pow(1));
        assert_eq!(fourier(&v, -1, &s).unwrap(), expect);
    }

    #[test]
    fn imaginary_tags_reduce_mod_two() {
        let a = GaussPhase::new(0, vec![], vec![], Cyclo::gaussian(rat(0), rat(5))).unwrap();
        let b = GaussPhase::new(0, vec![], vec![], Cyclo::gaussian(rat(0), rat(1))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dilation_by_constant() {
        let r = ring(1, 1);
        let v = hermite_probe(&[2], &r.variable()).unwrap();
        let lam = r.constant(Scalar::from_int(2));
        let d = v.dilate(&lam).unwrap();
        let expect = v.linear_substitute(&Mat::from_i64(&[&[2]])).unwrap();
        assert_eq!(d, expect);
        assert!(matches!(
            v.linear_substitute(&Mat::from_i64(&[&[0]])),
            Err(GaussError::SingularSubstitution)
        ));
    }
}
