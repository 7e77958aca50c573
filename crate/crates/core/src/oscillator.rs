//! The Heisenberg action and the oscillator operators on [`GaussVector`]s.
//!
//! Coordinates: `W = (W/L) ⊕ L` with `ω = (0, I; -I, 0)`, vectors live on
//! `W/L`, and the group law is
//! `(a,b,t)(a',b',t') = (a+a', b+b', t+t'+½(aᵀb' - bᵀa'))`. The action is
//!
//! `ρ(a,b,t)v(x) = χ_σ(t - bᵀx + ½aᵀb)·v(x - a)`, with `χ_σ(u) = e^{2πiσu}`,
//!
//! which satisfies the group law and has central character `χ_σ`. The
//! central parameter `σ` is a jet: the coordinate `s` itself for the
//! jet-valued representation, or the constant `1` for the classical one.
//!
//! The generators act by
//! `σ(DiagA(A))f = (det A)^{-1/2} f(A⁻¹x)` (branch `ζ²|det A|^{-1/2}` when
//! `det A < 0`), `σ(LowerC(C))f = e^{-πiσ·xᵀCx} f`, and `σ(J) = ζ^n·F_σ⁻¹`.

use num_traits::{Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::gauss::{abs_sqrt_power, fourier, fourier_unnormalized, GaussError, GaussPhase, GaussVector, Poly};
use crate::jets::JetScalar;
use crate::linalg::Mat;
use crate::metaplectic::{random_rational, Generator, GeneratorWord, MetaplecticError, SymplecticMatrix};
use crate::scalars::rational::{rat, ratio};
use crate::scalars::{Cyclo, Rational, Scalar};
use crate::weyl::WeylOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillatorError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("base point {0} is not a rational square")]
    NonSquareBase(String),
    #[error("sign inconsistent across probes: {0}")]
    SignInconsistent(String),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error(transparent)]
    Metaplectic(#[from] MetaplecticError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub t: Rational,
}

impl HeisenbergElement {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>, t: Rational) -> Result<Self, OscillatorError> {
        if a.len() != b.len() {
            return Err(OscillatorError::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        Ok(Self { a, b, t })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: vec![Rational::zero(); n],
            b: vec![Rational::zero(); n],
            t: Rational::zero(),
        }
    }

    pub fn central(n: usize, t: Rational) -> Self {
        Self { t, ..Self::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn compose(&self, other: &Self) -> Self {
        let dot = |u: &[Rational], v: &[Rational]| -> Rational { u.iter().zip(v).map(|(x, y)| x * y).sum() };
        let omega = (dot(&self.a, &other.b) - dot(&self.b, &other.a)) * ratio(1, 2);
        Self {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
            t: &self.t + &other.t + omega,
        }
    }

    /// `g·h`: the symplectic action on `(a, b)`, fixing `t`.
    pub fn transform(&self, g: &SymplecticMatrix) -> Self {
        let (a, b) = g.act(&self.a, &self.b);
        Self { a, b, t: self.t.clone() }
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let coord = |rng: &mut R| {
            if rng.gen_bool(0.25) {
                Rational::zero()
            } else {
                random_rational(rng, 3)
            }
        };
        let a = (0..n).map(|_| coord(rng)).collect();
        let b = (0..n).map(|_| coord(rng)).collect();
        let t = coord(rng);
        Self { a, b, t }
    }

    pub fn label(&self) -> String {
        let fmt = |v: &[Rational]| v.iter().map(crate::scalars::rational::format_rational).collect::<Vec<_>>().join(",");
        format!("({};{};{})", fmt(&self.a), fmt(&self.b), crate::scalars::rational::format_rational(&self.t))
    }
}

fn check_arity(v: &GaussVector, n: usize) -> Result<(), OscillatorError> {
    if v.arity() != n {
        return Err(OscillatorError::DimensionMismatch { expected: n, got: v.arity() });
    }
    Ok(())
}

/// `ρ(a,b,t)v(x) = χ_σ(t - bᵀx + ½aᵀb)·v(x - a)`.
pub fn rho(h: &HeisenbergElement, v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    let n = h.n();
    check_arity(v, n)?;
    let ab: Rational = h.a.iter().zip(&h.b).map(|(x, y)| x * y).sum();
    let c = (&h.t + ab * ratio(1, 2)) * rat(2);
    let i2 = |r: Rational| Scalar::from_cyclo(Cyclo::gaussian(Rational::zero(), r));
    let l: Vec<Scalar> = h.b.iter().map(|bi| i2(-bi * rat(2))).collect();
    // Built as a polynomial: the constant must not be reduced before scaling by σ.
    let exponent = Poly::linear(&v.ring().clone(), &l, i2(c)).scale(sigma);
    Ok(v.translate(&h.a)?.mul_exp(&exponent)?)
}

/// The action in the realization on the opposite Lagrangian:
/// `ρ_R(a,b,t) = ρ(b,-a,t)`.
pub fn rho_r(h: &HeisenbergElement, v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    let swapped = HeisenbergElement {
        a: h.b.clone(),
        b: h.a.iter().map(|x| -x).collect(),
        t: h.t.clone(),
    };
    rho(&swapped, v, sigma)
}

/// `(det A)^{-1/2}` with the branch `ζ²·|det A|^{-1/2}` for `det A < 0`.
pub fn det_factor(a: &Mat) -> Result<Scalar, OscillatorError> {
    let det = a.det();
    let root = Scalar::sqrt_positive_rational(&det.abs()).map_err(GaussError::from)?;
    let inv = root.inv().map_err(GaussError::from)?;
    Ok(if det.is_negative() { &inv * &Scalar::zeta_pow(2) } else { inv })
}

pub fn sigma_generator(g: &Generator, v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    let n = v.arity();
    if let Some(m) = g.size() {
        if m != n {
            return Err(OscillatorError::DimensionMismatch { expected: n, got: m });
        }
    }
    match g {
        Generator::DiagA(a) => {
            let a_inv = a.inverse().ok_or(GaussError::SingularSubstitution)?;
            Ok(v.linear_substitute(&a_inv)?.scale_scalar(&det_factor(a)?))
        }
        Generator::LowerC(c) => {
            let phase = GaussPhase::imaginary_quadratic(&c.scale(&rat(-1)));
            Ok(v.mul_s_phase(&phase, sigma)?)
        }
        Generator::J => Ok(fourier(v, -1, sigma)?.scale_scalar(&Scalar::zeta_pow(n as i64))),
    }
}

/// `σ(g₁)⋯σ(g_k)v`, applying `g_k` first.
pub fn sigma_word(w: &GeneratorWord, v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    let mut out = v.clone();
    for g in w.generators().iter().rev() {
        out = sigma_generator(g, &out, sigma)?;
    }
    Ok(out)
}

/// Applies a differential operator with scalar coefficients.
pub fn apply_weyl(op: &WeylOp<Scalar>, v: &GaussVector) -> Result<GaussVector, OscillatorError> {
    check_arity(v, op.arity())?;
    let mut out = GaussVector::zero(v.arity(), v.ring());
    for (xe, de, c) in op.terms() {
        let mut w = v.clone();
        for (i, &k) in de.iter().enumerate() {
            for _ in 0..k {
                w = w.differentiate(i)?;
            }
        }
        let mono = Poly::monomial(xe.to_vec(), v.ring().constant(c.clone()));
        out = out.add(&w.mul_poly(&mono)?);
    }
    Ok(out)
}

/// `T f(x) = ∫ e^{2πiσxᵀy} f(y) dy`, the change of polarization.
pub fn lagrangian_intertwiner(v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    Ok(fourier_unnormalized(v, -1, sigma)?)
}

/// `T⁻¹ f(x) = σ^n ∫ e^{-2πiσxᵀy} f(y) dy`.
pub fn lagrangian_intertwiner_inverse(v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    let factor = abs_sqrt_power(sigma, 2 * v.arity())?;
    Ok(fourier_unnormalized(v, 1, sigma)?.scale(&factor))
}

/// `φ(F)(x) = F(√|σ|·x)`; needs a rational `√|σ₀|`.
pub fn square_class_intertwiner(v: &GaussVector, sigma: &JetScalar) -> Result<GaussVector, OscillatorError> {
    let root = abs_sqrt_power(sigma, 1)?;
    if root.leading().as_rational().is_none() {
        return Err(OscillatorError::NonSquareBase(crate::scalars::rational::format_rational(sigma.base())));
    }
    Ok(v.dilate(&root)?)
}

/// `+1` if `lhs = rhs`, `-1` if `lhs = -rhs`, `0` if both vanish.
pub fn sign_relation(lhs: &GaussVector, rhs: &GaussVector) -> Option<i8> {
    if lhs.is_zero() && rhs.is_zero() {
        Some(0)
    } else if lhs == rhs {
        Some(1)
    } else if *lhs == rhs.neg() {
        Some(-1)
    } else {
        None
    }
}

/// Combines per-probe signs into one; `0` entries are compatible with
/// anything.
pub fn consistent_sign(signs: &[Option<i8>]) -> Result<i8, String> {
    let mut out = 0;
    for (idx, s) in signs.iter().enumerate() {
        match s {
            None => return Err(format!("probe {idx}: sides are not proportional by a sign")),
            Some(0) => {}
            Some(v) if out == 0 => out = *v,
            Some(v) if *v != out => return Err(format!("probe {idx}: sign {v} after {out}")),
            Some(_) => {}
        }
    }
    Ok(if out == 0 { 1 } else { out })
}

/// `σ(w₁)σ(w₂)v = c·σ(w₁₂)v` with one `c ∈ {±1}` for all probes.
pub fn cocycle_check(
    w1: &GeneratorWord,
    w2: &GeneratorWord,
    w12: &GeneratorWord,
    probes: &[GaussVector],
    sigma: &JetScalar,
) -> Result<i8, OscillatorError> {
    let mut signs = Vec::with_capacity(probes.len());
    let both = w1.concat(w2);
    for v in probes {
        let lhs = sigma_word(&both, v, sigma)?;
        let rhs = sigma_word(w12, v, sigma)?;
        signs.push(sign_relation(&lhs, &rhs));
    }
    consistent_sign(&signs).map_err(OscillatorError::SignInconsistent)
}

/// `σ(w)ρ(h)v` against `ρ(w·h)σ(w)v`; returns the sign relating them.
pub fn covariance_check(
    w: &GeneratorWord,
    h: &HeisenbergElement,
    probes: &[GaussVector],
    sigma: &JetScalar,
) -> Result<i8, OscillatorError> {
    let g = crate::metaplectic::word_product(w, h.n());
    let gh = h.transform(&g);
    let mut signs = Vec::with_capacity(probes.len());
    for v in probes {
        let lhs = sigma_word(w, &rho(h, v, sigma)?, sigma)?;
        let rhs = rho(&gh, &sigma_word(w, v, sigma)?, sigma)?;
        signs.push(sign_relation(&lhs, &rhs));
    }
    consistent_sign(&signs).map_err(OscillatorError::SignInconsistent)
}

/// `σ(J)²v = i^n·v(-x)`.
pub fn fourier_inversion_holds(v: &GaussVector, sigma: &JetScalar) -> Result<(GaussVector, GaussVector), OscillatorError> {
    let j = Generator::J;
    let lhs = sigma_generator(&j, &sigma_generator(&j, v, sigma)?, sigma)?;
    let rhs = v.parity().scale_scalar(&Scalar::zeta_pow(2 * v.arity() as i64));
    Ok((lhs, rhs))
}

/// `σ_σ(J)v` rebuilt from the fixed-base transform and the jet factor
/// `ζ·(1 + ε/s₀)^E`: coefficient `j` is `Σ_{m≤j} binom(E, j-m)/s₀^{j-m}`
/// applied to `ζ·F_{s₀}⁻¹(v_m)`.
pub fn sigma_j_via_euler(v: &GaussVector) -> Result<GaussVector, OscillatorError> {
    assert_eq!(v.arity(), 1, "one-variable structure formula");
    let ring = v.ring().clone();
    let base_ring = crate::jets::JetRing::new(ring.base.clone(), 1).expect("valid base");
    let s0 = base_ring.variable();
    let classical: Vec<GaussVector> = (0..ring.order)
        .map(|m| sigma_generator(&Generator::J, &v.epsilon_coefficient(m), &s0))
        .collect::<Result<_, _>>()?;
    let matrix = crate::weyl::sigma_j_jet_matrix(&ring.base, ring.order);
    let mut parts = Vec::with_capacity(ring.order);
    for j in 0..ring.order {
        let mut acc = GaussVector::zero(1, &base_ring);
        for (m, part) in classical.iter().enumerate().take(j + 1) {
            let op = crate::weyl::epoly_to_weyl(&matrix[m][j], &Scalar::one());
            acc = acc.add(&apply_weyl(&op, part)?);
        }
        parts.push(acc);
    }
    Ok(GaussVector::from_epsilon_coefficients(&ring, &parts))
}

/// `x^m e^{-πσx²}` for `m = 0..count`.
pub fn hermite_probes(count: u32, sigma: &JetScalar) -> Result<Vec<GaussVector>, OscillatorError> {
    (0..count)
        .map(|m| crate::gauss::hermite_probe(&[m], sigma).map_err(Into::into))
        .collect()
}

/// Products `x^α e^{-πσ|x|²}` with `|α| ≤ max_degree` in `n` variables.
pub fn hermite_probes_n(n: usize, max_degree: u32, sigma: &JetScalar) -> Result<Vec<GaussVector>, OscillatorError> {
    let mut out = Vec::new();
    for exps in multi_indices(n, max_degree) {
        out.push(crate::gauss::hermite_probe(&exps, sigma)?);
    }
    Ok(out)
}

/// Chirps `x^α e^{πiσ·xᵀQx}` for a few fixed non-degenerate `Q`.
pub fn chirp_probes(n: usize, max_degree: u32, sigma: &JetScalar) -> Result<Vec<GaussVector>, OscillatorError> {
    let forms: Vec<Mat> = if n == 1 {
        vec![Mat::from_i64(&[&[1]]), Mat::from_rows(vec![vec![ratio(-1, 2)]])]
    } else {
        vec![
            Mat::identity(n),
            Mat::from_fn(n, n, |i, j| if i == j { rat(i as i64 + 2) } else { ratio(1, 2) }),
        ]
    };
    let mut out = Vec::new();
    for q in &forms {
        for exps in multi_indices(n, max_degree) {
            out.push(crate::gauss::chirp_probe(&exps, q, sigma)?);
        }
    }
    Ok(out)
}

fn multi_indices(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=(max_degree - used) {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        out = next;
    }
    out
}
