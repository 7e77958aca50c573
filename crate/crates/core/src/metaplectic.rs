//! Symplectic matrices over ℚ, words in the standard generators, and
//! factorization back into words.
//!
//! With `Ω = (0, I; -I, 0)` the generators are
//! `DiagA(A) = diag(A, A^{-T})`, `LowerC(C) = (I, 0; C, I)` for symmetric `C`,
//! and `J = Ω`. A word `[g₁, …, g_k]` denotes the product `g₁⋯g_k`; as an
//! operator it applies `g_k` first.

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::linalg::Mat;
use crate::scalars::rational::{rat, ratio};
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetaplecticError {
    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),
    #[error("not a generator: {0}")]
    NotAGenerator(String),
    #[error("generator size {got} in a word of size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("no factorization found for {0}")]
    NotImplemented(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    DiagA(Mat),
    LowerC(Mat),
    J,
}

impl Generator {
    pub fn diag(a: Mat) -> Result<Self, MetaplecticError> {
        if !a.is_square() || a.det().is_zero() {
            return Err(MetaplecticError::NotAGenerator(format!("diag {a}")));
        }
        Ok(Self::DiagA(a))
    }

    pub fn lower(c: Mat) -> Result<Self, MetaplecticError> {
        if !c.is_symmetric() {
            return Err(MetaplecticError::NotAGenerator(format!("lower {c}")));
        }
        Ok(Self::LowerC(c))
    }

    /// `n` of the `2n × 2n` matrix, if the generator fixes it.
    pub fn size(&self) -> Option<usize> {
        match self {
            Self::DiagA(a) | Self::LowerC(a) => Some(a.rows()),
            Self::J => None,
        }
    }

    pub fn matrix(&self, n: usize) -> Mat {
        let id = Mat::identity(n);
        let zero = Mat::zeros(n, n);
        match self {
            Self::DiagA(a) => {
                let inv_t = a.inverse().expect("invertible").transpose();
                Mat::from_blocks(a, &zero, &zero, &inv_t)
            }
            Self::LowerC(c) => Mat::from_blocks(&id, &zero, c, &id),
            Self::J => omega(n),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::DiagA(a) => format!("D{a}"),
            Self::LowerC(c) => format!("C{c}"),
            Self::J => "J".into(),
        }
    }
}

/// `Ω = (0, I; -I, 0)`.
pub fn omega(n: usize) -> Mat {
    let id = Mat::identity(n);
    let zero = Mat::zeros(n, n);
    Mat::from_blocks(&zero, &id, &-&id, &zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix(Mat);

impl SymplecticMatrix {
    pub fn new(m: Mat) -> Result<Self, MetaplecticError> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(MetaplecticError::NotSymplectic(m.to_string()));
        }
        let w = omega(m.rows() / 2);
        if &(&m.transpose() * &w) * &m != w {
            return Err(MetaplecticError::NotSymplectic(m.to_string()));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Mat {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.rows() / 2
    }

    /// `(a, b) ↦ M·(a, b)`.
    pub fn act(&self, a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let v: Vec<Rational> = a.iter().chain(b).cloned().collect();
        let w = self.0.mul_vec(&v);
        let n = self.n();
        (w[..n].to_vec(), w[n..].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "()".into();
        }
        self.0.iter().map(Generator::label).collect::<Vec<_>>().join(".")
    }

    pub fn check_size(&self, n: usize) -> Result<(), MetaplecticError> {
        for g in &self.0 {
            if let Some(m) = g.size() {
                if m != n {
                    return Err(MetaplecticError::SizeMismatch { expected: n, got: m });
                }
            }
        }
        Ok(())
    }
}

pub fn word_product(w: &GeneratorWord, n: usize) -> SymplecticMatrix {
    let m = w.0.iter().fold(Mat::identity(2 * n), |acc, g| &acc * &g.matrix(n));
    SymplecticMatrix(m)
}

/// A word whose product is `m`.
pub fn factorize(m: &SymplecticMatrix) -> Result<GeneratorWord, MetaplecticError> {
    if m.n() == 1 {
        return Ok(factorize_sl2(m.matrix()));
    }
    factorize_general(m)
}

fn factorize_sl2(m: &Mat) -> GeneratorWord {
    let (a, b, c, d) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
    let one = |v: Rational| Mat::from_rows(vec![vec![v]]);
    let mut w = Vec::new();
    if b.is_zero() {
        push_lower(&mut w, one(c / a));
        push_diag(&mut w, one(a.clone()));
    } else {
        push_lower(&mut w, one(d / b));
        push_diag(&mut w, one(b.clone()));
        w.push(Generator::J);
        push_lower(&mut w, one(a / b));
    }
    GeneratorWord(w)
}

fn push_lower(w: &mut Vec<Generator>, c: Mat) {
    if !c.is_zero() {
        w.push(Generator::LowerC(c));
    }
}

fn push_diag(w: &mut Vec<Generator>, a: Mat) {
    if a != Mat::identity(a.rows()) {
        w.push(Generator::DiagA(a));
    }
}

/// Symmetric shifts tried to make the upper-left block invertible.
fn shift_candidates(n: usize) -> impl Iterator<Item = Mat> {
    let subsets = (0u32..(1 << n)).map(move |mask| {
        Mat::diagonal(&(0..n).map(|i| rat(((mask >> i) & 1) as i64)).collect::<Vec<_>>())
    });
    let dense = (1..=3i64).flat_map(move |k| {
        (0u32..(1 << (n * n))).map(move |mask| {
            Mat::from_fn(n, n, |i, j| {
                let (p, q) = (i.min(j), i.max(j));
                rat(((mask >> (p * n + q)) & 1) as i64 * k)
            })
        })
    });
    subsets.chain(dense)
}

fn factorize_general(m: &SymplecticMatrix) -> Result<GeneratorWord, MetaplecticError> {
    let n = m.n();
    for shift in shift_candidates(n) {
        let mp = m.matrix() * &Generator::LowerC(shift.clone()).matrix(n);
        let a = mp.block(0, 0, n, n);
        let Some(a_inv) = a.inverse() else { continue };
        let b = mp.block(0, n, n, n);
        let c = mp.block(n, 0, n, n);
        let k = &c * &a_inv;
        let u = &a_inv * &b;
        let mut w = Vec::new();
        push_lower(&mut w, k);
        push_diag(&mut w, a);
        w.push(Generator::DiagA(Mat::identity(n).scale(&rat(-1))));
        w.push(Generator::J);
        push_lower(&mut w, -&u);
        w.push(Generator::J);
        push_lower(&mut w, -&shift);
        let word = GeneratorWord(w);
        if word_product(&word, n) == *m {
            return Ok(word);
        }
    }
    Err(MetaplecticError::NotImplemented(m.matrix().to_string()))
}

/// A non-zero rational `p/q` with `|p|, q ≤ bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let p = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(1..=bound);
        if p != 0 {
            return ratio(p, q);
        }
    }
}

pub fn random_generator<R: Rng>(rng: &mut R, n: usize) -> Generator {
    match rng.gen_range(0..3) {
        0 => loop {
            let mut a = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if i == j || rng.gen_bool(0.3) {
                        a[(i, j)] = random_rational(rng, 3);
                    }
                }
            }
            if !a.det().is_zero() {
                return Generator::DiagA(a);
            }
        },
        1 => {
            let mut c = Mat::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    if i == j || rng.gen_bool(0.5) {
                        let v = random_rational(rng, 3);
                        c[(i, j)] = v.clone();
                        c[(j, i)] = v;
                    }
                }
            }
            Generator::LowerC(c)
        }
        _ => Generator::J,
    }
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> GeneratorWord {
    let len = rng.gen_range(1..=max_len);
    GeneratorWord((0..len).map(|_| random_generator(rng, n)).collect())
}

/// A random element of `SL(2, ℚ)` with small entries.
pub fn random_sl2<R: Rng>(rng: &mut R) -> SymplecticMatrix {
    let a = random_rational(rng, 4);
    let b = if rng.gen_bool(0.2) { Rational::zero() } else { random_rational(rng, 4) };
    let c = random_rational(rng, 4);
    let d = (rat(1) + &b * &c) / &a;
    SymplecticMatrix(Mat::from_rows(vec![vec![a, b], vec![c, d]]))
}
