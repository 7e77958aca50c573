//! The Heisenberg enveloping algebra with invertible center and the
//! equivalence between center modules and ℓ-locally-nilpotent Heisenberg
//! modules.
//!
//! `F(M) = M^ℓ` is the joint kernel of the `x_i`; `G(N)` is the module
//! induced from `ℓ ⊕ Z`, realized as `S(r) ⊗ N` with basis `y^α ⊗ e_j`.
//! Induced modules are infinite-dimensional, so they are truncated at a
//! degree bound `D`. Every operator here is homogeneous (`x` lowers the
//! degree, `y` raises it, `z` keeps it), so kernels and spans computed on
//! the truncation are the truncations of the true ones.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::linalg::{similar, Mat};
use crate::metaplectic::random_rational;
use crate::report::Case;
use crate::scalars::rational::{binomial, factorial, format_rational, rat};
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KashiwaraError {
    #[error("z does not act invertibly")]
    NotInvertible,
    #[error("z matrix must be square, got {0}x{1}")]
    NonSquare(usize, usize),
    #[error("y raises the degree past the bound {0}")]
    DegreeOverflow(u32),
    #[error("mismatched modules: {0}")]
    Mismatch(String),
}

type EnvKey = (Vec<u32>, i32, Vec<u32>);

/// A normal-ordered element `Σ c·y^α z^m x^β` of `U(h)[z⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopingElement {
    n: usize,
    terms: BTreeMap<EnvKey, Rational>,
}

impl EnvelopingElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn monomial(y: Vec<u32>, z: i32, x: Vec<u32>, c: Rational) -> Self {
        assert_eq!(y.len(), x.len(), "multi-index arity");
        let mut out = Self::zero(y.len());
        out.add_term((y, z, x), c);
        out
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(vec![0; n], 0, vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::monomial(vec![0; n], 0, unit(n, i), Rational::one())
    }

    pub fn y(n: usize, i: usize) -> Self {
        Self::monomial(unit(n, i), 0, vec![0; n], Rational::one())
    }

    /// `z^m`, negative powers allowed.
    pub fn z_pow(n: usize, m: i32) -> Self {
        Self::monomial(vec![0; n], m, vec![0; n], Rational::one())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i32, &[u32], &Rational)> {
        self.terms.iter().map(|((y, z, x), c)| (y.as_slice(), *z, x.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: EnvKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "arity mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * r);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Normal-orders using `x^b y^c = Σ_k C(b,k)C(c,k)k!·z^k y^{c-k} x^{b-k}`
    /// in each pair.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "arity mismatch");
        let mut out = Self::zero(self.n);
        for ((ya, za, xa), ca) in &self.terms {
            for ((yb, zb, xb), cb) in &other.terms {
                let mut partial: Vec<(Vec<u32>, i32, Vec<u32>, Rational)> =
                    vec![(Vec::new(), za + zb, Vec::new(), ca * cb)];
                for i in 0..self.n {
                    let (b, c) = (xa[i], yb[i]);
                    let mut next = Vec::new();
                    for (y, z, x, coeff) in &partial {
                        for k in 0..=b.min(c) {
                            let w = binomial(b, k) * binomial(c, k) * factorial(k);
                            let mut y2 = y.clone();
                            y2.push(ya[i] + c - k);
                            let mut x2 = x.clone();
                            x2.push(b - k + xb[i]);
                            next.push((y2, z + k as i32, x2, coeff * w));
                        }
                    }
                    partial = next;
                }
                for (y, z, x, c) in partial {
                    out.add_term((y, z, x), c);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Display for EnvelopingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((y, z, x), c)| {
                let mut s = format_rational(c);
                for (i, &k) in y.iter().enumerate() {
                    push_power(&mut s, &format!("y{}", i + 1), k as i64);
                }
                push_power(&mut s, "z", *z as i64);
                for (i, &k) in x.iter().enumerate() {
                    push_power(&mut s, &format!("x{}", i + 1), k as i64);
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn push_power(s: &mut String, var: &str, k: i64) {
    match k {
        0 => {}
        1 => s.push_str(&format!("*{var}")),
        _ => s.push_str(&format!("*{var}^{k}")),
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// A finite-dimensional module over `k[z, z⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZModule {
    z: Mat,
}

impl ZModule {
    pub fn new(z: Mat) -> Result<Self, KashiwaraError> {
        let m = Self::new_unchecked(z)?;
        if m.z.det().is_zero() {
            return Err(KashiwaraError::NotInvertible);
        }
        Ok(m)
    }

    /// Skips the invertibility check; used to exhibit what goes wrong
    /// without it.
    pub fn new_unchecked(z: Mat) -> Result<Self, KashiwaraError> {
        if !z.is_square() {
            return Err(KashiwaraError::NonSquare(z.rows(), z.cols()));
        }
        Ok(Self { z })
    }

    pub fn dim(&self) -> usize {
        self.z.rows()
    }

    pub fn z_matrix(&self) -> &Mat {
        &self.z
    }

    pub fn is_invertible(&self) -> bool {
        !self.z.det().is_zero()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { z: block_diag(&self.z, &other.z) }
    }

    pub fn isomorphic(&self, other: &Self) -> bool {
        similar(&self.z, &other.z)
    }

    /// Random invertible `z`: sometimes a Jordan block, otherwise dense.
    pub fn random<R: Rng>(rng: &mut R, d: usize) -> Self {
        loop {
            let z = if rng.gen_bool(0.3) {
                let lambda = random_rational(rng, 4);
                Mat::from_fn(d, d, |i, j| {
                    if i == j {
                        lambda.clone()
                    } else if j == i + 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            } else {
                let mut z = Mat::zeros(d, d);
                for i in 0..d {
                    for j in 0..d {
                        if i == j || rng.gen_bool(0.5) {
                            z[(i, j)] = random_rational(rng, 4);
                        }
                    }
                }
                z
            };
            if let Ok(m) = Self::new(z) {
                return m;
            }
        }
    }
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = (a.rows(), a.cols());
    Mat::from_fn(ra + b.rows(), ca + b.cols(), |i, j| match (i < ra, j < ca) {
        (true, true) => a[(i, j)].clone(),
        (false, false) => b[(i - ra, j - ca)].clone(),
        _ => Rational::zero(),
    })
}

/// A graded Heisenberg module truncated at degree `bound`: matrices for
/// `x_i`, `y_i` and `z` on a basis whose vectors carry degrees. `y_i` is
/// only defined on vectors without top-degree components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HModule {
    n: usize,
    bound: u32,
    degrees: Vec<u32>,
    x: Vec<Mat>,
    y: Vec<Mat>,
    z: Mat,
}

/// `G(N)` truncated at degree `bound`, with basis `y^α ⊗ e_j` ordered by
/// `(|α|, α, j)`: `x_i(y^α ⊗ e) = α_i·y^{α-e_i} ⊗ ze`.
pub fn induce(base: &ZModule, n: usize, bound: u32) -> HModule {
    let d = base.dim();
    let monomials = monomials_up_to(n, bound);
    let index: BTreeMap<&[u32], usize> = monomials.iter().enumerate().map(|(k, a)| (a.as_slice(), k)).collect();
    let dim = monomials.len() * d;
    let mut x = vec![Mat::zeros(dim, dim); n];
    let mut y = vec![Mat::zeros(dim, dim); n];
    let mut z = Mat::zeros(dim, dim);
    let mut degrees = Vec::with_capacity(dim);
    for (k, alpha) in monomials.iter().enumerate() {
        let deg: u32 = alpha.iter().sum();
        for j in 0..d {
            degrees.push(deg);
            let col = k * d + j;
            for r in 0..d {
                z[(k * d + r, col)] = base.z[(r, j)].clone();
            }
            for i in 0..n {
                if alpha[i] > 0 {
                    let mut lower = alpha.clone();
                    lower[i] -= 1;
                    let t = index[lower.as_slice()];
                    for r in 0..d {
                        x[i][(t * d + r, col)] = rat(alpha[i] as i64) * &base.z[(r, j)];
                    }
                }
                if deg < bound {
                    let mut upper = alpha.clone();
                    upper[i] += 1;
                    y[i][(index[upper.as_slice()] * d + j, col)] = Rational::one();
                }
            }
        }
    }
    HModule { n, bound, degrees, x, y, z }
}

/// Multi-indices of total degree at most `bound`, ordered by degree then
/// lexicographically.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=bound {
        let mut level = vec![Vec::new()];
        for slot in 0..n {
            let mut next = Vec::new();
            for e in &level {
                let used: u32 = e.iter().sum();
                let range: Vec<u32> = if slot + 1 == n { vec![deg - used] } else { (0..=deg - used).rev().collect() };
                for k in range {
                    let mut e2: Vec<u32> = e.clone();
                    e2.push(k);
                    next.push(e2);
                }
            }
            level = next;
        }
        if n == 0 {
            if deg == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        out.extend(level);
    }
    out
}

impl HModule {
    pub fn zero(n: usize, bound: u32) -> Self {
        Self {
            n,
            bound,
            degrees: Vec::new(),
            x: vec![Mat::zeros(0, 0); n],
            y: vec![Mat::zeros(0, 0); n],
            z: Mat::zeros(0, 0),
        }
    }

    pub fn pairs(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn x_matrix(&self, i: usize) -> &Mat {
        &self.x[i]
    }

    pub fn z_matrix(&self) -> &Mat {
        &self.z
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, KashiwaraError> {
        if self.n != other.n || self.bound != other.bound {
            return Err(KashiwaraError::Mismatch("pairs or degree bound differ".into()));
        }
        Ok(Self {
            n: self.n,
            bound: self.bound,
            degrees: self.degrees.iter().chain(&other.degrees).copied().collect(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| block_diag(a, b)).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| block_diag(a, b)).collect(),
            z: block_diag(&self.z, &other.z),
        })
    }

    pub fn apply_x(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        self.x[i].mul_vec(v)
    }

    pub fn apply_y(&self, i: usize, v: &[Rational]) -> Result<Vec<Rational>, KashiwaraError> {
        if v.iter().zip(&self.degrees).any(|(c, &d)| d >= self.bound && !c.is_zero()) {
            return Err(KashiwaraError::DegreeOverflow(self.bound));
        }
        Ok(self.y[i].mul_vec(v))
    }

    pub fn apply_z_pow(&self, m: i32, v: &[Rational]) -> Result<Vec<Rational>, KashiwaraError> {
        let step = if m >= 0 {
            self.z.clone()
        } else {
            self.z.inverse().ok_or(KashiwaraError::NotInvertible)?
        };
        Ok((0..m.unsigned_abs()).fold(v.to_vec(), |acc, _| step.mul_vec(&acc)))
    }

    /// The action of a normal-ordered element: `x^β` first, then `z^m`,
    /// then `y^α`.
    pub fn act(&self, e: &EnvelopingElement, v: &[Rational]) -> Result<Vec<Rational>, KashiwaraError> {
        if e.arity() != self.n {
            return Err(KashiwaraError::Mismatch(format!("arity {} vs {}", e.arity(), self.n)));
        }
        let mut out = vec![Rational::zero(); self.dim()];
        for (y, m, x, c) in e.terms() {
            let mut w = v.to_vec();
            for (i, &k) in x.iter().enumerate() {
                for _ in 0..k {
                    w = self.apply_x(i, &w);
                }
            }
            w = self.apply_z_pow(m, &w)?;
            for (i, &k) in y.iter().enumerate() {
                for _ in 0..k {
                    w = self.apply_y(i, &w)?;
                }
            }
            for (o, wi) in out.iter_mut().zip(&w) {
                *o += c * wi;
            }
        }
        Ok(out)
    }

    fn indices_of_degree(&self, pred: impl Fn(u32) -> bool) -> Vec<usize> {
        (0..self.dim()).filter(|&k| pred(self.degrees[k])).collect()
    }

    /// Kernel of the homogeneous operator `op` on basis vectors whose degree
    /// satisfies `pred`, computed one degree at a time.
    fn kernel_on(&self, op: impl Fn(&[Rational]) -> Vec<Rational>, pred: impl Fn(u32) -> bool) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for deg in 0..=self.bound {
            if !pred(deg) {
                continue;
            }
            let cols = self.indices_of_degree(|d| d == deg);
            if cols.is_empty() {
                continue;
            }
            let images: Vec<Vec<Rational>> = cols
                .iter()
                .map(|&c| {
                    let mut e = vec![Rational::zero(); self.dim()];
                    e[c] = Rational::one();
                    op(&e)
                })
                .collect();
            let rows: Vec<usize> = (0..images[0].len()).filter(|&r| images.iter().any(|v| !v[r].is_zero())).collect();
            let mat = Mat::from_fn(rows.len(), cols.len(), |r, c| images[c][rows[r]].clone());
            let kernel = if rows.is_empty() {
                (0..cols.len())
                    .map(|k| (0..cols.len()).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect())
                    .collect()
            } else {
                mat.kernel()
            };
            for k in kernel {
                let mut v = vec![Rational::zero(); self.dim()];
                for (c, val) in cols.iter().zip(k) {
                    v[*c] = val;
                }
                out.push(v);
            }
        }
        out
    }

    /// Rank of a family of vectors, split by degree when every vector is
    /// homogeneous.
    pub fn span_rank(&self, vectors: &[Vec<Rational>]) -> usize {
        let mut groups: BTreeMap<u32, Vec<&Vec<Rational>>> = BTreeMap::new();
        for v in vectors {
            let mut degs = v.iter().zip(&self.degrees).filter(|(c, _)| !c.is_zero()).map(|(_, &d)| d);
            let Some(first) = degs.next() else {
                continue;
            };
            if degs.any(|d| d != first) {
                return Mat::from_columns(self.dim(), vectors).rank();
            }
            groups.entry(first).or_default().push(v);
        }
        groups
            .iter()
            .map(|(&deg, vs)| {
                let coords = self.indices_of_degree(|d| d == deg);
                Mat::from_fn(coords.len(), vs.len(), |r, c| vs[c][coords[r]].clone()).rank()
            })
            .sum()
    }

    fn contains(&self, space: &[Vec<Rational>], vectors: &[Vec<Rational>]) -> bool {
        let base = self.span_rank(space);
        let mut all = space.to_vec();
        all.extend_from_slice(vectors);
        self.span_rank(&all) == base
    }

    /// A homogeneous basis of `M^ℓ`, the joint kernel of the `x_i`.
    pub fn invariant_basis(&self) -> Vec<Vec<Rational>> {
        self.kernel_on(|v| self.x.iter().flat_map(|x| x.mul_vec(v)).collect(), |_| true)
    }
}

/// `F(M) = M^ℓ` with the restricted `z`-action.
pub fn invariants_f(m: &HModule) -> ZModule {
    let basis = m.invariant_basis();
    let k = basis.len();
    if k == 0 {
        return ZModule { z: Mat::zeros(0, 0) };
    }
    let kmat = Mat::from_columns(m.dim(), &basis);
    let mut z = Mat::zeros(k, k);
    for (c, v) in basis.iter().enumerate() {
        let image = m.z.mul_vec(v);
        let coords = kmat.solve(&image).expect("the kernel of x is z-stable");
        for (r, val) in coords.into_iter().enumerate() {
            z[(r, c)] = val;
        }
    }
    ZModule { z }
}

/// `y_k^j (Ker x_k ∩ deg ≤ D - j)`, the truncation of `N_j = y^j Ker x`.
fn filtration_piece(m: &HModule, k: usize, j: u32) -> Result<Vec<Vec<Rational>>, KashiwaraError> {
    let Some(top) = m.bound.checked_sub(j) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for v in m.kernel_on(|v| m.x[k].mul_vec(v), |d| d <= top) {
        let mut w = v;
        for _ in 0..j {
            w = m.apply_y(k, &w)?;
        }
        out.push(w);
    }
    Ok(out)
}

/// `M_i = Ker x_k^{i+1}`.
fn kernel_power(m: &HModule, k: usize, i: u32) -> Vec<Vec<Rational>> {
    m.kernel_on(|v| (0..=i).fold(v.to_vec(), |w, _| m.x[k].mul_vec(&w)), |_| true)
}

/// `Ker x^{i+1} = ⊕_{j≤i} y^j Ker x` for each pair and each `i ≤ i_max`.
pub fn key_lemma_check(m: &HModule, i_max: u32, label: &str) -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 0..m.n {
        for i in 0..=i_max.min(m.bound.saturating_sub(1)) {
            let name = format!("{label}/key_lemma/pair{}/i{i}", k + 1);
            let mi = kernel_power(m, k, i);
            let mut pieces = Vec::new();
            let mut dims = Vec::new();
            let mut failed = None;
            for j in 0..=i {
                match filtration_piece(m, k, j) {
                    Ok(p) => {
                        dims.push(m.span_rank(&p));
                        pieces.extend(p);
                    }
                    Err(e) => failed = Some(e.to_string()),
                }
            }
            if let Some(e) = failed {
                cases.push(Case::error(name, e));
                continue;
            }
            let dim_mi = m.span_rank(&mi);
            let total: usize = dims.iter().sum();
            let direct = m.span_rank(&pieces) == total;
            let inside = m.contains(&mi, &pieces);
            let ok = direct && inside && total == dim_mi;
            let mut case = Case::check(name, ok).with_witness(serde_json::json!({
                "dim_M_i": dim_mi,
                "dim_N_j": dims,
                "direct": direct,
            }));
            if !ok {
                case = case.with_note(format!("sum of pieces {total} vs dim M_i {dim_mi}, direct = {direct}"));
            }
            cases.push(case);
        }
    }
    cases
}

/// The algebra identities behind the filtration lemma in pair `k`.
pub fn filt_algebra_check(n: usize, k: usize, i: u32) -> Vec<Case> {
    let x = EnvelopingElement::x(n, k);
    let y = EnvelopingElement::y(n, k);
    let z = EnvelopingElement::z_pow(n, 1);
    let ii = rat(i as i64);
    let yi = y.pow(i);
    let shifted = y.mul(&x).sub(&z.scale(&ii));
    let mut cases = Vec::new();
    let lhs = shifted.mul(&yi);
    let rhs = y.pow(i + 1).mul(&x);
    cases.push(Case::check(format!("algebra/pair{}/i{i}/shifted_times_y_power", k + 1), lhs == rhs));
    let lhs = x.mul(&yi);
    let rhs = if i == 0 {
        yi.mul(&x)
    } else {
        yi.mul(&x).add(&z.mul(&y.pow(i - 1)).scale(&ii))
    };
    cases.push(Case::check(format!("algebra/pair{}/i{i}/x_past_y_power", k + 1), lhs == rhs));
    let lhs = x.mul(&shifted);
    let rhs = y.mul(&x).sub(&z.scale(&(ii - rat(1)))).mul(&x);
    cases.push(Case::check(format!("algebra/pair{}/i{i}/x_past_shift", k + 1), lhs == rhs));
    cases
}

/// Items (i)-(iv) of the filtration lemma on a module, pair `k`.
pub fn filt_module_check(m: &HModule, k: usize, i: u32, label: &str) -> Vec<Case> {
    let name = |item: &str| format!("{label}/filtration/pair{}/i{i}/{item}", k + 1);
    let shift = |v: &[Rational]| -> Result<Vec<Rational>, KashiwaraError> {
        let yx = m.apply_y(k, &m.apply_x(k, v))?;
        let zv = m.z.mul_vec(v);
        Ok(yx.iter().zip(&zv).map(|(a, b)| a - b * rat(i as i64)).collect())
    };
    let run = || -> Result<[bool; 4], KashiwaraError> {
        let ni = filtration_piece(m, k, i)?;
        let prev = if i == 0 { Vec::new() } else { filtration_piece(m, k, i - 1)? };
        let mi = kernel_power(m, k, i);
        let mprev = if i == 0 { Vec::new() } else { kernel_power(m, k, i - 1) };
        let killed = ni.iter().map(|v| shift(v)).collect::<Result<Vec<_>, _>>()?;
        let item1 = killed.iter().all(|v| v.iter().all(Zero::is_zero));
        let lowered: Vec<Vec<Rational>> = ni.iter().map(|v| m.apply_x(k, v)).collect();
        let item2 = m.contains(&prev, &lowered);
        let item3 = m.contains(&mi, &ni);
        let moved = mi.iter().map(|v| shift(v)).collect::<Result<Vec<_>, _>>()?;
        let item4 = m.contains(&mprev, &moved);
        Ok([item1, item2, item3, item4])
    };
    match run() {
        Ok(items) => ["i", "ii", "iii", "iv"]
            .iter()
            .zip(items)
            .map(|(item, ok)| Case::check(name(item), ok))
            .collect(),
        Err(e) => vec![Case::error(name("all"), e.to_string())],
    }
}

/// `α: G(F(M)) → M`, checked to be bijective in each degree.
pub fn alpha_iso_check(m: &HModule, label: &str) -> Vec<Case> {
    let invariants = m.invariant_basis();
    let inv_degrees: Vec<u32> = invariants
        .iter()
        .map(|v| (0..m.dim()).find(|&c| !v[c].is_zero()).map_or(0, |c| m.degrees[c]))
        .collect();
    let monomials = monomials_up_to(m.n, m.bound);
    let mut cases = Vec::new();
    for deg in 0..=m.bound {
        let name = format!("{label}/alpha/degree{deg}");
        let mut images = Vec::new();
        let mut overflow = None;
        for (v, &vd) in invariants.iter().zip(&inv_degrees) {
            for alpha in &monomials {
                let a: u32 = alpha.iter().sum();
                if a + vd != deg {
                    continue;
                }
                let e = EnvelopingElement::monomial(alpha.clone(), 0, vec![0; m.n], Rational::one());
                match m.act(&e, v) {
                    Ok(w) => images.push(w),
                    Err(err) => overflow = Some(err.to_string()),
                }
            }
        }
        if let Some(e) = overflow {
            cases.push(Case::error(name, e));
            continue;
        }
        let target = m.degrees.iter().filter(|&&d| d == deg).count();
        let rank = m.span_rank(&images);
        let ok = images.len() == target && rank == target;
        cases.push(Case::check(name, ok).with_witness(serde_json::json!({
            "source_dim": images.len(),
            "target_dim": target,
            "rank": rank,
        })));
    }
    cases
}

/// `F(G(N)) ≅ N` via invariant factors.
pub fn fg_check(base: &ZModule, n: usize, bound: u32, label: &str) -> Case {
    let f = invariants_f(&induce(base, n, bound));
    Case::check(format!("{label}/F_of_G"), f.isomorphic(base)).with_witness(serde_json::json!({
        "dim_N": base.dim(),
        "dim_F_G_N": f.dim(),
    }))
}

/// All checks for one center module.
pub fn module_cases(base: &ZModule, n: usize, bound: u32, i_max: u32, label: &str) -> Vec<Case> {
    let m = induce(base, n, bound);
    let mut cases = vec![fg_check(base, n, bound, label)];
    cases.extend(key_lemma_check(&m, i_max, label));
    cases.extend(alpha_iso_check(&m, label));
    for k in 0..n {
        for i in 0..=i_max.min(bound.saturating_sub(1)) {
            cases.extend(filt_module_check(&m, k, i, label));
        }
    }
    let next = induce(base, n, bound + 1);
    let sound = (0..=i_max.min(bound.saturating_sub(1))).all(|i| {
        (0..n).all(|k| m.span_rank(&kernel_power(&m, k, i)) == next.span_rank(&truncate(&next, &kernel_power(&next, k, i), bound)))
    }) && invariants_f(&next).dim() == invariants_f(&m).dim();
    cases.push(Case::check(format!("{label}/truncation_sound"), sound));
    cases
}

/// Keeps only the components of degree at most `bound`.
fn truncate(m: &HModule, vectors: &[Vec<Rational>], bound: u32) -> Vec<Vec<Rational>> {
    vectors
        .iter()
        .map(|v| {
            v.iter()
                .zip(&m.degrees)
                .map(|(c, &d)| if d <= bound { c.clone() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::ratio;

    fn one_dim(z: i64) -> ZModule {
        ZModule::new(Mat::from_i64(&[&[z]])).unwrap()
    }

    #[test]
    fn defining_relations() {
        let x = EnvelopingElement::x(1, 0);
        let y = EnvelopingElement::y(1, 0);
        let z = EnvelopingElement::z_pow(1, 1);
        assert_eq!(x.mul(&y), y.mul(&x).add(&z));
        assert_eq!(z.mul(&EnvelopingElement::z_pow(1, -1)), EnvelopingElement::one(1));
        let lhs = y.mul(&x).sub(&z.scale(&rat(2))).mul(&y.pow(2));
        assert_eq!(lhs, y.pow(3).mul(&x));
    }

    #[test]
    fn pairs_commute_across_indices() {
        let x1 = EnvelopingElement::x(2, 0);
        let y2 = EnvelopingElement::y(2, 1);
        assert!(x1.commutator(&y2).is_zero());
        let x2 = EnvelopingElement::x(2, 1);
        assert_eq!(x2.commutator(&y2), EnvelopingElement::z_pow(2, 1));
    }

    #[test]
    fn induced_line() {
        let m = induce(&one_dim(1), 1, 3);
        assert_eq!(m.dim(), 4);
        let y3 = vec![rat(0), rat(0), rat(0), rat(1)];
        assert_eq!(m.apply_x(0, &y3), vec![rat(0), rat(0), rat(3), rat(0)]);
        assert_eq!(m.apply_y(0, &y3), Err(KashiwaraError::DegreeOverflow(3)));
    }

    #[test]
    fn induced_dimension_formula() {
        let n2 = ZModule::new(Mat::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        for (n, d) in [(1, 4), (2, 3), (2, 6)] {
            let m = induce(&n2, n, d);
            let expect = 2 * (binomial(d + n as u32, n as u32)).to_integer();
            assert_eq!(m.dim() as i64, i64::try_from(expect).unwrap());
        }
    }

    #[test]
    fn zero_z_rejected_and_breaks_equivalence() {
        assert_eq!(ZModule::new(Mat::from_i64(&[&[0]])), Err(KashiwaraError::NotInvertible));
        let bad = ZModule::new_unchecked(Mat::from_i64(&[&[0]])).unwrap();
        let f = invariants_f(&induce(&bad, 1, 3));
        assert_eq!(f.dim(), 4);
        assert!(!f.isomorphic(&bad));
        let m = induce(&bad, 1, 3);
        assert!(key_lemma_check(&m, 2, "bad").iter().any(|c| !c.passed()));
    }

    #[test]
    fn jordan_block_round_trip() {
        let jordan = ZModule::new(Mat::from_i64(&[&[3, 1], &[0, 3]])).unwrap();
        let m = induce(&jordan, 1, 5);
        let f = invariants_f(&m);
        assert!(f.isomorphic(&jordan));
        let cases = key_lemma_check(&m, 4, "jordan");
        assert!(cases.iter().all(Case::passed));
        assert_eq!(cases[4].witness.as_ref().unwrap()["dim_M_i"], 10);
    }

    #[test]
    fn line_module_full_suite() {
        let cases = module_cases(&one_dim(1), 1, 6, 5, "line");
        let bad: Vec<_> = cases.iter().filter(|c| !c.passed()).map(|c| &c.name).collect();
        assert!(bad.is_empty(), "{bad:?}");
        let key = key_lemma_check(&induce(&one_dim(1), 1, 6), 5, "line");
        for (i, c) in key.iter().enumerate() {
            assert_eq!(c.witness.as_ref().unwrap()["dim_M_i"], i + 1);
        }
    }

    #[test]
    fn direct_sum_alpha_and_invariants() {
        let a = ZModule::new(Mat::from_rows(vec![vec![ratio(1, 2)]])).unwrap();
        let b = ZModule::new(Mat::from_i64(&[&[0, -1], &[1, 0]])).unwrap();
        let m = induce(&a, 2, 3).direct_sum(&induce(&b, 2, 3)).unwrap();
        assert!(alpha_iso_check(&m, "sum").iter().all(Case::passed));
        assert!(invariants_f(&m).isomorphic(&a.direct_sum(&b)));
        assert!(alpha_iso_check(&HModule::zero(1, 3), "zero").iter().all(Case::passed));
    }

    #[test]
    fn algebra_identities() {
        for i in 0..=5 {
            for k in 0..2 {
                assert!(filt_algebra_check(2, k, i).iter().all(Case::passed));
            }
        }
    }

    #[test]
    fn monomial_order() {
        let m = monomials_up_to(2, 2);
        assert_eq!(m, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_up_to(0, 3), vec![Vec::<u32>::new()]);
    }
}
