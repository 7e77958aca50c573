//! Dense matrices over ℚ with exact Gaussian elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalars::rational::{format_rational, rat};
use crate::scalars::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn column(v: &[Rational]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * r).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// The `rows × cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// `[[a, b], [c, d]]` assembled from equally shaped square blocks.
    pub fn from_blocks(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Self {
        let n = a.rows;
        Self::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - n)].clone(),
            (false, true) => c[(i - n, j)].clone(),
            (false, false) => d[(i - n, j - n)].clone(),
        })
    }

    pub fn hstack(&self, other: &Mat) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Rational::one() / &m[(r, c)];
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if m[(r, j)].is_zero() {
                            continue;
                        }
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] / &piv;
                    for j in c..n {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= d;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let (r, pivots) = self.hstack(&Mat::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<Rational>]) -> Mat {
        Self::from_fn(dim, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let (r, pivots) = self.hstack(&Mat::column(b)).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self + &(-rhs)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let p = a * &rhs[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }
}

crate::forward_binops!(Mat; Add add, Sub sub, Mul mul);

/// Invariant factors of `a` (monic, low degree first, each dividing the
/// next), read off the Smith form of `xI - a` over ℚ[x]. Two square
/// matrices are similar iff these agree.
pub fn invariant_factors(a: &Mat) -> Vec<Vec<Rational>> {
    assert!(a.is_square(), "invariant factors of a non-square matrix");
    let d = a.rows();
    let mut m: Vec<Vec<QPoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut p = vec![-a[(i, j)].clone()];
                    if i == j {
                        p.push(Rational::one());
                    }
                    trim(p)
                })
                .collect()
        })
        .collect();
    for k in 0..d {
        while let Some((pi, pj)) = min_degree_entry(&m, k) {
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut dirty = false;
            for i in k + 1..d {
                let (q, r) = divrem(&m[i][k], &m[k][k]);
                for j in k..d {
                    let t = poly_mul(&q, &m[k][j]);
                    m[i][j] = poly_sub(&m[i][j], &t);
                }
                dirty |= !r.is_empty();
            }
            for j in k + 1..d {
                let (q, r) = divrem(&m[k][j], &m[k][k]);
                for i in k..d {
                    let t = poly_mul(&q, &m[i][k]);
                    m[i][j] = poly_sub(&m[i][j], &t);
                }
                dirty |= !r.is_empty();
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..d).find(|&i| (k + 1..d).any(|j| !divrem(&m[i][j], &m[k][k]).1.is_empty()));
            match bad {
                Some(i) => {
                    for j in k..d {
                        let t = m[i][j].clone();
                        m[k][j] = poly_add(&m[k][j], &t);
                    }
                }
                None => break,
            }
        }
    }
    (0..d)
        .map(|k| monic(&m[k][k]))
        .filter(|p| p.len() > 1)
        .collect()
}

pub fn similar(a: &Mat, b: &Mat) -> bool {
    a.rows() == b.rows() && a.is_square() && b.is_square() && invariant_factors(a) == invariant_factors(b)
}

type QPoly = Vec<Rational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn monic(p: &QPoly) -> QPoly {
    match p.last() {
        Some(lead) => p.iter().map(|c| c / lead).collect(),
        None => Vec::new(),
    }
}

fn poly_add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let get = |p: &QPoly, i: usize| p.get(i).cloned().unwrap_or_else(Rational::zero);
    trim((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    poly_add(a, &b.iter().map(|c| -c).collect())
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let lead = b.last().expect("division by the zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("non-empty") / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn min_degree_entry(m: &[Vec<QPoly>], k: usize) -> Option<(usize, usize)> {
    let d = m.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, p) in row.iter().enumerate().take(d).skip(k) {
            if !p.is_empty() && best.is_none_or(|(_, _, deg)| p.len() < deg) {
                best = Some((i, j, p.len()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::ratio;

    /// `rank(A⊗I - I⊗Bᵀ)`: `A ~ B` iff the three ranks for (A,A), (A,B),
    /// (B,B) coincide.
    fn commutation_rank(a: &Mat, b: &Mat) -> usize {
        let n = a.rows();
        Mat::from_fn(n * n, n * n, |r, c| {
            let (i, k) = (r / n, r % n);
            let (j, l) = (c / n, c % n);
            let left = if k == l { a[(i, j)].clone() } else { Rational::zero() };
            let right = if i == j { b[(l, k)].clone() } else { Rational::zero() };
            left - right
        })
        .rank()
    }

    fn similar_oracle(a: &Mat, b: &Mat) -> bool {
        let aa = commutation_rank(a, a);
        aa == commutation_rank(a, b) && aa == commutation_rank(b, b)
    }

    #[test]
    fn invariant_factors_of_small_forms() {
        let jordan = Mat::from_i64(&[&[3, 1], &[0, 3]]);
        assert_eq!(invariant_factors(&jordan), vec![vec![rat(9), rat(-6), rat(1)]]);
        let scalar = Mat::from_i64(&[&[3, 0], &[0, 3]]);
        assert_eq!(invariant_factors(&scalar), vec![vec![rat(-3), rat(1)], vec![rat(-3), rat(1)]]);
        let rotation = Mat::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(invariant_factors(&rotation), vec![vec![rat(1), rat(0), rat(1)]]);
        assert!(!similar(&jordan, &scalar));
    }

    #[test]
    fn similarity_agrees_with_commutation_ranks() {
        let samples = [
            Mat::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]),
            Mat::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]),
            Mat::from_i64(&[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]),
            Mat::from_i64(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]),
            Mat::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            Mat::from_i64(&[&[1, 0, 0], &[0, -1, 1], &[0, -1, 0]]),
        ];
        let p = Mat::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let p_inv = p.inverse().unwrap();
        for a in &samples {
            let conj = &(&p * a) * &p_inv;
            assert!(similar(a, &conj));
            for b in &samples {
                assert_eq!(similar(a, b), similar_oracle(a, b), "{a} vs {b}");
            }
        }
        let mixed = Mat::from_rows(vec![
            vec![ratio(1, 2), rat(1), rat(0)],
            vec![rat(0), ratio(1, 2), rat(0)],
            vec![rat(0), rat(0), ratio(-1, 3)],
        ]);
        assert_eq!(invariant_factors(&mixed).len(), 1);
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_i64(&[&[1, 1], &[1, 2]]);
        assert_eq!(m.det(), rat(1));
        assert_eq!(m.inverse().unwrap(), Mat::from_i64(&[&[2, -1], &[-1, 1]]));
        let s = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), rat(0));
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::from_i64(&[&[2, 0], &[0, 4]]);
        assert_eq!(m.solve(&[rat(1), rat(1)]), Some(vec![ratio(1, 2), ratio(1, 4)]));
        let s = Mat::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.solve(&[rat(1), rat(2)]), None);
    }

    #[test]
    fn det_with_row_swap() {
        let m = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), rat(-1));
    }
}
