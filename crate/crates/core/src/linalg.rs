//! Dense linear algebra over exact rationals or complex floats.
//!
//! Everything is generic over [`Scalar`]. For `Rational` the tolerance
//! arguments are ignored and all answers are exact; for `Complex64` an entry
//! counts as zero when its magnitude is below `tol` times the largest
//! magnitude in the matrix being reduced.

use std::fmt::Debug;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ratpoly::{rational_to_f64, Rational};

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn magnitude(&self) -> f64;
    fn is_exact_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;
}

impl Scalar for Rational {
    const EXACT: bool = true;
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    fn zero_value() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_value() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// True when `v` is zero: exactly, or within `tol * scale` for floats.
pub fn negligible<S: Scalar>(v: &S, scale: f64, tol: f64) -> bool {
    if S::EXACT {
        v.is_exact_zero()
    } else {
        v.magnitude() <= tol * scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero_value(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one_value();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like `from_rows` but keeps the column count for an empty row list.
    pub fn from_rows_with_cols(rows: &[Vec<S>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `n`.
    pub fn from_columns(cols: &[Vec<S>], n: usize) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one_value()))
    }

    /// Bilinear form `u^T self v`.
    pub fn form(&self, u: &[S], v: &[S]) -> S {
        dot(u, &self.mul_vec(v))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        let scale = 1.0;
        self.data.iter().all(|v| negligible(v, scale, tol))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_magnitude().max(f64::MIN_POSITIVE);
        (0..self.rows).all(|i| {
            (i..self.cols).all(|j| negligible(&(self[(i, j)].clone() + self[(j, i)].clone()), scale, tol))
        })
    }

    /// `self[rows, cols]`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, tol: f64) -> (Matrix<S>, Vec<usize>) {
        self.rref_scaled(tol, self.max_magnitude())
    }

    /// Like [`Matrix::rref`] with entries below `tol * scale` treated as zero,
    /// for matrices whose natural size is known from context.
    pub fn rref_scaled(&self, tol: f64, scale: f64) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let scale = scale.max(f64::MIN_POSITIVE);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pick = if S::EXACT {
                (r..m.rows).find(|&i| !m[(i, c)].is_exact_zero())
            } else {
                (r..m.rows)
                    .max_by(|&a, &b| m[(a, c)].magnitude().total_cmp(&m[(b, c)].magnitude()))
                    .filter(|&i| !negligible(&m[(i, c)], scale, tol))
            };
            let Some(p) = pick else {
                if !S::EXACT {
                    for i in r..m.rows {
                        m[(i, c)] = S::zero_value();
                    }
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = S::one_value() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            m[(r, c)] = S::one_value();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_exact_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
                m[(i, c)] = S::zero_value();
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    pub fn rank_scaled(&self, tol: f64, scale: f64) -> usize {
        self.rref_scaled(tol, scale).1.len()
    }

    /// Basis of the right null space `{v : self v = 0}`.
    pub fn kernel(&self, tol: f64) -> Vec<Vec<S>> {
        self.kernel_scaled(tol, self.max_magnitude())
    }

    pub fn kernel_scaled(&self, tol: f64, scale: f64) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref_scaled(tol, scale);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero_value(); self.cols];
            v[f] = S::one_value();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Matrix<S>, tol: f64) -> Option<Matrix<S>> {
        assert!(self.is_square() && rhs.rows == self.rows);
        let n = self.rows;
        let mut aug = Self::zeros(n, n + rhs.cols);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let (r, pivots) = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..n + rhs.cols).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    /// Determinant by elimination.
    pub fn det(&self, tol: f64) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let scale = self.max_magnitude().max(f64::MIN_POSITIVE);
        let mut det = S::one_value();
        for c in 0..n {
            let pick = if S::EXACT {
                (c..n).find(|&i| !m[(i, c)].is_exact_zero())
            } else {
                (c..n)
                    .max_by(|&a, &b| m[(a, c)].magnitude().total_cmp(&m[(b, c)].magnitude()))
                    .filter(|&i| !negligible(&m[(i, c)], scale, tol))
            };
            let Some(p) = pick else { return S::zero_value() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                let f = m[(i, c)].clone() / piv.clone();
                if f.is_exact_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<S: Scalar>(u: &[S], v: &[S]) -> S {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).fold(S::zero_value(), |acc, (a, b)| {
        if a.is_exact_zero() || b.is_exact_zero() {
            acc
        } else {
            acc + a.clone() * b.clone()
        }
    })
}

pub fn to_complex_vec<S: Scalar>(v: &[S]) -> Vec<Complex64> {
    v.iter().map(Scalar::to_complex).collect()
}

pub fn to_complex_vecs<S: Scalar>(vs: &[Vec<S>]) -> Vec<Vec<Complex64>> {
    vs.iter().map(|v| to_complex_vec(v)).collect()
}

pub fn vec_norm<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
}

/// Rank of an exact rational matrix by fraction-free (Bareiss) elimination
/// on the integer matrix obtained by clearing row denominators.
pub fn exact_rank(m: &Matrix<Rational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Dimension of the span of `vectors`, each of length `n`.
pub fn span_dim<S: Scalar>(vectors: &[Vec<S>], n: usize, tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows_with_cols(vectors, n).rank(tol)
}

/// Independent spanning set (rows of the reduced echelon form).
pub fn span_basis<S: Scalar>(vectors: &[Vec<S>], n: usize, tol: f64) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows_with_cols(vectors, n).rref(tol);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Whether every vector of `vs` lies in the span of `space`.
pub fn span_contains<S: Scalar>(space: &[Vec<S>], vs: &[Vec<S>], n: usize, tol: f64) -> bool {
    let base = span_dim(space, n, tol);
    let mut all = space.to_vec();
    all.extend(vs.iter().cloned());
    span_dim(&all, n, tol) == base
}

pub fn same_span<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], n: usize, tol: f64) -> bool {
    span_dim(a, n, tol) == span_dim(b, n, tol) && span_contains(a, b, n, tol)
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersection<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>], n: usize, tol: f64) -> Vec<Vec<S>> {
    let a = span_basis(a, n, tol);
    let b = span_basis(b, n, tol);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // columns [a_1 .. a_p, -b_1 .. -b_q]
    let mut cols = a.clone();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(&cols, n);
    let ker = m.kernel(tol);
    let vecs: Vec<Vec<S>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![S::zero_value(); n];
            for (i, ai) in a.iter().enumerate() {
                for t in 0..n {
                    v[t] = v[t].clone() + k[i].clone() * ai[t].clone();
                }
            }
            v
        })
        .collect();
    span_basis(&vecs, n, tol)
}

/// `{xi : P(xi, u) = 0 for all u in space}` for the bilinear form `P`.
pub fn form_orthogonal<S: Scalar>(p: &Matrix<S>, space: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let n = p.rows();
    if space.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let rows: Vec<Vec<S>> = space.iter().map(|u| p.mul_vec(u)).collect();
    Matrix::from_rows_with_cols(&rows, n).kernel(tol)
}

/// Gram matrix `B^T P B` of the form restricted to the span of `basis`.
pub fn restrict_form<S: Scalar>(p: &Matrix<S>, basis: &[Vec<S>]) -> Matrix<S> {
    let k = basis.len();
    let mut g = Matrix::zeros(k, k);
    let pb: Vec<Vec<S>> = basis.iter().map(|v| p.mul_vec(v)).collect();
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = dot(&basis[i], &pb[j]);
        }
    }
    g
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero_value(); n];
    v[i] = S::one_value();
    v
}
