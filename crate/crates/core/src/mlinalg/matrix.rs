//! Dense rational matrices and exact elimination.

use super::scalar::{one, zero, Scalar};
use num::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Row-major dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(super::scalar::fmt_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of reduced row echelon elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| super::scalar::qi(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Entries in row-major order.
    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMatrix { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `AB - BA`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = one() / &m[(lead, c)];
            for j in c..m.cols {
                let v = &m[(lead, j)] * &inv;
                m[(lead, j)] = v;
            }
            for r in 0..m.rows {
                if r != lead && !m[(r, c)].is_zero() {
                    let f = m[(r, c)].clone();
                    for j in c..m.cols {
                        if !m[(lead, j)].is_zero() {
                            let v = &m[(lead, j)] * &f;
                            m[(r, j)] -= v;
                        }
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{x | Ax = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero(); self.cols];
                v[f] = one();
                for (i, &p) in e.pivots.iter().enumerate() {
                    v[p] = -e.matrix[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = one();
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = e.matrix[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det *= &m[(c, c)];
            let inv = one() / &m[(c, c)];
            for r in c + 1..n {
                if !m[(r, c)].is_zero() {
                    let f = &m[(r, c)] * &inv;
                    for j in c..n {
                        let v = &m[(c, j)] * &f;
                        m[(r, j)] -= v;
                    }
                }
            }
        }
        det
    }

    /// Solves `Ax = b`; one particular solution or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![zero(); self.cols];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = e.matrix[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix by
    /// symmetric Gaussian reduction.
    pub fn inertia(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "inertia of a non-symmetric matrix");
        let mut m = self.clone();
        let n = m.rows;
        let (mut pos, mut neg) = (0, 0);
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            if let Some(&k) = active.iter().find(|&&k| !m[(k, k)].is_zero()) {
                let d = m[(k, k)].clone();
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                active.retain(|&x| x != k);
                let col: Vec<Scalar> = (0..n).map(|i| m[(i, k)].clone()).collect();
                for &i in &active {
                    for &j in &active {
                        if !col[i].is_zero() && !col[j].is_zero() {
                            let v = &col[i] * &col[j] / &d;
                            m[(i, j)] -= v;
                        }
                    }
                }
                continue;
            }
            let pair = active.iter().enumerate().find_map(|(a, &i)| {
                active[a + 1..].iter().find(|&&j| !m[(i, j)].is_zero()).map(|&j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            // Replace e_i by e_i + e_j so the diagonal entry 2 m_ij is nonzero.
            for c in 0..n {
                let v = m[(j, c)].clone();
                m[(i, c)] += v;
            }
            for r in 0..n {
                let v = m[(r, j)].clone();
                m[(r, i)] += v;
            }
        }
        (pos, neg, n - pos - neg)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Vector helpers on `Vec<Scalar>`.
pub mod vec_ops {
    use super::super::scalar::{zero, Scalar};
    use num::Zero;

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        a.iter().map(|x| x * s).collect()
    }

    pub fn axpy(acc: &mut [Scalar], s: &Scalar, x: &[Scalar]) {
        if s.is_zero() {
            return;
        }
        for (a, b) in acc.iter_mut().zip(x) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn is_zero(a: &[Scalar]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    pub fn basis(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![zero(); n];
        v[i] = super::super::scalar::one();
        v
    }
}

/// Reduced echelon basis of the span of `vectors` (rows of the result).
pub fn span_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(vectors.to_vec());
    assert_eq!(m.cols(), dim);
    let e = m.rref();
    (0..e.pivots.len()).map(|i| e.matrix.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of the rows of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if vec_ops::is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let r0 = QMatrix::from_rows(rows.clone()).rank();
    rows.push(v.to_vec());
    QMatrix::from_rows(rows).rank() == r0
}

/// Coordinates of `v` in the (independent) rows of `basis`, if `v` is in the span.
pub fn coords_in(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return if vec_ops::is_zero(v) { Some(Vec::new()) } else { None };
    }
    let a = QMatrix::from_cols(basis, v.len());
    a.solve(v)
}

/// Echelon basis grown one vector at a time, for fast membership tests.
#[derive(Clone, Debug, Default)]
pub struct EchelonBuilder {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (a, b) in r.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_ops::is_zero(&self.reduce(v))
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = one() / &r[p];
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}

/// Rank of the span of a list of vectors.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        QMatrix::from_rows(vectors.to_vec()).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::scalar::{q, qi};

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), qi(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(vec_ops::is_zero(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn inertia_of_witt_block() {
        let m = QMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(m.inertia(), (2, 1, 0));
        let k = QMatrix::from_rows(vec![
            vec![qi(0), qi(0), qi(2)],
            vec![qi(0), qi(2), qi(0)],
            vec![qi(2), qi(0), q(-3, 1)],
        ]);
        assert_eq!(k.inertia(), (2, 1, 0));
        assert_eq!(QMatrix::zeros(2, 2).inertia(), (0, 0, 2));
    }

    #[test]
    fn solve_inconsistent() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[qi(1), qi(2)]).is_none());
        assert_eq!(m.solve(&[qi(2), qi(2)]).unwrap(), vec![qi(2), qi(0)]);
    }
}
