use crate::mlinalg::matrix::{coords_in, span_basis, vec_ops, EchelonBuilder};
use crate::mlinalg::{zero, QMatrix, Scalar};
use num::Zero;

use super::LieError;

/// Lie algebra given by structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractLieAlgebra {
    labels: Vec<String>,
    consts: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub killing: QMatrix,
    /// Dimensions `dim L, dim L', dim L'', ...` until stabilization.
    pub derived_series: Vec<usize>,
    /// Dimensions of the lower central series until stabilization.
    pub lower_central: Vec<usize>,
    pub center_dim: usize,
    pub jacobi_ok: bool,
    /// First basis triple violating Jacobi.
    pub jacobi_failure: Option<(usize, usize, usize)>,
}

impl AbstractLieAlgebra {
    pub fn new(labels: Vec<String>, consts: Vec<Vec<Vec<Scalar>>>) -> Result<Self, LieError> {
        let n = consts.len();
        if labels.len() != n {
            return Err(LieError::LabelCount { labels: labels.len(), dim: n });
        }
        for i in 0..n {
            if consts[i].len() != n {
                return Err(LieError::DimensionError { expected: n, found: consts[i].len() });
            }
            for j in 0..n {
                if consts[i][j].len() != n {
                    return Err(LieError::DimensionError { expected: n, found: consts[i][j].len() });
                }
                let sym = vec_ops::add(&consts[i][j], &consts[j][i]);
                if !vec_ops::is_zero(&sym) {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(AbstractLieAlgebra { labels, consts })
    }

    /// Algebra from the nonzero brackets `[e_i, e_j] = v` with `i < j` or any order.
    pub fn from_brackets(labels: &[&str], brackets: &[(usize, usize, Vec<Scalar>)]) -> Result<Self, LieError> {
        let n = labels.len();
        let mut c = vec![vec![vec![zero(); n]; n]; n];
        for (i, j, v) in brackets {
            c[*i][*j] = v.clone();
            c[*j][*i] = v.iter().map(|x| -x).collect();
        }
        Self::new(labels.iter().map(|s| s.to_string()).collect(), c)
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        AbstractLieAlgebra { labels, consts: vec![vec![vec![zero(); n]; n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &[Scalar] {
        &self.consts[i][j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                vec_ops::axpy(&mut out, &f, &self.consts[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad_x` acting on coordinate columns.
    pub fn ad(&self, x: &[Scalar]) -> QMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.bracket(x, &vec_ops::basis(n, j))).collect();
        QMatrix::from_cols(&cols, n)
    }

    pub fn killing(&self) -> QMatrix {
        let n = self.dim();
        let ads: Vec<QMatrix> = (0..n).map(|i| self.ad(&vec_ops::basis(n, i))).collect();
        let mut k = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = (&ads[i] * &ads[j]).trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().flatten().all(|v| vec_ops::is_zero(v))
    }

    /// First triple `(i,j,k)` with nonzero Jacobiator.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let e = |i| vec_ops::basis(n, i);
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket(&e(i), &e(j));
                for k in j + 1..n {
                    let a = self.bracket(&ij, &e(k));
                    let b = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let c = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    let s = vec_ops::add(&vec_ops::add(&a, &b), &c);
                    if !vec_ops::is_zero(&s) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Echelon basis of `[A, B]` for subspaces given by spanning sets.
    pub fn bracket_span(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut eb = EchelonBuilder::new();
        for x in a {
            for y in b {
                eb.insert(&self.bracket(x, y));
            }
        }
        span_basis(eb.rows(), self.dim())
    }

    fn whole(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| vec_ops::basis(self.dim(), i)).collect()
    }

    /// Derived algebra `[L, L]` as a basis of coordinate vectors.
    pub fn derived(&self) -> Vec<Vec<Scalar>> {
        let w = self.whole();
        self.bracket_span(&w, &w)
    }

    /// Terms of the derived series, starting with `L`.
    pub fn derived_series(&self) -> Vec<Vec<Vec<Scalar>>> {
        let mut out = vec![self.whole()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_span(last, last);
            if next.len() == last.len() {
                break;
            }
            let done = next.is_empty();
            out.push(next);
            if done {
                break;
            }
        }
        out
    }

    /// Dimensions of the lower central series.
    pub fn lower_central(&self) -> Vec<usize> {
        let w = self.whole();
        let mut cur = w.clone();
        let mut dims = vec![cur.len()];
        loop {
            let next = self.bracket_span(&w, &cur);
            if next.len() == cur.len() {
                break;
            }
            dims.push(next.len());
            if next.is_empty() {
                break;
            }
            cur = next;
        }
        dims
    }

    pub fn center(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        // x central iff Σ_i x_i c[i][j] = 0 for every j
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.consts[i][j][k].clone()).collect());
            }
        }
        if rows.is_empty() {
            return Vec::new();
        }
        span_basis(&QMatrix::from_rows(rows).nullspace(), n)
    }

    /// Subalgebra on the span of `basis` (coordinate vectors), if closed.
    pub fn subalgebra(&self, basis: &[Vec<Scalar>], labels: Vec<String>) -> Result<AbstractLieAlgebra, LieError> {
        let k = basis.len();
        let mut c = vec![vec![vec![zero(); k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                let br = self.bracket(&basis[i], &basis[j]);
                c[i][j] = coords_in(basis, &br).ok_or(LieError::NotClosed)?;
            }
        }
        AbstractLieAlgebra::new(labels, c)
    }

    /// The derived algebra as an algebra in its own right.
    pub fn derived_algebra(&self) -> AbstractLieAlgebra {
        let d = self.derived();
        let labels = (1..=d.len()).map(|i| format!("d{i}")).collect();
        self.subalgebra(&d, labels).expect("derived algebra is an ideal")
    }

    pub fn structure_report(&self) -> StructureReport {
        let jacobi_failure = self.jacobi_failure();
        StructureReport {
            killing: self.killing(),
            derived_series: self.derived_series().iter().map(|s| s.len()).collect(),
            lower_central: self.lower_central(),
            center_dim: self.center().len(),
            jacobi_ok: jacobi_failure.is_none(),
            jacobi_failure,
        }
    }

    /// Ideal generated by `x`.
    pub fn ideal_generated(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let mut eb = EchelonBuilder::new();
        let mut elems = Vec::new();
        if eb.insert(x) {
            elems.push(x.to_vec());
        }
        let mut i = 0;
        while i < elems.len() {
            for j in 0..n {
                let b = self.bracket(&vec_ops::basis(n, j), &elems[i]);
                if eb.insert(&b) {
                    elems.push(b);
                }
            }
            i += 1;
        }
        span_basis(&elems, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::{q, qi};

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn killing_dim3_first_case() {
        // [A,B]=A, [A,C]=-B, [B,C]=αA+C
        let alpha = q(3, 2);
        let l = AbstractLieAlgebra::from_brackets(
            &["A", "B", "C"],
            &[(0, 1, v(&[1, 0, 0])), (0, 2, v(&[0, -1, 0])), (1, 2, vec![alpha.clone(), qi(0), qi(1)])],
        )
        .unwrap();
        let r = l.structure_report();
        assert!(r.jacobi_ok);
        let mut k = QMatrix::from_i64(&[&[0, 0, 2], &[0, 2, 0], &[2, 0, 0]]);
        k[(2, 2)] = qi(-2) * alpha;
        assert_eq!(r.killing, k);
    }

    #[test]
    fn abelian_report() {
        let r = AbstractLieAlgebra::abelian(3).structure_report();
        assert!(r.killing.is_zero());
        assert_eq!(r.derived_series, vec![3, 0]);
        assert_eq!(r.center_dim, 3);
    }

    #[test]
    fn jacobi_failure_detected() {
        let l = AbstractLieAlgebra::from_brackets(&["A", "B", "C"], &[(0, 1, v(&[1, 0, 0])), (1, 2, v(&[0, 1, 0]))]).unwrap();
        assert!(!l.structure_report().jacobi_ok);
    }
}
