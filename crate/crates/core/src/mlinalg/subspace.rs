use super::matrix::{in_span, span_basis, QMatrix};
use super::scalar::Scalar;
use super::space::Space;
use num::Zero;

/// Linear subspace kept in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    space: Space,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn span(space: &Space, vectors: &[Vec<Scalar>]) -> Self {
        Subspace { space: space.clone(), basis: span_basis(vectors, space.dim()) }
    }

    pub fn zero(space: &Space) -> Self {
        Subspace { space: space.clone(), basis: Vec::new() }
    }

    pub fn whole(space: &Space) -> Self {
        let vs: Vec<_> = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
        Self::span(space, &vs)
    }

    /// Span of the basis vectors with the given labels.
    pub fn of_labels(space: &Space, labels: &[&str]) -> Option<Self> {
        let vs: Option<Vec<_>> = labels.iter().map(|l| space.index_of(l).map(|i| space.basis_vector(i))).collect();
        Some(Self::span(space, &vs?))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        in_span(&self.basis, v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&self.space, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(&self.space);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = QMatrix::from_cols(&cols, self.space.dim());
        let vs: Vec<Vec<Scalar>> = m
            .nullspace()
            .iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); self.space.dim()];
                for (i, bv) in self.basis.iter().enumerate() {
                    super::matrix::vec_ops::axpy(&mut v, &c[i], bv);
                }
                v
            })
            .collect();
        Subspace::span(&self.space, &vs)
    }

    /// Metric orthogonal complement.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::whole(&self.space);
        }
        let rows: Vec<Vec<Scalar>> = self.basis.iter().map(|v| self.space.flat(v)).collect();
        Subspace::span(&self.space, &QMatrix::from_rows(rows).nullspace())
    }

    /// Gram matrix of the basis.
    pub fn gram(&self) -> QMatrix {
        let k = self.dim();
        let mut m = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self.space.inner(&self.basis[i], &self.basis[j]);
            }
        }
        m
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == 0 || !self.gram().determinant().is_zero()
    }

    /// Orthogonal projection onto a nondegenerate subspace.
    pub fn project(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let rhs: Vec<Scalar> = self.basis.iter().map(|b| self.space.inner(b, v)).collect();
        let c = self.gram().solve(&rhs)?;
        let mut out = vec![Scalar::zero(); self.space.dim()];
        for (ci, b) in c.iter().zip(&self.basis) {
            super::matrix::vec_ops::axpy(&mut out, ci, b);
        }
        Some(out)
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_invariant(&self, m: &QMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::space::PseudoEuclideanSpace;

    #[test]
    fn complement_of_null_line() {
        let s = PseudoEuclideanSpace::witt(2);
        let p = Subspace::of_labels(&s, &["p"]).unwrap();
        let perp = p.orthogonal_complement();
        assert_eq!(perp, Subspace::of_labels(&s, &["p", "e1", "e2"]).unwrap());
        assert!(!p.is_nondegenerate());
        assert!(Subspace::of_labels(&s, &["p", "q"]).unwrap().is_nondegenerate());
    }

    #[test]
    fn intersection_dims() {
        let s = PseudoEuclideanSpace::euclidean(4);
        let a = Subspace::of_labels(&s, &["e1", "e2", "e3"]).unwrap();
        let b = Subspace::of_labels(&s, &["e2", "e3", "e4"]).unwrap();
        assert_eq!(a.intersection(&b).dim(), 2);
        assert_eq!(a.sum(&b).dim(), 4);
    }
}
