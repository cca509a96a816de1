use super::matrix::QMatrix;
use super::multivector::MultiVector;
use super::scalar::Scalar;
use super::space::{same_space, Space};
use super::AlgebraError;
use num::Zero;
use std::fmt;

/// Endomorphism `M` with `MᵀG + GM = 0`, acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewEndomorphism {
    space: Space,
    matrix: QMatrix,
}

impl fmt::Debug for SkewEndomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_bivector() {
            Ok(b) => write!(f, "Skew({})", b.render()),
            Err(_) => write!(f, "Skew({:?})", self.matrix),
        }
    }
}

/// Whether `m` is skew with respect to the metric of `space`.
pub fn is_skew(space: &Space, m: &QMatrix) -> bool {
    let g = space.metric();
    let lhs = &(&m.transpose() * g) + &(g * m);
    lhs.is_zero()
}

impl SkewEndomorphism {
    pub fn new(space: &Space, matrix: QMatrix) -> Result<Self, AlgebraError> {
        if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
            return Err(AlgebraError::DimensionError { expected: space.dim(), found: matrix.rows() });
        }
        if !is_skew(space, &matrix) {
            return Err(AlgebraError::NotSkew);
        }
        Ok(SkewEndomorphism { space: space.clone(), matrix })
    }

    pub fn zero(space: &Space) -> Self {
        SkewEndomorphism { space: space.clone(), matrix: QMatrix::zeros(space.dim(), space.dim()) }
    }

    pub(crate) fn new_unchecked(space: &Space, matrix: QMatrix) -> Self {
        SkewEndomorphism { space: space.clone(), matrix }
    }

    /// Endomorphism of a bivector: `(X∧Y)Z = g(X,Z)Y - g(Y,Z)X`.
    pub fn from_bivector(b: &MultiVector) -> Result<Self, AlgebraError> {
        bivector_endo(b)
    }

    /// Endomorphism of the blade `labels[0] ∧ labels[1]`.
    pub fn from_labels(space: &Space, a: &str, b: &str) -> Result<Self, AlgebraError> {
        bivector_endo(&MultiVector::blade_by_labels(space, &[a, b])?)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn bracket(&self, other: &Self) -> Self {
        SkewEndomorphism { space: self.space.clone(), matrix: self.matrix.bracket(&other.matrix) }
    }

    pub fn add(&self, other: &Self) -> Self {
        SkewEndomorphism { space: self.space.clone(), matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SkewEndomorphism { space: self.space.clone(), matrix: &self.matrix - &other.matrix }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SkewEndomorphism { space: self.space.clone(), matrix: self.matrix.scale(s) }
    }

    pub fn compose(&self, other: &Self) -> QMatrix {
        &self.matrix * &other.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn to_bivector(&self) -> Result<MultiVector, AlgebraError> {
        endo_bivector(self)
    }

    /// Value of the associated 2-form `g(M X, Y)`.
    pub fn form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.space.inner(&self.apply(x), y)
    }
}

/// Skew endomorphism of a bivector.
pub fn bivector_endo(b: &MultiVector) -> Result<SkewEndomorphism, AlgebraError> {
    if b.grade() != 2 {
        return Err(AlgebraError::GradeError { expected: 2, found: b.grade() });
    }
    let space = b.space();
    let n = space.dim();
    let g = space.metric();
    let mut m = QMatrix::zeros(n, n);
    for (idx, c) in b.terms() {
        let (a, bb) = (idx[0], idx[1]);
        for j in 0..n {
            if !g[(a, j)].is_zero() {
                let v = c * &g[(a, j)];
                m[(bb, j)] += v;
            }
            if !g[(bb, j)].is_zero() {
                let v = c * &g[(bb, j)];
                m[(a, j)] -= v;
            }
        }
    }
    Ok(SkewEndomorphism::new_unchecked(space, m))
}

/// Bivector of a skew endomorphism; inverse of [`bivector_endo`].
pub fn endo_bivector(m: &SkewEndomorphism) -> Result<MultiVector, AlgebraError> {
    let space = m.space();
    let n = space.dim();
    // ω_{zw} = g(M e_z, e_w) = (Mᵀ G)_{zw}; raise both indices.
    let lower = &m.matrix().transpose() * space.metric();
    let gi = space.metric_inverse();
    let upper = &(gi * &lower) * gi;
    let mut b = MultiVector::zero(space, 2)?;
    for i in 0..n {
        for j in i + 1..n {
            b.add_term(&[i, j], upper[(i, j)].clone());
        }
    }
    Ok(b)
}

/// Checks two endomorphisms share a space.
pub fn check_same(a: &SkewEndomorphism, b: &SkewEndomorphism) -> Result<(), AlgebraError> {
    if same_space(a.space(), b.space()) {
        Ok(())
    } else {
        Err(AlgebraError::SpaceMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::scalar::qi;
    use crate::mlinalg::space::PseudoEuclideanSpace;

    #[test]
    fn witt_pe_on_q() {
        let s = PseudoEuclideanSpace::witt(1);
        let pe = SkewEndomorphism::from_labels(&s, "p", "e1").unwrap();
        assert_eq!(pe.apply(&s.basis_vector(2)), s.basis_vector(1));
    }

    #[test]
    fn plane_rotation_matrix() {
        let s = PseudoEuclideanSpace::euclidean(2);
        let r = SkewEndomorphism::from_labels(&s, "e1", "e2").unwrap();
        assert_eq!(r.matrix(), &QMatrix::from_i64(&[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn round_trip_lorentz() {
        let s = PseudoEuclideanSpace::witt(2);
        let mut b = MultiVector::zero(&s, 2).unwrap();
        b.add_term(&[0, 3], qi(2));
        b.add_term(&[1, 2], qi(-3));
        b.add_term(&[0, 1], qi(5));
        let m = bivector_endo(&b).unwrap();
        assert!(is_skew(&s, m.matrix()));
        assert_eq!(endo_bivector(&m).unwrap(), b);
    }

    #[test]
    fn rejects_non_skew() {
        let s = PseudoEuclideanSpace::euclidean(2);
        assert!(SkewEndomorphism::new(&s, QMatrix::identity(2)).is_err());
    }
}
