//! Exact pseudo-Euclidean multilinear algebra.

pub mod matrix;
pub mod multivector;
pub mod scalar;
pub mod skew;
pub mod space;
pub mod subspace;

pub use matrix::QMatrix;
pub use multivector::{combinations, MultiVector, MAX_GRADE};
pub use scalar::{one, parse_scalar, q, qi, zero, Scalar};
pub use skew::{bivector_endo, endo_bivector, SkewEndomorphism};
pub use space::{FrameKind, PseudoEuclideanSpace, Space};
pub use subspace::Subspace;

use num::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("expected grade {expected}, found {found}")]
    GradeError { expected: usize, found: usize },
    #[error("unsupported tensor rank {0}")]
    RankError(usize),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("matrix is not skew with respect to the metric")]
    NotSkew,
    #[error("expected dimension {expected}, found {found}")]
    DimensionError { expected: usize, found: usize },
}

/// Tensors the `so(r,s)` action is defined on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tensor {
    Vector(Vec<Scalar>),
    Multi(MultiVector),
    /// Covariant bilinear form `B(X,Y) = Xᵀ B Y`.
    Bilinear(QMatrix),
    /// Endomorphism acting on column vectors.
    Endo(QMatrix),
}

/// Derivation action of a skew endomorphism.
///
/// Vectors map to `ξv`, multivectors by the Leibniz rule, covariant forms by
/// `(ξ·B)(X,Y) = -B(ξX,Y) - B(X,ξY)`, endomorphisms by the commutator.
pub fn so_action(xi: &SkewEndomorphism, t: &Tensor) -> Result<Tensor, AlgebraError> {
    let n = xi.space().dim();
    let m = xi.matrix();
    match t {
        Tensor::Vector(v) => {
            check_len(n, v.len())?;
            Ok(Tensor::Vector(xi.apply(v)))
        }
        Tensor::Multi(a) => {
            if !space::same_space(a.space(), xi.space()) {
                return Err(AlgebraError::SpaceMismatch);
            }
            Ok(Tensor::Multi(act_multivector(xi, a)?))
        }
        Tensor::Bilinear(b) => {
            check_len(n, b.rows())?;
            let lhs = &(&m.transpose() * b) + &(b * m);
            Ok(Tensor::Bilinear(-&lhs))
        }
        Tensor::Endo(a) => {
            check_len(n, a.rows())?;
            Ok(Tensor::Endo(m.bracket(a)))
        }
    }
}

/// Derivation action on a multivector.
pub fn act_multivector(xi: &SkewEndomorphism, a: &MultiVector) -> Result<MultiVector, AlgebraError> {
    let space = a.space();
    let n = space.dim();
    let m = xi.matrix();
    let mut out = MultiVector::zero(space, a.grade())?;
    for (idx, c) in a.terms() {
        for pos in 0..idx.len() {
            // e_{idx[pos]} replaced by Σ_r m[r, idx[pos]] e_r
            for r in 0..n {
                let mr = &m[(r, idx[pos])];
                if mr.is_zero() {
                    continue;
                }
                let mut new_idx = idx.clone();
                new_idx[pos] = r;
                out.add_term(&new_idx, c * mr);
            }
        }
    }
    Ok(out)
}

fn check_len(expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::DimensionError { expected, found })
    }
}
