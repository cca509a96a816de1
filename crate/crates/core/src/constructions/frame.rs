//! Small helpers for assembling tensors on labelled bases.

use crate::liealg::SubalgebraSO;
use crate::mlinalg::{bivector_endo, MultiVector, QMatrix, Scalar, SkewEndomorphism, Space};
use crate::torsioncurv::{CurvatureTensor, TorsionTensor};
use num::Zero;

use super::ConstructionError;

pub(crate) fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub(crate) fn mv(space: &Space, v: &[Scalar]) -> MultiVector {
    MultiVector::vector(space, v)
}

pub(crate) fn wedge(a: &MultiVector, b: &MultiVector) -> MultiVector {
    a.wedge(b).expect("same space, bounded grade")
}

pub(crate) fn sum(a: &MultiVector, b: &MultiVector) -> MultiVector {
    a.add(b).expect("same space and grade")
}

pub(crate) fn skew(b: &MultiVector) -> SkewEndomorphism {
    bivector_endo(b).expect("grade 2")
}

pub(crate) fn torsion(form: MultiVector) -> TorsionTensor {
    TorsionTensor::new(form).expect("grade 3")
}

/// 2-form with coefficient matrix `c` on the basis vectors `idx`.
pub(crate) fn two_form(space: &Space, c: &QMatrix, idx: &[usize], name: &str) -> Result<MultiVector, ConstructionError> {
    let k = idx.len();
    if c.rows() != k || c.cols() != k {
        return Err(ConstructionError::InvalidParameter {
            name: name.to_string(),
            reason: format!("expected a {k}×{k} coefficient matrix"),
        });
    }
    let mut out = MultiVector::zero(space, 2)?;
    for i in 0..k {
        for j in i + 1..k {
            let (u, l) = (&c[(i, j)], &c[(j, i)]);
            if !l.is_zero() && *l != -u.clone() {
                return Err(ConstructionError::InvalidParameter {
                    name: name.to_string(),
                    reason: "coefficient matrix must be antisymmetric or upper triangular".into(),
                });
            }
            out.add_term(&[idx[i], idx[j]], u.clone());
        }
    }
    Ok(out)
}

pub(crate) fn embed_mv(a: &MultiVector, space: &Space, idx: &[usize]) -> MultiVector {
    let mut out = MultiVector::zero(space, a.grade()).expect("grade in range");
    for (ix, c) in a.terms() {
        let mapped: Vec<usize> = ix.iter().map(|&i| idx[i]).collect();
        out.add_term(&mapped, c.clone());
    }
    out
}

pub(crate) fn embed_skew(a: &SkewEndomorphism, space: &Space, idx: &[usize]) -> SkewEndomorphism {
    skew(&embed_mv(&a.to_bivector().expect("skew"), space, idx))
}

pub(crate) fn commutes(a: &SkewEndomorphism, b: &SkewEndomorphism) -> bool {
    a.bracket(b).is_zero()
}

pub(crate) fn commutes_with_all(a: &SkewEndomorphism, g: &SubalgebraSO) -> bool {
    g.basis().iter().all(|b| commutes(a, b))
}

pub(crate) fn kills_form(xi: &SkewEndomorphism, t: &MultiVector) -> bool {
    crate::mlinalg::act_multivector(xi, t).expect("same space").is_zero()
}

pub(crate) fn kills_curvature(xi: &SkewEndomorphism, r: &CurvatureTensor) -> bool {
    r.acted_on(xi).is_zero()
}
