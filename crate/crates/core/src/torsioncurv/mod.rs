//! Torsion and curvature calculus: `σ_T`, Bianchi identities with torsion,
//! curvature spaces and Berger algebras with torsion.

mod spaces;
mod tensors;

pub use spaces::{berger_check, curvature_space, holonomy_of_space, p_space, CurvatureSpace, PMap};
pub use tensors::{CurvatureTensor, TorsionTensor};

use crate::mlinalg::multivector::combinations;
use crate::mlinalg::{AlgebraError, MultiVector, Scalar, SkewEndomorphism};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;
use tensors::{sigma_vector, torsion_table};

/// Sign of the torsion terms in `R = R^g + s(¼[T(X),T(Y)] - ½T(T(X)Y))`
/// for the curvature `R(X,Y) = [∇_X,∇_Y] - ∇_[X,Y]` of `∇ = ∇^g + ½T`.
pub const LC_TORSION_SIGN: i32 = -1;

/// Sign in the first Bianchi identity `Σ_cyc R(X,Y)Z = s Σ_cyc T(T(X,Y),Z)`.
pub const BIANCHI_SIGN: i32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvError {
    #[error("expected grade {expected}, found {found}")]
    GradeError { expected: usize, found: usize },
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("internal inconsistency: {0}")]
    InternalError(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The 4-form `σ_T(X,Y,Z,W) = g(Σ_cyc T(T(X,Y),Z), W)`.
pub fn sigma_of(t: &TorsionTensor) -> Result<MultiVector, CurvError> {
    let space = t.space();
    let n = space.dim();
    if n < 4 {
        return Ok(MultiVector::zero(space, 4)?);
    }
    let tv = torsion_table(t);
    let endos = t.endos();
    let mut comps = BTreeMap::new();
    let mut cache: BTreeMap<(usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
    let mut sv = |i, j, k| cache.entry((i, j, k)).or_insert_with(|| sigma_vector(t, &tv, &endos, i, j, k)).clone();
    for ix in combinations(n, 4) {
        let (a, b, c, d) = (ix[0], ix[1], ix[2], ix[3]);
        let val = space.inner(&sv(a, b, c), &space.basis_vector(d));
        // the cyclic sum is alternating in (X,Y,Z); check the last slot too
        let swapped = space.inner(&sv(a, b, d), &space.basis_vector(c));
        if val != -swapped {
            return Err(CurvError::InternalError(format!("σ_T not alternating at {ix:?}")));
        }
        if !val.is_zero() {
            comps.insert(ix, val);
        }
    }
    Ok(MultiVector::from_lowered(space, 4, &comps)?)
}

/// Values of `Σ_cyc R(X,Y)Z - s Σ_cyc T(T(X,Y),Z)` on basis triples `i<j<k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BianchiResidual {
    pub values: BTreeMap<(usize, usize, usize), Vec<Scalar>>,
}

impl BianchiResidual {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first_failure(&self) -> Option<(usize, usize, usize)> {
        self.values.keys().next().copied()
    }
}

/// First Bianchi identity with torsion. Only nonzero values are kept.
pub fn bianchi_residual(r: &CurvatureTensor, t: &TorsionTensor, sign: i32) -> Result<BianchiResidual, CurvError> {
    if !crate::mlinalg::space::same_space(r.space(), t.space()) {
        return Err(CurvError::SpaceMismatch);
    }
    let n = r.space().dim();
    let tv = torsion_table(t);
    let endos = t.endos();
    let s = Scalar::from_integer(sign.into());
    let mut values = BTreeMap::new();
    for ix in combinations(n, 3) {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let mut acc = r.get(i, j).matrix().col(k);
        for (a, b, c) in [(j, k, i), (k, i, j)] {
            let col = r.get(a, b).matrix().col(c);
            acc.iter_mut().zip(col).for_each(|(x, y)| *x += y);
        }
        let sig = sigma_vector(t, &tv, &endos, i, j, k);
        acc.iter_mut().zip(sig).for_each(|(x, y)| *x -= &s * y);
        if !acc.iter().all(|x| x.is_zero()) {
            values.insert((i, j, k), acc);
        }
    }
    Ok(BianchiResidual { values })
}

/// Second Bianchi identity `Σ_cyc R(T(X,Y),Z) = 0`; returns the first
/// failing basis triple.
pub fn second_bianchi_failure(r: &CurvatureTensor, t: &TorsionTensor) -> Option<(usize, usize, usize)> {
    let space = r.space();
    let n = space.dim();
    let tv = torsion_table(t);
    for ix in combinations(n, 3) {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let mut acc = SkewEndomorphism::zero(space);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            acc = acc.add(&r.eval(&tv[a][b], &space.basis_vector(c)));
        }
        if !acc.is_zero() {
            return Some((i, j, k));
        }
    }
    None
}

/// Whether `g(R(X,Y)Z,W) = g(R(Z,W)X,Y)` on all basis quadruples.
pub fn pair_symmetry_check(r: &CurvatureTensor) -> bool {
    pair_symmetry_failure(r).is_none()
}

pub fn pair_symmetry_failure(r: &CurvatureTensor) -> Option<(usize, usize, usize, usize)> {
    let n = r.space().dim();
    let pairs = combinations(n, 2);
    for (a, p) in pairs.iter().enumerate() {
        for q in &pairs[a..] {
            if r.lowered(p[0], p[1], q[0], q[1]) != r.lowered(q[0], q[1], p[0], p[1]) {
                return Some((p[0], p[1], q[0], q[1]));
            }
        }
    }
    None
}

/// Curvature of `∇ = ∇^g + ½T` from the Levi-Civita curvature, for parallel `T`.
pub fn curvature_from_lc(rg: &CurvatureTensor, t: &TorsionTensor) -> Result<CurvatureTensor, CurvError> {
    if !crate::mlinalg::space::same_space(rg.space(), t.space()) {
        return Err(CurvError::SpaceMismatch);
    }
    let space = rg.space();
    let n = space.dim();
    let endos = t.endos();
    let tv = torsion_table(t);
    let s = Scalar::from_integer(LC_TORSION_SIGN.into());
    let quarter = crate::mlinalg::q(1, 4);
    let half = crate::mlinalg::q(1, 2);
    let mut r = rg.clone();
    for ix in combinations(n, 2) {
        let (i, j) = (ix[0], ix[1]);
        let a = endos[i].bracket(&endos[j]).scale(&quarter);
        let b = t.endo(&tv[i][j]).scale(&half);
        r.add_to(i, j, &a.sub(&b).scale(&s));
    }
    Ok(r)
}
