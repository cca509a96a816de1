//! Infinitesimal models `(m, R, T)` of naturally reductive spaces.

mod classify;
mod transvection;
mod validate;
mod weak;

pub use classify::{classify_case, invariant_subspaces, CaseKind, CaseLabel};
pub use transvection::{from_reductive_pair, natural_reductivity_failure, transvection, Transvection};
pub use validate::{validate, Check, Decomposability, ValidationReport};
pub use weak::{weak_type, weak_type_at, WeakType, WeakTypeInfo};

use crate::liealg::{LieError, SubalgebraSO};
use crate::mlinalg::{AlgebraError, MultiVector, QMatrix, SkewEndomorphism, Space, Subspace};
use crate::torsioncurv::{CurvError, CurvatureTensor, TorsionTensor};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model is inconsistent: {0}")]
    ModelInconsistent(String),
    #[error("expected Lorentzian signature, found ({pos},{neg})")]
    SignatureError { pos: usize, neg: usize },
    #[error("the algebra does not preserve the isotropic line: {0}")]
    NotAdapted(String),
    #[error("not weakly irreducible: {0}")]
    NotWeaklyIrreducible(String),
    #[error("decomposition is not reductive: {0}")]
    NotReductive(String),
    #[error("torsion is not totally skew: {0}")]
    NotNaturallyReductive(String),
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("matrix is not an isometry of the model space")]
    NotAnIsometry,
    #[error(transparent)]
    Curv(#[from] CurvError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The triple `(m, R, T)` together with optional candidate splittings used
/// by the classifier.
#[derive(Clone, Debug)]
pub struct InfinitesimalModel {
    space: Space,
    curvature: CurvatureTensor,
    torsion: TorsionTensor,
    candidates: Vec<Subspace>,
}

impl InfinitesimalModel {
    pub fn new(curvature: CurvatureTensor, torsion: TorsionTensor) -> Result<Self, ModelError> {
        if !crate::mlinalg::space::same_space(curvature.space(), torsion.space()) {
            return Err(ModelError::SpaceMismatch);
        }
        Ok(InfinitesimalModel { space: curvature.space().clone(), curvature, torsion, candidates: Vec::new() })
    }

    pub fn flat(space: &Space) -> Self {
        InfinitesimalModel {
            space: space.clone(),
            curvature: CurvatureTensor::zero(space),
            torsion: TorsionTensor::zero(space),
            candidates: Vec::new(),
        }
    }

    pub fn with_candidates(mut self, candidates: Vec<Subspace>) -> Self {
        self.candidates = candidates;
        self
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn curvature(&self) -> &CurvatureTensor {
        &self.curvature
    }

    pub fn torsion(&self) -> &TorsionTensor {
        &self.torsion
    }

    pub fn candidates(&self) -> &[Subspace] {
        &self.candidates
    }

    /// The model moved by an isometry `a` (`aᵀ G a = G`): `T' = a_* T`,
    /// `R'(X,Y) = a R(a⁻¹X, a⁻¹Y) a⁻¹`.
    pub fn transformed(&self, a: &QMatrix) -> Result<Self, ModelError> {
        let s = &self.space;
        let n = s.dim();
        if a.rows() != n || a.cols() != n || &(&a.transpose() * s.metric()) * a != *s.metric() {
            return Err(ModelError::NotAnIsometry);
        }
        let inv = a.inverse().ok_or(ModelError::NotAnIsometry)?;
        let mut form = MultiVector::zero(s, 3)?;
        for (idx, c) in self.torsion.form().terms() {
            let mut blade = MultiVector::scalar(s, c.clone());
            for &i in idx {
                blade = blade.wedge(&MultiVector::vector(s, &a.col(i)))?;
            }
            form = form.add(&blade)?;
        }
        let mut r = CurvatureTensor::zero(s);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.curvature.eval(&inv.col(i), &inv.col(j));
                r.set(i, j, SkewEndomorphism::new(s, &(a * v.matrix()) * &inv)?);
            }
        }
        let candidates = self
            .candidates
            .iter()
            .map(|c| Subspace::span(s, &c.basis().iter().map(|v| a.mul_vec(v)).collect::<Vec<_>>()))
            .collect();
        Ok(InfinitesimalModel { space: s.clone(), curvature: r, torsion: TorsionTensor::new(form)?, candidates })
    }

    /// `span(im R)`.
    pub fn holonomy(&self) -> SubalgebraSO {
        SubalgebraSO::span(&self.space, &self.curvature.images())
    }
}
