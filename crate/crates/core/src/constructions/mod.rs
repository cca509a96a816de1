//! Builders for the explicit families: weakly irreducible subalgebras, the
//! product extension, the reducible-holonomy examples and the low-dimensional
//! catalog.

mod base;
mod examples;
mod extension;
mod families;
mod frame;
mod params;
mod weak;

pub use base::RiemannianBase;
pub use examples::{
    build_dim_l1, build_dim_l2, build_dim_l3, build_dim_l4, build_vertical, DimL1Input, DimL2Input, DimL3Input,
    DimL4Input, VerticalInput,
};
pub use extension::{expected_extension_holonomy, extend_product, extension_instances, heisenberg_preset, oscillator_preset, ExtensionInput};
pub use families::{
    build_family, catalog, family, family_constraint_check, family_ids, grid, plane_wave_model, CatalogEntry, CatalogLabel, Family,
    FAMILIES,
};
pub use params::{FamilyParams, ParamValue, GRID};
pub use weak::{build_weak_type, WeakMap};

use crate::mlinalg::AlgebraError;
use crate::models::{InfinitesimalModel, ModelError};
use crate::torsioncurv::CurvError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ConstructionError {
    #[error("family `{family}` violates {}", clauses.join(", "))]
    FamilyConstraintError { family: String, clauses: Vec<String> },
    /// The model is still built; only the holonomy conclusion is withheld.
    #[error("b_0 ∩ n has dimension {overlap}")]
    HolonomyOverlap { model: Box<InfinitesimalModel>, overlap: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` needs parameter `{name}`")]
    MissingParameter { family: String, name: String },
    #[error("parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curv(#[from] CurvError),
}

/// One evaluated constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
}

/// Outcome of [`family_constraint_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintReport {
    pub family: String,
    pub clauses: Vec<Clause>,
}

impl ConstraintReport {
    pub fn new(family: &str) -> Self {
        ConstraintReport { family: family.to_string(), clauses: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.clauses.push(Clause { name: name.into(), passed });
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }

    pub fn into_result(self) -> Result<(), ConstructionError> {
        if self.passed() {
            Ok(())
        } else {
            let clauses = self.failures();
            Err(ConstructionError::FamilyConstraintError { family: self.family, clauses })
        }
    }
}
