//! Subalgebras of `so(r,s)`, abstract Lie algebras and low-dimensional
//! identification.

mod classify;
mod structure;
mod subalgebra;

pub use classify::{classify, classify_dim3, LieClassification, LieLabel};
pub use structure::{AbstractLieAlgebra, StructureReport};
pub use subalgebra::{annihilator, annihilator_all, fixed_vectors, lie_closure, tensor_coords, SubalgebraSO};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("expected dimension {expected}, found {found}")]
    DimensionError { expected: usize, found: usize },
    #[error("structure constants not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("label count {labels} does not match dimension {dim}")]
    LabelCount { labels: usize, dim: usize },
}
