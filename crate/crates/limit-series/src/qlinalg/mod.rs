//! Exact scalar arithmetic and subspace calculus over the rationals and
//! prime fields. Everything downstream is built on the canonical
//! reduced-echelon representation of subspaces, which turns subspace
//! equality into structural equality.

mod field;
mod matrix;
mod subspace;

pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use subspace::{
    complement_and_graph, enumerate_subspaces, invert, projective_representatives,
    random_invertible, random_subspace, random_subspace_between, random_vector_in, Subspace,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QlinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("entry grid has wrong length: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("scalar or operand does not belong to the field")]
    FieldMismatch,
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the claimed superspace")]
    NotContained,
    #[error("complements have different dimensions: {left} vs {right}")]
    CodimensionMismatch { left: usize, right: usize },
    #[error("requested dimension {k} exceeds ambient dimension {n}")]
    DimensionTooLarge { k: usize, n: usize },
    #[error("operation is defined over finite fields only")]
    RequiresFiniteField,
    #[error("no subspace of dimension {target} between dimensions {lower} and {upper}")]
    InfeasibleSandwich {
        lower: usize,
        upper: usize,
        target: usize,
    },
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
}
