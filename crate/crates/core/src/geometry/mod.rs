//! Symbolic differential geometry on a coordinate chart.
//!
//! Vector fields have rational-function coefficients, connections are given
//! by Christoffel symbols `∇_{∂ᵢ}∂ⱼ = Σₖ Γᵏᵢⱼ ∂ₖ`, and all zero tests are
//! exact normalization to the zero rational function.

mod connection;
mod field;
mod frame;
pub mod gl;
mod iat;
mod span;
mod table;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::symcore::SymError;

pub use connection::{
    covariant_derivative, curvature, flatness_witness, is_flat_affine, lie_bracket, torsion, Connection, TensorReport,
};
pub use field::VectorField;
pub use frame::{connection_from_frame, Frame};
pub use iat::{iat_residuals, is_infinitesimal_affine, solve_iat_ansatz, IatReport};
pub use span::{express_in_basis, independent_subset, SpanSolver};
pub use table::{bracket_table, product_table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("connection is not flat affine: {0}")]
    NotFlat(String),
    #[error("frame matrix is singular")]
    SingularFrame,
    #[error("frame has {fields} fields on a {dim}-dimensional chart")]
    FrameSize { fields: usize, dim: usize },
    #[error("frame round-trip failed for pair ({0}, {1})")]
    FrameRoundTrip(usize, usize),
    #[error("not in constant span")]
    NotInSpan,
    #[error("field {0} is a linear combination of the earlier fields")]
    DependentFields(usize),
    #[error("ansatz term {0} is a linear combination of the earlier terms")]
    DependentAnsatz(usize),
    #[error("field {field} is not an infinitesimal affine transformation (pair {witness:?})")]
    NotInfinitesimalAffine { field: usize, witness: (usize, usize) },
    #[error("product of fields {0} and {1} is not a constant combination of the fields")]
    ProductOutsideSpan(usize, usize),
    #[error("bracket of fields {0} and {1} is not a constant combination of the fields")]
    BracketOutsideSpan(usize, usize),
}
