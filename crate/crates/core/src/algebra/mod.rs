//! Structure tensors, algebra pairs and their residual checks.

mod matrix;
mod pair;
mod residuals;
mod tensor;

pub use matrix::{Matrix, Vector};
pub use pair::{AlgebraPair, Product};
pub use residuals::{
    associativity_residuals, change_of_basis, compatibility_residuals, is_automorphism, nonzero_indices,
    pair_hom_residuals, residual_label,
};
pub use tensor::StructureTensor;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
}
