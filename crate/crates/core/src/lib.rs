//! Exact computations on compatible pairs of associative algebras given by
//! structure constants.

pub mod algebra;
pub mod catalog;
pub mod invariants;
pub mod kernel;
pub mod operators;
pub mod report;

pub use algebra::{AlgebraPair, Matrix, Product, StructureTensor, Vector};
pub use invariants::{InvariantKind, LinearSystem, SolutionSpace};
pub use kernel::{Field, FieldScalar, Fp, KernelError, Poly, RatFunc, Rational, Vars};
pub use operators::ParamMatrix;
