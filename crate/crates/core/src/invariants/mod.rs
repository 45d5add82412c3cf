//! Linear invariant spaces: derivations, centroids, quasi-centroids,
//! quasi-derivations and generalized derivations.

mod kind;
pub mod nullspace;
mod solution;
mod system;

pub use kind::InvariantKind;
pub use nullspace::{rref, solve_affine, Span};
pub use solution::{format_solution, fresh_params, nullspace, solve, SolutionSpace};
pub use system::{build_system, stack, LinearSystem, RowTag};
