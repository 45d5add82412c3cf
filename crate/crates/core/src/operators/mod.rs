//! Nonlinear operator identities, family verification and the finite-field
//! oracle.

mod ansatz;
mod kind;
mod oracle;
mod param_matrix;
mod residuals;
mod verify;

pub use ansatz::{ansatz_constraints, AffineSolution, AnsatzResult};
pub use kind::{FamilyKind, OperatorKind};
pub use oracle::{exhaustive_solutions_mod_p, OracleError, OracleResult, DEFAULT_LIMIT, MAX_STORED};
pub use param_matrix::ParamMatrix;
pub use residuals::operator_residuals;
pub use verify::{
    classify, exclusion_factors, strip_factors, verify_family, DetInfo, FamilyVerdict, ResidualSet, Verdict, Witness,
};
