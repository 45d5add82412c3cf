use thiserror::Error;

/// Failures raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed-field operands: {left} and {right}")]
    MixedFields { left: String, right: String },
    #[error("specialization error: {poly} vanishes at the given point")]
    Specialization { poly: String },
    #[error("missing assignment for parameter `{0}`")]
    MissingAssignment(String),
    #[error("cannot reduce {value} modulo {p}: denominator divisible by p")]
    Reduction { value: String, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown parameter `{name}` at column {col}")]
    UnknownParameter { name: String, col: usize },
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}
