//! Exact arithmetic: rationals, multivariate rational functions, prime fields.

mod error;
mod expr;
mod field;
mod fp;
mod gcd;
mod poly;
pub mod rational;
mod ratfunc;
mod scalar;

pub use error::KernelError;
pub use expr::{parse_poly, parse_scalar};
pub use field::{fma_assign, Field};
pub use fp::{check_prime, is_prime, reduce_mod_p, Fp};
pub use gcd::gcd;
pub use poly::{Monomial, Poly, Vars};
pub use rational::{parse_rational, rat, rat_frac, Rational};
pub use ratfunc::{RatFunc, ToRatFunc};
pub use scalar::FieldScalar;

use std::collections::BTreeMap;

/// Evaluates a rational function at a point.
pub fn poly_eval(f: &RatFunc, assignment: &BTreeMap<String, Rational>) -> Result<Rational, KernelError> {
    f.eval_named(assignment)
}
