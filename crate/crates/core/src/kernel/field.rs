use std::fmt;

use super::{KernelError, Poly, Rational};

/// Exact field interface shared by every algorithm in the crate.
///
/// `Ctx` carries whatever an element needs to know about its field: nothing
/// for the rationals, the variable list for rational functions, the modulus
/// for prime fields.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Result<Self, KernelError>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, KernelError>;

    fn div(&self, rhs: &Self) -> Result<Self, KernelError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_rational(ctx, &Rational::from_integer(n.into()))
            .expect("integers embed in every field")
    }

    /// Cost of using this element as an elimination pivot.
    fn pivot_weight(&self) -> usize {
        0
    }

    /// Non-constant polynomials that must not vanish once this element has
    /// been divided by.
    fn pivot_exclusions(&self) -> Vec<Poly> {
        Vec::new()
    }
}

/// `a += b * c`
pub fn fma_assign<F: Field>(a: &mut F, b: &F, c: &F) {
    if b.is_zero() || c.is_zero() {
        return;
    }
    *a = a.add(&b.mul(c));
}
