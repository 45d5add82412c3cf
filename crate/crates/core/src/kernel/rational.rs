use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, KernelError};

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n` or `n/d` with optional leading sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl Field for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_rational(_: &(), q: &Rational) -> Result<Self, KernelError> {
        Ok(q.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Result<Self, KernelError> {
        if Zero::is_zero(self) {
            Err(KernelError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Least common multiple of the denominators.
pub(crate) fn denominator_lcm<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Greatest common divisor of the numerators (non-negative).
pub(crate) fn numerator_gcd<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    it.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_in_lowest_terms() {
        let s = Field::add(&rat_frac(1, 2), &rat_frac(1, 3));
        assert_eq!(s, rat_frac(5, 6));
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6"), Some(rat_frac(-1, 2)));
        assert_eq!(parse_rational("01"), Some(rat(1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Field::inv(&rat(0)), Err(KernelError::DivisionByZero));
    }
}
