use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Field, KernelError, Rational};

/// Element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is a prime small enough for single-word arithmetic.
pub fn check_prime(p: u64) -> Result<u64, KernelError> {
    if is_prime(p) && p < (1 << 32) {
        Ok(p)
    } else {
        Err(KernelError::NotPrime(p))
    }
}

impl Fp {
    /// `value` is reduced modulo `p`; `p` is assumed prime.
    pub fn new(value: u64, p: u64) -> Self {
        debug_assert!(is_prime(p));
        Fp { value: value % p, modulus: p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        Fp::new(v.rem_euclid(p as i64) as u64, p)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self.value;
        let mut acc = 1u64 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base, self.modulus);
            }
            base = mulmod(base, base, self.modulus);
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }

    fn same(self, rhs: Fp) {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Image of `x` under the canonical map Z_(p) -> F_p.
pub fn reduce_mod_p(x: &Rational, p: u64) -> Result<Fp, KernelError> {
    let d = big_mod(x.denom(), p);
    if d == 0 {
        return Err(KernelError::Reduction { value: x.to_string(), p });
    }
    let n = Fp::new(big_mod(x.numer(), p), p);
    Ok(n.mul(&Fp::new(d, p).inv()?))
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.modulus
    }

    fn zero(p: &u64) -> Self {
        Fp::new(0, *p)
    }

    fn one(p: &u64) -> Self {
        Fp::new(1, *p)
    }

    fn from_rational(p: &u64, q: &Rational) -> Result<Self, KernelError> {
        reduce_mod_p(q, *p)
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        self.same(*rhs);
        let s = self.value + rhs.value;
        Fp { value: if s >= self.modulus { s - self.modulus } else { s }, modulus: self.modulus }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.same(*rhs);
        let v = if self.value >= rhs.value { self.value - rhs.value } else { self.value + self.modulus - rhs.value };
        Fp { value: v, modulus: self.modulus }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.same(*rhs);
        Fp { value: mulmod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        Fp { value: if self.value == 0 { 0 } else { self.modulus - self.value }, modulus: self.modulus }
    }

    fn inv(&self) -> Result<Self, KernelError> {
        if self.value == 0 {
            return Err(KernelError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
