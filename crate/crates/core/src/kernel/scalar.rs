use std::fmt;

use super::{Field, Fp, KernelError, RatFunc, Rational};

/// A scalar tagged with its field, for callers that mix fields at runtime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rat(Rational),
    Func(RatFunc),
    Fp(Fp),
}

impl FieldScalar {
    fn field_name(&self) -> String {
        match self {
            FieldScalar::Rat(_) => "Q".into(),
            FieldScalar::Func(f) => format!("Q({})", f.vars().names().join(",")),
            FieldScalar::Fp(x) => format!("F_{}", x.modulus()),
        }
    }

    fn mixed(&self, rhs: &Self) -> KernelError {
        KernelError::MixedFields { left: self.field_name(), right: rhs.field_name() }
    }

    fn zip(
        &self,
        rhs: &Self,
        q: impl FnOnce(&Rational, &Rational) -> Result<Rational, KernelError>,
        f: impl FnOnce(&RatFunc, &RatFunc) -> Result<RatFunc, KernelError>,
        p: impl FnOnce(&Fp, &Fp) -> Result<Fp, KernelError>,
    ) -> Result<FieldScalar, KernelError> {
        match (self, rhs) {
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => q(a, b).map(FieldScalar::Rat),
            (FieldScalar::Func(a), FieldScalar::Func(b)) if a.vars() == b.vars() => f(a, b).map(FieldScalar::Func),
            (FieldScalar::Fp(a), FieldScalar::Fp(b)) if a.modulus() == b.modulus() => p(a, b).map(FieldScalar::Fp),
            _ => Err(self.mixed(rhs)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, KernelError> {
        self.zip(rhs, |a, b| Ok(a.add(b)), |a, b| Ok(a.add(b)), |a, b| Ok(a.add(b)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, KernelError> {
        self.zip(rhs, |a, b| Ok(a.sub(b)), |a, b| Ok(a.sub(b)), |a, b| Ok(a.sub(b)))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, KernelError> {
        self.zip(rhs, |a, b| Ok(a.mul(b)), |a, b| Ok(a.mul(b)), |a, b| Ok(a.mul(b)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, KernelError> {
        self.zip(rhs, |a, b| a.div(b), |a, b| a.div(b), |a, b| a.div(b))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rat(a) => Field::is_zero(a),
            FieldScalar::Func(a) => a.is_zero(),
            FieldScalar::Fp(a) => a.is_zero(),
        }
    }

    /// Exact equality; errors on operands from different fields.
    pub fn checked_eq(&self, rhs: &Self) -> Result<bool, KernelError> {
        self.checked_sub(rhs).map(|d| d.is_zero())
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rat(a) => write!(f, "{a}"),
            FieldScalar::Func(a) => write!(f, "{a}"),
            FieldScalar::Fp(a) => write!(f, "{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldScalar::Rat(rat(1));
        let b = FieldScalar::Fp(Fp::new(1, 5));
        assert!(matches!(a.checked_add(&b), Err(KernelError::MixedFields { .. })));
        let c = FieldScalar::Fp(Fp::new(1, 7));
        assert!(b.checked_mul(&c).is_err());
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = FieldScalar::Rat(rat(1));
        let z = FieldScalar::Rat(rat(0));
        assert_eq!(a.checked_div(&z), Err(KernelError::DivisionByZero));
    }

    #[test]
    fn same_field_arithmetic() {
        let a = FieldScalar::Fp(Fp::new(2, 5));
        let one = FieldScalar::Fp(Fp::new(1, 5));
        assert_eq!(one.checked_div(&a).unwrap(), FieldScalar::Fp(Fp::new(3, 5)));
        assert!(a.checked_eq(&a).unwrap());
    }
}
