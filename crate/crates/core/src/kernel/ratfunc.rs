use std::collections::BTreeMap;
use std::fmt;


use super::{gcd, Field, KernelError, Poly, Rational, Vars};

/// Element of the fraction field Frac(Q[x1..xk]).
///
/// Canonical form: numerator and denominator coprime, denominator with
/// leading coefficient one under graded-lex order, zero stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let one = Poly::one(num.vars());
            return RatFunc { num, den: one };
        }
        if let Some(c) = den.constant_value() {
            let one = Poly::one(den.vars());
            return RatFunc { num: num.scale(&c.recip()), den: one };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(Poly::constant(vars, c))
    }

    pub fn var(vars: &Vars, name: &str) -> Option<Self> {
        Poly::var(vars, name).map(Self::from_poly)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.is_poly() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_poly() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Value at a point; fails naming the denominator if it vanishes there.
    pub fn eval_named(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, KernelError> {
        let d = self.den.eval_named(assignment)?;
        if d.is_zero() {
            return Err(KernelError::Specialization { poly: self.den.to_string() });
        }
        Ok(self.num.eval_named(assignment)? / d)
    }

    /// Substitutes the assigned variables, re-expressing the rest over `target`.
    pub fn remap(&self, target: &Vars, assignment: &BTreeMap<String, Rational>) -> Result<RatFunc, KernelError> {
        let den = self.den.remap(target, assignment)?;
        if den.is_zero() {
            return Err(KernelError::Specialization { poly: self.den.to_string() });
        }
        Ok(Self::normalized(self.num.remap(target, assignment)?, den))
    }

    pub fn embed(&self, target: &Vars) -> RatFunc {
        if self.vars() == target {
            return self.clone();
        }
        RatFunc { num: self.num.embed(target), den: self.den.embed(target) }
    }
}

impl Field for RatFunc {
    type Ctx = Vars;

    fn ctx(&self) -> Vars {
        self.vars().clone()
    }

    fn zero(ctx: &Vars) -> Self {
        Self::from_poly(Poly::zero(ctx))
    }

    fn one(ctx: &Vars) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    fn from_rational(ctx: &Vars, q: &Rational) -> Result<Self, KernelError> {
        Ok(Self::constant(ctx, q.clone()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_poly() && rhs.is_poly() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::normalized(num, &self.den * &rhs.den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_poly() && rhs.is_poly() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.vars());
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff().recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self, KernelError> {
        if self.num.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        let lc = self.num.leading_coeff().recip();
        Ok(RatFunc { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    fn pivot_weight(&self) -> usize {
        (self.num.total_degree() + self.den.total_degree()) as usize
    }

    fn pivot_exclusions(&self) -> Vec<Poly> {
        [&self.num, &self.den]
            .into_iter()
            .filter(|p| !p.is_constant())
            .map(Poly::primitive)
            .collect()
    }
}

/// Scalars that embed into a rational function field.
pub trait ToRatFunc: Field {
    fn to_ratfunc(&self, vars: &Vars) -> RatFunc;
}

impl ToRatFunc for Rational {
    fn to_ratfunc(&self, vars: &Vars) -> RatFunc {
        RatFunc::constant(vars, self.clone())
    }
}

impl ToRatFunc for RatFunc {
    fn to_ratfunc(&self, vars: &Vars) -> RatFunc {
        self.embed(vars)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        let simple_den = self.den.num_terms() == 1
            && self.den.used_vars().iter().filter(|&&u| u).count() == 1;
        if simple_den {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}
