use std::collections::BTreeMap;

use super::StructureTensor;
use crate::kernel::{reduce_mod_p, Field, Fp, KernelError, Poly, RatFunc, Rational, Vars};

/// The two products of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Product {
    Bullet,
    Star,
}

impl Product {
    pub const BOTH: [Product; 2] = [Product::Bullet, Product::Star];

    pub fn name(self) -> &'static str {
        match self {
            Product::Bullet => "bullet",
            Product::Star => "star",
        }
    }
}

/// Two multiplications on one basis, with shared parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPair<F: Field> {
    pub name: String,
    pub bullet: StructureTensor<F>,
    pub star: StructureTensor<F>,
    pub params: Vec<String>,
    /// Polynomials in `params` that must not vanish.
    pub exclusions: Vec<Poly>,
}

impl<F: Field> AlgebraPair<F> {
    pub fn new(name: impl Into<String>, bullet: StructureTensor<F>, star: StructureTensor<F>) -> Self {
        assert_eq!(bullet.dim(), star.dim(), "tensor dimensions differ");
        AlgebraPair { name: name.into(), bullet, star, params: Vec::new(), exclusions: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.bullet.dim()
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.bullet.ctx()
    }

    pub fn tensor(&self, p: Product) -> &StructureTensor<F> {
        match p {
            Product::Bullet => &self.bullet,
            Product::Star => &self.star,
        }
    }

    /// The pair with both products equal to one of ours.
    pub fn self_pair(&self, p: Product) -> Self {
        let t = self.tensor(p).clone();
        AlgebraPair {
            name: format!("{}:{}", self.name, p.name()),
            bullet: t.clone(),
            star: t,
            params: self.params.clone(),
            exclusions: self.exclusions.clone(),
        }
    }

    pub fn swapped(&self) -> Self {
        AlgebraPair {
            name: self.name.clone(),
            bullet: self.star.clone(),
            star: self.bullet.clone(),
            params: self.params.clone(),
            exclusions: self.exclusions.clone(),
        }
    }

    pub fn try_map<G: Field>(
        &self,
        ctx: &G::Ctx,
        f: impl Fn(&F) -> Result<G, KernelError>,
    ) -> Result<AlgebraPair<G>, KernelError> {
        Ok(AlgebraPair {
            name: self.name.clone(),
            bullet: self.bullet.try_map(ctx, &f)?,
            star: self.star.try_map(ctx, &f)?,
            params: self.params.clone(),
            exclusions: self.exclusions.clone(),
        })
    }
}

impl AlgebraPair<RatFunc> {
    pub fn vars(&self) -> &Vars {
        self.ctx()
    }

    pub fn is_parametric(&self) -> bool {
        !self.params.is_empty()
    }

    /// Fully specializes the parameters, failing if a structure constant's
    /// denominator vanishes or an unassigned parameter remains.
    pub fn specialize(&self, assignment: &BTreeMap<String, Rational>) -> Result<AlgebraPair<Rational>, KernelError> {
        let mut out = self.try_map(&(), |x| x.eval_named(assignment))?;
        out.params.clear();
        out.exclusions.clear();
        Ok(out)
    }

    /// The pair over Q when no parameters occur.
    pub fn to_rational(&self) -> Option<AlgebraPair<Rational>> {
        let out = self.try_map(&(), |x| x.constant_value().ok_or(KernelError::DivisionByZero)).ok()?;
        Some(out)
    }

    /// Re-expresses over a larger variable list.
    pub fn embed(&self, vars: &Vars) -> AlgebraPair<RatFunc> {
        let mut out = self.try_map(vars, |x| Ok(x.embed(vars))).expect("embedding never fails");
        out.exclusions = self.exclusions.iter().map(|e| e.embed(vars)).collect();
        out
    }

    /// Fixes some parameters and keeps the rest symbolic.
    pub fn assign(&self, assignment: &BTreeMap<String, Rational>) -> Result<AlgebraPair<RatFunc>, KernelError> {
        for name in assignment.keys() {
            if self.vars().index_of(name).is_none() {
                return Err(KernelError::UnknownParameter { name: name.clone(), col: 1 });
            }
        }
        let params: Vec<String> = self.params.iter().filter(|p| !assignment.contains_key(*p)).cloned().collect();
        let target = Vars::new(&params);
        let mut out = self.try_map(&target, |x| x.remap(&target, assignment))?;
        out.params = params;
        out.exclusions.clear();
        for e in self.effective_exclusions() {
            let r = e.remap(&target, assignment)?;
            if r.is_zero() {
                return Err(KernelError::Specialization { poly: e.to_string() });
            }
            if !r.is_constant() && !out.exclusions.contains(&r) {
                out.exclusions.push(r);
            }
        }
        Ok(out)
    }

    /// Declared exclusions together with every non-constant denominator.
    pub fn effective_exclusions(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = self.exclusions.iter().map(Poly::primitive).collect();
        for t in [&self.bullet, &self.star] {
            for x in t.entries() {
                if !x.den().is_constant() {
                    let d = x.den().primitive();
                    if !out.contains(&d) {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    /// Whether some exclusion vanishes at the point.
    pub fn excluded_at(&self, assignment: &BTreeMap<String, Rational>) -> Result<bool, KernelError> {
        for e in self.effective_exclusions() {
            if Field::is_zero(&e.eval_named(assignment)?) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl AlgebraPair<Rational> {
    pub fn reduce_mod(&self, p: u64) -> Result<AlgebraPair<Fp>, KernelError> {
        self.try_map(&p, |x| reduce_mod_p(x, p))
    }

    pub fn to_ratfunc(&self, vars: &Vars) -> AlgebraPair<RatFunc> {
        self.try_map(vars, |x| Ok(RatFunc::constant(vars, x.clone()))).expect("constants embed")
    }
}
