use super::{operator_residuals, FamilyKind, ParamMatrix};
use crate::algebra::{pair_hom_residuals, AlgebraPair};
use crate::invariants::build_system;
use crate::kernel::{Field, Poly, RatFunc, Vars};

/// Outcome of substituting a family into an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every residual vanishes identically.
    Zero,
    /// Some residual is a nonzero constant once exclusions are factored out.
    NonZero { witness: Witness },
    /// The family satisfies the identity exactly where these vanish.
    Conditional { constraints: Vec<Poly> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Residual(usize),
    /// The determinant vanishes identically.
    Determinant,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Zero => "ZERO",
            Verdict::NonZero { .. } => "NONZERO",
            Verdict::Conditional { .. } => "CONDITIONAL",
        }
    }
}

/// Residual numerators and the verdict they imply.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSet {
    pub kind: FamilyKind,
    pub residuals: Vec<Poly>,
    pub verdict: Verdict,
}

/// Determinant of an automorphism family.
#[derive(Clone, Debug, PartialEq)]
pub struct DetInfo {
    pub det: RatFunc,
    /// Nonzero wherever the exclusions are nonzero.
    pub unit: bool,
    /// What remains of the determinant after removing exclusion factors.
    pub remaining: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyVerdict {
    pub set: ResidualSet,
    pub det: Option<DetInfo>,
}

impl FamilyVerdict {
    /// Residuals vanish and, for automorphisms, the determinant is a unit.
    pub fn holds(&self) -> bool {
        self.set.verdict == Verdict::Zero && self.det.as_ref().is_none_or(|d| d.unit)
    }
}

/// Splits monomial exclusions into their variables.
pub fn exclusion_factors(exclusions: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let mut push = |p: Poly| {
        let p = p.primitive();
        if !p.is_constant() && !out.contains(&p) {
            out.push(p);
        }
    };
    for e in exclusions {
        if e.num_terms() == 1 {
            let (m, _) = e.leading_term().unwrap();
            for (v, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    push(Poly::var_at(e.vars(), v));
                }
            }
        } else {
            push(e.clone());
        }
    }
    out
}

/// Divides out every exclusion factor as often as it divides.
pub fn strip_factors(p: &Poly, factors: &[Poly]) -> Poly {
    let mut p = p.primitive();
    for f in factors {
        while !p.is_constant() {
            match p.exact_div(f) {
                Some(q) => p = q,
                None => break,
            }
        }
    }
    p.primitive()
}

/// Classifies residuals given the polynomials assumed nonzero.
pub fn classify(kind: FamilyKind, residuals: &[RatFunc], exclusions: &[Poly]) -> ResidualSet {
    let nums: Vec<Poly> = residuals.iter().map(|r| r.num().clone()).collect();
    let factors = exclusion_factors(exclusions);
    let mut constraints: Vec<Poly> = Vec::new();
    let mut witness = None;
    for (idx, p) in nums.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let c = strip_factors(p, &factors);
        if c.is_constant() {
            witness.get_or_insert(idx);
        } else if !constraints.contains(&c) {
            constraints.push(c);
        }
    }
    let verdict = if let Some(idx) = witness {
        Verdict::NonZero { witness: Witness::Residual(idx) }
    } else if constraints.is_empty() {
        Verdict::Zero
    } else {
        constraints.sort_by_key(|c| (c.total_degree(), c.num_terms(), c.to_string()));
        Verdict::Conditional { constraints }
    };
    ResidualSet { kind, residuals: nums, verdict }
}

/// Substitutes a family into the kind's identities over the merged
/// parameter list of pair and family.
pub fn verify_family(kind: FamilyKind, p: &AlgebraPair<RatFunc>, m: &ParamMatrix) -> FamilyVerdict {
    let vars: Vars = p.vars().merge(&m.vars());
    let pair = p.embed(&vars);
    let fam = m.embed(&vars);
    let mut exclusions: Vec<Poly> = p.effective_exclusions().iter().map(|e| e.embed(&vars)).collect();
    exclusions.extend(fam.exclusions.iter().cloned());
    let residuals = match kind {
        FamilyKind::Operator(k) => operator_residuals(k, &pair, &fam.matrix),
        FamilyKind::Automorphism => pair_hom_residuals(&fam.matrix, &pair, &pair).expect("dimensions agree"),
        FamilyKind::Linear(k) => build_system(k, &pair).residuals_of(std::slice::from_ref(&fam.matrix)),
    };
    let mut set = classify(kind, &residuals, &exclusions);
    let det = (kind == FamilyKind::Automorphism).then(|| {
        let det = fam.matrix.det();
        let remaining = strip_factors(det.num(), &exclusion_factors(&exclusions));
        DetInfo { unit: !det.is_zero() && remaining.is_constant(), det, remaining }
    });
    if let Some(d) = &det {
        if d.det.is_zero() {
            set.verdict = Verdict::NonZero { witness: Witness::Determinant };
        }
    }
    FamilyVerdict { set, det }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureTensor;
    use crate::kernel::{rat, Rational};
    use crate::operators::OperatorKind;

    fn pair() -> AlgebraPair<RatFunc> {
        let mut b = StructureTensor::<Rational>::zero(2, &());
        b.set(0, 0, 1, rat(1));
        let mut s = StructureTensor::zero(2, &());
        s.set(0, 0, 0, rat(1));
        s.set(0, 1, 1, rat(1));
        s.set(1, 0, 1, rat(1));
        AlgebraPair::new("d2", b, s).to_ratfunc(&Vars::empty())
    }

    fn fam(rows: &[&[&str]], params: &[&str], excl: &[&str]) -> ParamMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        ParamMatrix::parse(&rows, &params, &Vars::empty(), excl).unwrap()
    }

    #[test]
    fn printed_automorphism_family_needs_theta_one() {
        let m = fam(&[&["1", "0"], &["0", "th"]], &["th"], &["th"]);
        let v = verify_family(FamilyKind::Automorphism, &pair(), &m);
        match &v.set.verdict {
            Verdict::Conditional { constraints } => {
                assert_eq!(constraints.iter().map(|c| c.to_string()).collect::<Vec<_>>(), vec!["th-1"]);
            }
            other => panic!("{other:?}"),
        }
        assert!(v.det.unwrap().unit);
    }

    #[test]
    fn identity_automorphism_and_zero_map() {
        let id = fam(&[&["1", "0"], &["0", "1"]], &[], &[]);
        let v = verify_family(FamilyKind::Automorphism, &pair(), &id);
        assert!(v.holds());
        let z = fam(&[&["0", "0"], &["0", "0"]], &[], &[]);
        let v = verify_family(FamilyKind::Automorphism, &pair(), &z);
        assert!(!v.holds());
        assert_eq!(v.set.verdict, Verdict::NonZero { witness: Witness::Determinant });
    }

    #[test]
    fn diagonal_nijenhuis_family_is_conditional() {
        let m = fam(&[&["0", "0"], &["0", "N"]], &["N"], &[]);
        let v = verify_family(FamilyKind::Operator(OperatorKind::Nijenhuis), &pair(), &m);
        match v.set.verdict {
            Verdict::Conditional { constraints } => assert_eq!(constraints[0].to_string(), "N^2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exclusion_factors_split_monomials() {
        let vars = Vars::new(["a", "b"]);
        let e = crate::kernel::parse_poly("2*a*b", &vars).unwrap();
        let f = exclusion_factors(&[e]);
        assert_eq!(f.len(), 2);
        let p = crate::kernel::parse_poly("a^2*b*(a+b)", &vars).unwrap();
        assert_eq!(strip_factors(&p, &f).to_string(), "a+b");
    }
}
