use super::{operator_residuals, FamilyKind, ParamMatrix};
use crate::algebra::{pair_hom_residuals, AlgebraPair, Matrix};
use crate::invariants::{build_system, solve_affine, Span};
use crate::kernel::{Field, Poly, RatFunc, Vars};

/// Affine solution set in the pattern's free parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    /// Values of the parameters at one solution (free parameters zero).
    pub particular: Vec<RatFunc>,
    pub directions: Span<RatFunc>,
    pub exclusions: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzResult {
    pub params: Vec<String>,
    /// Distinct primitive residual numerators.
    pub constraints: Vec<Poly>,
    /// Present when every constraint has degree at most one in the
    /// parameters; `Some(None)` means the linear constraints are inconsistent.
    pub linear: Option<Option<AffineSolution>>,
}

impl AnsatzResult {
    /// Matrices of the solved family: one point and the direction space.
    pub fn solution_matrices(&self, pattern: &ParamMatrix, base: &Vars) -> Option<(Matrix<RatFunc>, Vec<Matrix<RatFunc>>)> {
        let sol = self.linear.as_ref()?.as_ref()?;
        let (p0, parts) = pattern.affine_parts(base)?;
        let combine = |coefs: &[RatFunc], with_const: bool| {
            let mut m = if with_const { p0.clone() } else { Matrix::zero(pattern.dim(), base) };
            for (c, part) in coefs.iter().zip(&parts) {
                if !c.is_zero() {
                    m = m.add(&part.scale(c));
                }
            }
            m
        };
        let point = combine(&sol.particular, true);
        let dirs = sol.directions.basis.iter().map(|v| combine(v, false)).collect();
        Some((point, dirs))
    }
}

/// Substitutes a sparsity pattern into the kind's identities and, when the
/// constraints are linear in the pattern's parameters, solves them.
pub fn ansatz_constraints(kind: FamilyKind, p: &AlgebraPair<RatFunc>, pattern: &ParamMatrix) -> AnsatzResult {
    let base = p.vars().clone();
    let vars = base.merge(&pattern.vars());
    let pair = p.embed(&vars);
    let fam = pattern.embed(&vars);
    let residuals: Vec<RatFunc> = match kind {
        FamilyKind::Operator(k) => operator_residuals(k, &pair, &fam.matrix),
        FamilyKind::Automorphism => pair_hom_residuals(&fam.matrix, &pair, &pair).expect("dimensions agree"),
        FamilyKind::Linear(k) => build_system(k, &pair).residuals_of(std::slice::from_ref(&fam.matrix)),
    };
    let mut constraints: Vec<Poly> = Vec::new();
    for r in &residuals {
        if r.is_zero() {
            continue;
        }
        let c = r.num().primitive();
        if !constraints.contains(&c) {
            constraints.push(c);
        }
    }
    let idx: Vec<usize> = pattern.params.iter().map(|n| vars.index_of(n).unwrap()).collect();
    let linear = linear_rows(&constraints, &idx, &base).map(|(rows, rhs)| {
        solve_affine(&rows, &rhs, idx.len(), &base).map(|(particular, directions, exclusions)| AffineSolution {
            particular,
            directions,
            exclusions,
        })
    });
    AnsatzResult { params: pattern.params.clone(), constraints, linear }
}

type Rows = (Vec<Vec<RatFunc>>, Vec<RatFunc>);

fn linear_rows(constraints: &[Poly], idx: &[usize], base: &Vars) -> Option<Rows> {
    let mut rows = Vec::with_capacity(constraints.len());
    let mut rhs = Vec::with_capacity(constraints.len());
    let none = std::collections::BTreeMap::new();
    for c in constraints {
        let mut row = vec![RatFunc::zero(base); idx.len()];
        let mut constant = RatFunc::zero(base);
        for (m, coef) in c.terms() {
            let deg: u32 = idx.iter().map(|&v| m.0[v]).sum();
            let mut rest = m.clone();
            for &v in idx {
                rest.0[v] = 0;
            }
            let term = Poly::monomial(c.vars(), rest, coef.clone()).remap(base, &none).ok()?;
            let term = RatFunc::from_poly(term);
            match deg {
                0 => constant = constant.add(&term),
                1 => {
                    let which = idx.iter().position(|&v| m.0[v] == 1).unwrap();
                    row[which] = row[which].add(&term);
                }
                _ => return None,
            }
        }
        rows.push(row);
        rhs.push(constant.neg());
    }
    Some((rows, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureTensor;
    use crate::invariants::{solve, InvariantKind};
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

    #[test]
    fn full_pattern_reproduces_nullspace() {
        let p = pair();
        let pat = ParamMatrix::generic(2, "x", p.vars());
        for k in [InvariantKind::Derivation, InvariantKind::Centroid, InvariantKind::QuasiCentroid] {
            let res = ansatz_constraints(FamilyKind::Linear(k), &p, &pat);
            let (point, dirs) = res.solution_matrices(&pat, p.vars()).unwrap();
            assert!(point.is_zero());
            let (span, _) = Span::new(dirs.iter().map(Matrix::to_unknowns).collect(), 4);
            assert_eq!(span, solve(k, &p).span, "{k}");
        }
    }

    #[test]
    fn rota_baxter_full_pattern_is_quadratic() {
        let p = pair();
        let pat = ParamMatrix::generic(2, "x", p.vars());
        let res = ansatz_constraints(FamilyKind::Operator(OperatorKind::RotaBaxter), &p, &pat);
        assert!(res.linear.is_none());
        assert!(!res.constraints.is_empty());
        assert!(res.constraints.iter().all(|c| c.total_degree() == 2));
    }

    #[test]
    fn scalar_pattern_is_nijenhuis() {
        let p = pair();
        let params = vec!["l".to_string()];
        let pat = ParamMatrix::parse(&[vec!["l", "0"], vec!["0", "l"]], &params, p.vars(), &[]).unwrap();
        let res = ansatz_constraints(FamilyKind::Operator(OperatorKind::Nijenhuis), &p, &pat);
        assert!(res.constraints.is_empty());
    }
}
