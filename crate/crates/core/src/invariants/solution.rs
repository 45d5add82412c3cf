use super::nullspace::{kernel, Span};
use super::{build_system, InvariantKind, LinearSystem};
use crate::algebra::{AlgebraPair, Matrix};
use crate::kernel::{Field, Poly, RatFunc, ToRatFunc, Vars};
use crate::operators::ParamMatrix;

/// Solution space of a linear invariant system.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace<F: Field> {
    pub kind: InvariantKind,
    pub n: usize,
    pub slots: Vec<String>,
    pub ctx: F::Ctx,
    pub span: Span<F>,
    /// Pivot polynomials the generic answer divides by.
    pub exclusions: Vec<Poly>,
}

impl<F: Field> SolutionSpace<F> {
    pub fn freedim(&self) -> usize {
        self.span.dim()
    }

    /// Basis elements reshaped into one matrix per slot.
    pub fn basis(&self) -> Vec<Vec<Matrix<F>>> {
        self.span.basis.iter().map(|v| self.unstack(v)).collect()
    }

    pub fn unstack(&self, v: &[F]) -> Vec<Matrix<F>> {
        let nn = self.n * self.n;
        v.chunks(nn).map(|c| Matrix::from_unknowns(self.n, c)).collect()
    }

    /// Whether the candidate (one matrix per slot) lies in the span.
    pub fn membership(&self, candidate: &[Matrix<F>]) -> bool {
        assert_eq!(candidate.len(), self.slots.len(), "slot count");
        self.span.contains(&super::stack(candidate))
    }

    /// Image of the space under projection to one slot.
    pub fn project(&self, slot: usize) -> SolutionSpace<F> {
        let nn = self.n * self.n;
        let vecs = self.span.basis.iter().map(|v| v[slot * nn..(slot + 1) * nn].to_vec()).collect();
        let (span, excl) = Span::new(vecs, nn);
        let mut exclusions = self.exclusions.clone();
        for e in excl {
            super::nullspace::push_exclusion(&mut exclusions, e);
        }
        SolutionSpace {
            kind: self.kind,
            n: self.n,
            slots: vec![self.slots[slot].clone()],
            ctx: self.ctx.clone(),
            span,
            exclusions,
        }
    }
}

/// Solves a system exactly.
pub fn nullspace<F: Field>(s: &LinearSystem<F>) -> SolutionSpace<F> {
    let (span, exclusions) = kernel(s);
    SolutionSpace {
        kind: s.kind,
        n: s.n,
        slots: s.kind.slots().iter().map(|x| x.to_string()).collect(),
        ctx: s.ctx.clone(),
        span,
        exclusions,
    }
}

/// Builds and solves in one step.
pub fn solve<F: Field>(kind: InvariantKind, p: &AlgebraPair<F>) -> SolutionSpace<F> {
    nullspace(&build_system(kind, p))
}

/// Fresh parameter names `t1, t2, ...` avoiding `taken`.
pub fn fresh_params(k: usize, taken: &Vars) -> Vec<String> {
    let mut out = Vec::with_capacity(k);
    let mut i = 1;
    while out.len() < k {
        let name = format!("t{i}");
        if taken.index_of(&name).is_none() {
            out.push(name);
        }
        i += 1;
    }
    out
}

/// The general element: one fresh parameter per basis vector, one matrix
/// per slot.
pub fn format_solution<F: ToRatFunc>(sp: &SolutionSpace<F>, base: &Vars) -> Vec<ParamMatrix> {
    let params = fresh_params(sp.freedim(), base);
    let vars = base.merge(&Vars::new(&params));
    let nn = sp.n * sp.n;
    let mut general = vec![RatFunc::zero(&vars); nn * sp.slots.len()];
    for (b, t) in sp.span.basis.iter().zip(&params) {
        let t = RatFunc::var(&vars, t).unwrap();
        for (g, x) in general.iter_mut().zip(b) {
            if !x.is_zero() {
                *g = g.add(&t.mul(&x.to_ratfunc(&vars)));
            }
        }
    }
    general
        .chunks(nn)
        .map(|c| {
            let mut pm = ParamMatrix::from_matrix(Matrix::from_unknowns(sp.n, c), params.clone());
            pm.exclusions = sp.exclusions.iter().map(|e| e.embed(&vars)).collect();
            pm
        })
        .collect()
}
