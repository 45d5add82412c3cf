use super::InvariantKind;
use crate::algebra::{AlgebraPair, Matrix, Product};
use crate::kernel::{fma_assign, Field};

/// Where a row comes from: product, equation family, basis pair and output
/// coordinate (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowTag {
    pub product: Product,
    pub family: usize,
    pub i: usize,
    pub j: usize,
    pub r: usize,
}

/// Linear equations in stacked unknown maps.
///
/// Unknown `slot n² + a n + b` is the coefficient of e_{b+1} in
/// L_slot(e_{a+1}). Rows run over products (bullet, star), then equation
/// families, then i, j, r.
#[derive(Clone, Debug)]
pub struct LinearSystem<F: Field> {
    pub kind: InvariantKind,
    pub n: usize,
    pub ctx: F::Ctx,
    pub rows: Vec<Vec<F>>,
    pub tags: Vec<RowTag>,
}

#[derive(Clone, Copy)]
enum Term {
    /// L(e_i·e_j)
    Outer(usize),
    /// L(e_i)·e_j
    Left(usize),
    /// e_i·L(e_j)
    Right(usize),
}

fn families(kind: InvariantKind) -> Vec<Vec<(bool, Term)>> {
    use Term::*;
    match kind {
        InvariantKind::Derivation => vec![vec![(true, Outer(0)), (false, Left(0)), (false, Right(0))]],
        InvariantKind::Centroid => vec![
            vec![(true, Outer(0)), (false, Left(0))],
            vec![(true, Left(0)), (false, Right(0))],
        ],
        InvariantKind::QuasiCentroid => vec![vec![(true, Left(0)), (false, Right(0))]],
        InvariantKind::QuasiDerivation => vec![vec![(true, Outer(1)), (false, Left(0)), (false, Right(0))]],
        InvariantKind::GeneralizedDerivation => vec![vec![(true, Outer(2)), (false, Left(0)), (false, Right(1))]],
    }
}

impl<F: Field> LinearSystem<F> {
    pub fn ncols(&self) -> usize {
        self.kind.slots().len() * self.n * self.n
    }

    /// Row-by-row residuals of a stacked candidate.
    pub fn residuals(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.ncols());
        self.rows
            .iter()
            .map(|row| {
                let mut acc = F::zero(&self.ctx);
                for (a, b) in row.iter().zip(x) {
                    fma_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    /// Residuals of one matrix per slot.
    pub fn residuals_of(&self, maps: &[Matrix<F>]) -> Vec<F> {
        self.residuals(&stack(maps))
    }
}

/// Column-major stacking of one matrix per slot.
pub fn stack<F: Field>(maps: &[Matrix<F>]) -> Vec<F> {
    maps.iter().flat_map(Matrix::to_unknowns).collect()
}

/// Encodes the kind's identities for both products and all basis pairs.
pub fn build_system<F: Field>(kind: InvariantKind, p: &AlgebraPair<F>) -> LinearSystem<F> {
    let n = p.dim();
    let ctx = p.ctx().clone();
    let ncols = kind.slots().len() * n * n;
    let u = |slot: usize, a: usize, b: usize| slot * n * n + a * n + b;
    let fams = families(kind);
    let mut rows = Vec::new();
    let mut tags = Vec::new();
    for product in Product::BOTH {
        let t = p.tensor(product);
        for (family, terms) in fams.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    for r in 0..n {
                        let mut row = vec![F::zero(&ctx); ncols];
                        for &(plus, term) in terms {
                            for k in 0..n {
                                let (col, coef) = match term {
                                    Term::Outer(s) => (u(s, k, r), t.get(i, j, k)),
                                    Term::Left(s) => (u(s, i, k), t.get(k, j, r)),
                                    Term::Right(s) => (u(s, j, k), t.get(i, k, r)),
                                };
                                if coef.is_zero() {
                                    continue;
                                }
                                row[col] = if plus { row[col].add(coef) } else { row[col].sub(coef) };
                            }
                        }
                        rows.push(row);
                        tags.push(RowTag { product, family, i, j, r });
                    }
                }
            }
        }
    }
    LinearSystem { kind, n, ctx, rows, tags }
}
