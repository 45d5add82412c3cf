use super::LinearSystem;
use crate::kernel::{Field, Poly};

/// Reduced row echelon form of a matrix given by rows.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    /// Non-constant polynomials divided by during elimination.
    pub exclusions: Vec<Poly>,
}

pub(crate) fn push_exclusion(out: &mut Vec<Poly>, p: Poly) {
    if !out.contains(&p) {
        out.push(p);
    }
}

/// Gauss-Jordan elimination; the pivot in each column is the candidate of
/// least [`Field::pivot_weight`], ties broken by lowest row index.
pub fn rref<F: Field>(rows: Vec<Vec<F>>, ncols: usize) -> Rref<F> {
    let mut m: Vec<Vec<F>> = Vec::with_capacity(rows.len());
    for r in rows {
        assert_eq!(r.len(), ncols, "row length");
        if r.iter().all(F::is_zero) || m.contains(&r) {
            continue;
        }
        m.push(r);
    }
    let mut pivots = Vec::new();
    let mut exclusions = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(best) = (rank..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| (m[r][col].pivot_weight(), r))
        else {
            continue;
        };
        m.swap(rank, best);
        let piv = m[rank][col].clone();
        for e in piv.pivot_exclusions() {
            push_exclusion(&mut exclusions, e);
        }
        if !piv.is_one() {
            let inv = piv.inv().expect("non-zero pivot");
            for x in m[rank][col..].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if pivot_row[c].is_zero() {
                    continue;
                }
                row[c] = row[c].sub(&f.mul(&pivot_row[c]));
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    Rref { rows: m, pivots, exclusions }
}

/// Kernel vectors of an RREF: one per free column.
pub fn kernel_vectors<F: Field>(r: &Rref<F>, ncols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !r.pivots.contains(c)) {
        let mut v = vec![F::zero(ctx); ncols];
        v[free] = F::one(ctx);
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            v[p] = row[free].neg();
        }
        out.push(v);
    }
    out
}

/// A linear span kept as a canonical reduced basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Span<F: Field> {
    pub ncols: usize,
    pub basis: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Span<F> {
    pub fn new(vectors: Vec<Vec<F>>, ncols: usize) -> (Self, Vec<Poly>) {
        let r = rref(vectors, ncols);
        (Span { ncols, basis: r.rows, pivots: r.pivots }, r.exclusions)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols);
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.sub(&f.mul(b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    pub fn contains_span(&self, other: &Span<F>) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// Solves `rows · x = rhs`; returns a particular solution (free unknowns
/// zero) and the kernel, or `None` when inconsistent.
pub fn solve_affine<F: Field>(
    rows: &[Vec<F>],
    rhs: &[F],
    ncols: usize,
    ctx: &F::Ctx,
) -> Option<(Vec<F>, Span<F>, Vec<Poly>)> {
    let aug: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let r = rref(aug, ncols + 1);
    if r.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(ctx); ncols];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        x[p] = row[ncols].clone();
    }
    let homogeneous = Rref {
        rows: r.rows.iter().map(|row| row[..ncols].to_vec()).collect(),
        pivots: r.pivots.clone(),
        exclusions: Vec::new(),
    };
    let (span, mut excl) = Span::new(kernel_vectors(&homogeneous, ncols, ctx), ncols);
    for e in r.exclusions {
        push_exclusion(&mut excl, e);
    }
    Some((x, span, excl))
}

/// Kernel of a linear system as a canonical span plus pivot exclusions.
pub fn kernel<F: Field>(s: &LinearSystem<F>) -> (Span<F>, Vec<Poly>) {
    let ncols = s.ncols();
    let r = rref(s.rows.clone(), ncols);
    let (span, more) = Span::new(kernel_vectors(&r, ncols, &s.ctx), ncols);
    let mut excl = r.exclusions;
    for e in more {
        push_exclusion(&mut excl, e);
    }
    (span, excl)
}
