use super::{AlgebraError, Vector};
use crate::kernel::{fma_assign, Field, KernelError};

/// Structure constants of one bilinear product: entry `(i, j, k)` is the
/// coefficient of e_k in e_i·e_j (all indices 0-based here).
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensor<F: Field> {
    n: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

impl<F: Field> StructureTensor<F> {
    pub fn zero(n: usize, ctx: &F::Ctx) -> Self {
        StructureTensor { n, ctx: ctx.clone(), data: vec![F::zero(ctx); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &F {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: F) {
        let n = self.n;
        self.data[(i * n + j) * n + k] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Nonzero entries as `((i, j, k), value)`, 0-based, in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), &F)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| ((idx / (n * n), (idx / n) % n, idx % n), v))
    }

    /// e_i·e_j as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector<F> {
        let start = (i * self.n + j) * self.n;
        Vector(self.data[start..start + self.n].to_vec())
    }

    pub fn multiply(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>, AlgebraError> {
        for v in [x, y] {
            if v.dim() != self.n {
                return Err(AlgebraError::DimensionMismatch { expected: self.n, found: v.dim() });
            }
        }
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Vector<F>, y: &Vector<F>) -> Vector<F> {
        let n = self.n;
        let mut out = Vector::zero(n, &self.ctx);
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() {
                    continue;
                }
                let c = x.0[i].mul(&y.0[j]);
                for k in 0..n {
                    fma_assign(&mut out.0[k], &c, self.get(i, j, k));
                }
            }
        }
        out
    }

    pub fn try_map<G: Field>(
        &self,
        ctx: &G::Ctx,
        f: impl Fn(&F) -> Result<G, KernelError>,
    ) -> Result<StructureTensor<G>, KernelError> {
        Ok(StructureTensor { n: self.n, ctx: ctx.clone(), data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }
}
