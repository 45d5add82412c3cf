use std::fmt;

use super::AlgebraError;
use crate::kernel::{Field, KernelError};

/// Coordinate vector in the basis e_1..e_n.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<F: Field>(pub Vec<F>);

impl<F: Field> Vector<F> {
    pub fn zero(n: usize, ctx: &F::Ctx) -> Self {
        Vector(vec![F::zero(ctx); n])
    }

    /// Basis vector e_{i+1}.
    pub fn basis(n: usize, i: usize, ctx: &F::Ctx) -> Self {
        let mut v = Self::zero(n, ctx);
        v.0[i] = F::one(ctx);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(F::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Vector(self.0.iter().map(|a| a.mul(c)).collect())
    }
}

/// Square matrix of a linear map: column `j` holds the coordinates of L(e_j).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(n: usize, ctx: &F::Ctx) -> Self {
        Matrix { n, data: vec![F::zero(ctx); n * n] }
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zero(n, ctx);
        for i in 0..n {
            m.data[i * n + i] = F::one(ctx);
        }
        m
    }

    pub fn scalar(n: usize, c: &F) -> Self {
        let mut m = Self::zero(n, &c.ctx());
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { n, data })
    }

    /// Inverse of [`Matrix::to_unknowns`].
    pub fn from_unknowns(n: usize, v: &[F]) -> Self {
        assert_eq!(v.len(), n * n);
        let mut data = v.to_vec();
        for a in 0..n {
            for b in 0..n {
                data[b * n + a] = v[a * n + b].clone();
            }
        }
        Matrix { n, data }
    }

    /// Column-major flattening: position `a*n + b` holds the coefficient of
    /// e_{b+1} in L(e_{a+1}).
    pub fn to_unknowns(&self) -> Vec<F> {
        self.transpose().data
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.n + c] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        self.data.chunks(self.n)
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vector<F> {
        Vector((0..self.n).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].clone();
            }
        }
        Matrix { n, data }
    }

    pub fn apply(&self, v: &Vector<F>) -> Vector<F> {
        assert_eq!(v.dim(), self.n);
        Vector(
            self.rows()
                .map(|row| {
                    let mut acc = F::zero(&v.0[0].ctx());
                    for (a, b) in row.iter().zip(&v.0) {
                        crate::kernel::fma_assign(&mut acc, a, b);
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let ctx = self.data[0].ctx();
        let mut out = Self::zero(n, &ctx);
        for r in 0..n {
            for c in 0..n {
                let mut acc = F::zero(&ctx);
                for k in 0..n {
                    crate::kernel::fma_assign(&mut acc, self.get(r, k), rhs.get(k, c));
                }
                out.data[r * n + c] = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    /// Determinant; division-free for n ≤ 5.
    pub fn det(&self) -> F {
        let n = self.n;
        let ctx = self.data[0].ctx();
        if n <= 5 {
            let cols: Vec<usize> = (0..n).collect();
            return self.det_expand(0, &cols, &ctx);
        }
        let mut m = self.data.clone();
        let mut det = F::one(&ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return F::zero(&ctx);
            };
            if p != c {
                for k in 0..n {
                    m.swap(p * n + k, c * n + k);
                }
                det = det.neg();
            }
            let piv = m[c * n + c].clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("non-zero pivot");
            for r in c + 1..n {
                let f = m[r * n + c].mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m[r * n + k].sub(&f.mul(&m[c * n + k]));
                    m[r * n + k] = v;
                }
            }
        }
        det
    }

    fn det_expand(&self, row: usize, cols: &[usize], ctx: &F::Ctx) -> F {
        if cols.is_empty() {
            return F::one(ctx);
        }
        let mut acc = F::zero(ctx);
        for (idx, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.det_expand(row + 1, &rest, ctx));
            acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let n = self.n;
        let ctx = self.data[0].ctx();
        let mut a = self.data.clone();
        let mut b = Self::identity(n, &ctx).data;
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * n + c].is_zero()).ok_or(AlgebraError::Singular)?;
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
                b.swap(p * n + k, c * n + k);
            }
            let inv = a[c * n + c].inv().map_err(|_| AlgebraError::Singular)?;
            for k in 0..n {
                a[c * n + k] = a[c * n + k].mul(&inv);
                b[c * n + k] = b[c * n + k].mul(&inv);
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for k in 0..n {
                    a[r * n + k] = a[r * n + k].sub(&f.mul(&a[c * n + k]));
                    b[r * n + k] = b[r * n + k].sub(&f.mul(&b[c * n + k]));
                }
            }
        }
        Ok(Matrix { n, data: b })
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G, KernelError>) -> Result<Matrix<G>, KernelError> {
        Ok(Matrix { n: self.n, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert_eq!(a.det(), rat(5));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3, &()));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(AlgebraError::Singular));
    }

    #[test]
    fn unknown_layout_is_column_major() {
        let a = m(&[&[1, 2], &[3, 4]]);
        // L(e1) = e1 + 3e2, L(e2) = 2e1 + 4e2
        assert_eq!(a.to_unknowns(), vec![rat(1), rat(3), rat(2), rat(4)]);
        assert_eq!(Matrix::from_unknowns(2, &a.to_unknowns()), a);
    }

    #[test]
    fn large_determinant_by_elimination() {
        let mut a = Matrix::<Rational>::identity(6, &());
        a.set(0, 5, rat(2));
        a.set(5, 0, rat(1));
        assert_eq!(a.det(), rat(-1));
    }
}
