use super::{AlgebraError, AlgebraPair, Matrix, Product, StructureTensor, Vector};
use crate::kernel::{fma_assign, Field};

/// Associativity residuals `(e_i e_j) e_k − e_i (e_j e_k)`, coefficient of
/// e_q, at flat index `((i n + j) n + k) n + q` (0-based).
pub fn associativity_residuals<F: Field>(t: &StructureTensor<F>) -> Vec<F> {
    let n = t.dim();
    let ctx = t.ctx();
    let mut out = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for q in 0..n {
                    let mut acc = F::zero(ctx);
                    for r in 0..n {
                        fma_assign(&mut acc, t.get(i, j, r), t.get(r, k, q));
                        fma_assign(&mut acc, &t.get(j, k, r).neg(), t.get(i, r, q));
                    }
                    out.push(acc);
                }
            }
        }
    }
    out
}

/// Compatibility residuals
/// `(e_i•e_j)∗e_k + (e_i∗e_j)•e_k − e_i•(e_j∗e_k) − e_i∗(e_j•e_k)`,
/// indexed like [`associativity_residuals`].
pub fn compatibility_residuals<F: Field>(p: &AlgebraPair<F>) -> Vec<F> {
    let (a, b) = (&p.bullet, &p.star);
    let n = p.dim();
    let ctx = p.ctx();
    let mut out = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for q in 0..n {
                    let mut acc = F::zero(ctx);
                    for r in 0..n {
                        fma_assign(&mut acc, a.get(i, j, r), b.get(r, k, q));
                        fma_assign(&mut acc, b.get(i, j, r), a.get(r, k, q));
                        fma_assign(&mut acc, &b.get(j, k, r).neg(), a.get(i, r, q));
                        fma_assign(&mut acc, &a.get(j, k, r).neg(), b.get(i, r, q));
                    }
                    out.push(acc);
                }
            }
        }
    }
    out
}

/// Residuals of `ψ(e_i·e_j) − ψ(e_i)·'ψ(e_j)` for both products, coefficient
/// of e_r, at flat index `product n³ + (i n + j) n + r`.
pub fn pair_hom_residuals<F: Field>(
    m: &Matrix<F>,
    src: &AlgebraPair<F>,
    dst: &AlgebraPair<F>,
) -> Result<Vec<F>, AlgebraError> {
    let n = src.dim();
    for d in [m.dim(), dst.dim()] {
        if d != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: d });
        }
    }
    let images: Vec<Vector<F>> = (0..n).map(|i| m.column(i)).collect();
    let mut out = Vec::with_capacity(2 * n * n * n);
    for prod in Product::BOTH {
        let (s, t) = (src.tensor(prod), dst.tensor(prod));
        for i in 0..n {
            for j in 0..n {
                let lhs = m.apply(&s.basis_product(i, j));
                let rhs = t.mul_unchecked(&images[i], &images[j]);
                out.extend(lhs.sub(&rhs).0);
            }
        }
    }
    Ok(out)
}

/// Homomorphism residuals vanish and the determinant is nonzero.
pub fn is_automorphism<F: Field>(m: &Matrix<F>, p: &AlgebraPair<F>) -> Result<bool, AlgebraError> {
    Ok(pair_hom_residuals(m, p, p)?.iter().all(F::is_zero) && !m.det().is_zero())
}

/// Transports both products to the basis `f_j = Σ_k P[k][j] e_k`.
///
/// `P` is then an isomorphism from the returned pair onto `p`.
pub fn change_of_basis<F: Field>(p: &AlgebraPair<F>, basis: &Matrix<F>) -> Result<AlgebraPair<F>, AlgebraError> {
    let n = p.dim();
    if basis.dim() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: basis.dim() });
    }
    let inv = basis.inverse()?;
    let cols: Vec<Vector<F>> = (0..n).map(|j| basis.column(j)).collect();
    let transport = |t: &StructureTensor<F>| {
        let mut out = StructureTensor::zero(n, t.ctx());
        for i in 0..n {
            for j in 0..n {
                let v = inv.apply(&t.mul_unchecked(&cols[i], &cols[j]));
                for (k, x) in v.0.into_iter().enumerate() {
                    out.set(i, j, k, x);
                }
            }
        }
        out
    };
    Ok(AlgebraPair {
        name: p.name.clone(),
        bullet: transport(&p.bullet),
        star: transport(&p.star),
        params: p.params.clone(),
        exclusions: p.exclusions.clone(),
    })
}

/// Positions of nonzero residuals.
pub fn nonzero_indices<F: Field>(res: &[F]) -> Vec<usize> {
    res.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// 1-based multi-index label for a flat residual index, e.g. `(1,2,1;2)`.
pub fn residual_label(idx: usize, n: usize, arity: usize) -> String {
    let mut parts = Vec::with_capacity(arity);
    let mut rest = idx;
    for _ in 0..arity {
        parts.push(rest % n + 1);
        rest /= n;
    }
    parts.reverse();
    let (head, last) = parts.split_at(arity - 1);
    let head: Vec<String> = head.iter().map(|x| x.to_string()).collect();
    let prefix = if rest > 0 { format!("{rest}:") } else { String::new() };
    format!("{prefix}({};{})", head.join(","), last[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Rational};

    fn a21_a24() -> AlgebraPair<Rational> {
        let mut b = StructureTensor::zero(2, &());
        b.set(0, 0, 1, rat(1));
        let mut s = StructureTensor::zero(2, &());
        s.set(0, 0, 0, rat(1));
        s.set(0, 1, 1, rat(1));
        s.set(1, 0, 1, rat(1));
        AlgebraPair::new("A2_1/A2_4", b, s)
    }

    #[test]
    fn multiply_is_bilinear_on_example() {
        let p = a21_a24();
        let x = Vector(vec![rat(1), rat(1)]);
        let e1 = Vector::basis(2, 0, &());
        assert_eq!(p.star.multiply(&x, &e1).unwrap(), Vector(vec![rat(1), rat(1)]));
        assert_eq!(p.bullet.multiply(&e1, &e1).unwrap(), Vector::basis(2, 1, &()));
        assert!(p.bullet.multiply(&Vector::zero(3, &()), &e1).is_err());
    }

    #[test]
    fn classified_pair_is_compatible() {
        let p = a21_a24();
        assert!(associativity_residuals(&p.bullet).iter().all(Field::is_zero));
        assert!(associativity_residuals(&p.star).iter().all(Field::is_zero));
        assert!(compatibility_residuals(&p).iter().all(Field::is_zero));
    }

    #[test]
    fn deleting_a_product_breaks_compatibility() {
        let mut p = a21_a24();
        p.star.set(1, 0, 1, rat(0));
        assert!(!nonzero_indices(&compatibility_residuals(&p)).is_empty());
    }

    fn brute_force_nonzero(t: &StructureTensor<Rational>) -> Vec<usize> {
        let n = t.dim();
        let e = |x| Vector::<Rational>::basis(n, x, &());
        let mut v = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = t.multiply(&t.multiply(&e(i), &e(j)).unwrap(), &e(k)).unwrap();
                    let r = t.multiply(&e(i), &t.multiply(&e(j), &e(k)).unwrap()).unwrap();
                    for q in 0..n {
                        if l.0[q] != r.0[q] {
                            v.push(((i * n + j) * n + k) * n + q);
                        }
                    }
                }
            }
        }
        v
    }

    #[test]
    fn single_entry_e1e1_is_associative() {
        // e1e1 = e1+e2: (e1e1)e1 = e1e1 = e1(e1e1), every triple agrees.
        let mut t = StructureTensor::zero(2, &());
        t.set(0, 0, 0, rat(1));
        t.set(0, 0, 1, rat(1));
        assert!(nonzero_indices(&associativity_residuals(&t)).is_empty());
        assert!(brute_force_nonzero(&t).is_empty());
    }

    #[test]
    fn non_associative_example() {
        // e1e1 = e2, e2e1 = e1: (e1e1)e1 = e1 but e1(e1e1) = 0.
        let mut t = StructureTensor::zero(2, &());
        t.set(0, 0, 1, rat(1));
        t.set(1, 0, 0, rat(1));
        let bad = nonzero_indices(&associativity_residuals(&t));
        assert!(bad.contains(&0));
        assert_eq!(bad, brute_force_nonzero(&t));
    }

    #[test]
    fn identity_is_automorphism_zero_map_is_not() {
        let p = a21_a24();
        assert!(is_automorphism(&Matrix::identity(2, &()), &p).unwrap());
        assert!(!is_automorphism(&Matrix::zero(2, &()), &p).unwrap());
    }

    #[test]
    fn doubling_the_basis() {
        let p = a21_a24();
        let two = Matrix::scalar(2, &rat(2));
        let q = change_of_basis(&p, &two).unwrap();
        assert_eq!(q.bullet.get(0, 0, 1), &rat(2));
        assert!(pair_hom_residuals(&two, &q, &p).unwrap().iter().all(Field::is_zero));
        let back = change_of_basis(&q, &two.inverse().unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn labels() {
        assert_eq!(residual_label(0, 2, 3), "(1,1;1)");
        assert_eq!(residual_label(7, 2, 3), "(2,2;2)");
        assert_eq!(residual_label(8, 2, 3), "1:(1,1;1)");
    }
}
