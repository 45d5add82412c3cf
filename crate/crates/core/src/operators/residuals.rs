use super::OperatorKind;
use crate::algebra::{AlgebraPair, Matrix, Product, StructureTensor, Vector};
use crate::kernel::Field;

fn basis_mul<F: Field>(t: &StructureTensor<F>, x: &Vector<F>, j: usize, right: bool) -> Vector<F> {
    // x·e_j when `right`, e_j·x otherwise.
    let n = t.dim();
    let mut e = Vector::zero(n, t.ctx());
    e.0[j] = F::one(t.ctx());
    if right {
        t.mul_unchecked(x, &e)
    } else {
        t.mul_unchecked(&e, x)
    }
}

/// Residuals of an operator identity for both products, at flat index
/// `(product · families + family) n³ + (i n + j) n + q`.
///
/// * Rota-Baxter: `R(a)R(b) − R(R(a)b + aR(b))`
/// * Nijenhuis: `N(a)N(b) − N(N(a)b + aN(b) − N(ab))`
/// * averaging: `χ(χ(a)b) − χ(a)χ(b)` and `χ(a)χ(b) − χ(aχ(b))`
/// * Reynolds: `ξ(ab) − ξ(ξ(a)b + aξ(b) − ξ(a)ξ(b))`
pub fn operator_residuals<F: Field>(kind: OperatorKind, p: &AlgebraPair<F>, m: &Matrix<F>) -> Vec<F> {
    let n = p.dim();
    assert_eq!(m.dim(), n, "dimension mismatch");
    let images: Vec<Vector<F>> = (0..n).map(|i| m.column(i)).collect();
    let fams = kind.families();
    let mut out = Vec::with_capacity(2 * fams * n * n * n);
    for prod in Product::BOTH {
        let t = p.tensor(prod);
        let mut blocks = vec![Vec::with_capacity(n * n * n); fams];
        for i in 0..n {
            for j in 0..n {
                let li = &images[i];
                let lj = &images[j];
                let li_lj = t.mul_unchecked(li, lj);
                let li_ej = basis_mul(t, li, j, true);
                let ei_lj = basis_mul(t, lj, i, false);
                match kind {
                    OperatorKind::RotaBaxter => {
                        let r = li_lj.sub(&m.apply(&li_ej.add(&ei_lj)));
                        blocks[0].extend(r.0);
                    }
                    OperatorKind::Nijenhuis => {
                        let l_eiej = m.apply(&t.basis_product(i, j));
                        let r = li_lj.sub(&m.apply(&li_ej.add(&ei_lj).sub(&l_eiej)));
                        blocks[0].extend(r.0);
                    }
                    OperatorKind::Averaging => {
                        blocks[0].extend(m.apply(&li_ej).sub(&li_lj).0);
                        blocks[1].extend(li_lj.sub(&m.apply(&ei_lj)).0);
                    }
                    OperatorKind::Reynolds => {
                        let lhs = m.apply(&t.basis_product(i, j));
                        let r = lhs.sub(&m.apply(&li_ej.add(&ei_lj).sub(&li_lj)));
                        blocks[0].extend(r.0);
                    }
                }
            }
        }
        for b in blocks {
            out.extend(b);
        }
    }
    out
}
