use rayon::prelude::*;
use thiserror::Error;

use super::{FamilyKind, OperatorKind};
use crate::algebra::AlgebraPair;
use crate::invariants::InvariantKind;
use crate::kernel::{check_prime, reduce_mod_p, KernelError, Rational};

/// Default cap on the number of candidate matrices.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

/// Solutions beyond this many are counted but not stored.
pub const MAX_STORED: usize = 1 << 20;

const MAXN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration of {q}^{cells} matrices exceeds the limit {limit}")]
    Guard { q: u64, cells: usize, limit: u64 },
    #[error("dimension {0} is not supported by the enumerator")]
    Dimension(usize),
    #[error("kind {0} cannot be enumerated as a single map")]
    UnsupportedKind(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// All matrices over F_q satisfying an identity, in lexicographic order of
/// their row-major entries. A truncated list holds a sorted subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub q: u64,
    pub n: usize,
    pub count: u64,
    /// Row-major entries; entry `(r, c)` is the coefficient of e_{r+1} in L(e_{c+1}).
    pub solutions: Vec<Vec<u32>>,
    pub truncated: bool,
}

type V = [u64; MAXN];

struct Tables {
    n: usize,
    q: u64,
    t: [Vec<u64>; 2],
}

impl Tables {
    fn prod(&self, which: usize, x: &V, y: &V) -> V {
        let n = self.n;
        let t = &self.t[which];
        let mut out = [0u64; MAXN];
        for (i, &xi) in x[..n].iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y[..n].iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = xi * yj % self.q;
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] = (out[k] + c * t[base + k]) % self.q;
                }
            }
        }
        out
    }

    fn basis_prod(&self, which: usize, i: usize, j: usize) -> V {
        let n = self.n;
        let mut out = [0u64; MAXN];
        out[..n].copy_from_slice(&self.t[which][(i * n + j) * n..(i * n + j + 1) * n]);
        out
    }

    fn apply(&self, m: &[u32], v: &V) -> V {
        let n = self.n;
        let mut out = [0u64; MAXN];
        for (r, o) in out.iter_mut().enumerate().take(n) {
            let mut acc = 0u64;
            for c in 0..n {
                acc += m[r * n + c] as u64 * v[c];
            }
            *o = acc % self.q;
        }
        out
    }

    fn col(&self, m: &[u32], c: usize) -> V {
        let n = self.n;
        let mut out = [0u64; MAXN];
        for (r, o) in out.iter_mut().enumerate().take(n) {
            *o = m[r * n + c] as u64;
        }
        out
    }

    fn e(&self, i: usize) -> V {
        let mut out = [0u64; MAXN];
        out[i] = 1;
        out
    }

    fn add(&self, a: &V, b: &V) -> V {
        let mut out = [0u64; MAXN];
        for k in 0..self.n {
            out[k] = (a[k] + b[k]) % self.q;
        }
        out
    }

    fn sub(&self, a: &V, b: &V) -> V {
        let mut out = [0u64; MAXN];
        for k in 0..self.n {
            out[k] = (a[k] + self.q - b[k]) % self.q;
        }
        out
    }

    fn det(&self, m: &[u32]) -> u64 {
        let n = self.n;
        let q = self.q;
        let mut a: Vec<u64> = m.iter().map(|&x| x as u64).collect();
        let mut det = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if p != c {
                for k in 0..n {
                    a.swap(p * n + k, c * n + k);
                }
                det = (q - det) % q;
            }
            let piv = a[c * n + c];
            det = det * piv % q;
            let inv = pow(piv, q - 2, q);
            for r in c + 1..n {
                let f = a[r * n + c] * inv % q;
                if f == 0 {
                    continue;
                }
                for k in c..n {
                    a[r * n + k] = (a[r * n + k] + q * q - f * a[c * n + k] % q) % q;
                }
            }
        }
        det
    }

    /// Identity instances `(product, i, j)` with the highest column of the
    /// map each one reads, cheapest first.
    fn instances(&self, kind: FamilyKind) -> Vec<(usize, usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * n * n);
        for w in 0..2 {
            for i in 0..n {
                for j in 0..n {
                    let support = (0..n).filter(|&k| self.t[w][(i * n + j) * n + k] != 0).max();
                    let top = match kind {
                        FamilyKind::Linear(InvariantKind::QuasiCentroid) => i.max(j),
                        FamilyKind::Linear(_) | FamilyKind::Automorphism => i.max(j).max(support.unwrap_or(0)),
                        FamilyKind::Operator(_) => n - 1,
                    };
                    out.push((top, w, i, j));
                }
            }
        }
        out.sort();
        out.into_iter().map(|(top, w, i, j)| (w, i, j, top)).collect()
    }

    /// Checks the identity directly from its definition. On failure returns
    /// the highest column the failing instance depends on.
    fn satisfies(&self, kind: FamilyKind, inst: &[(usize, usize, usize, usize)], m: &[u32]) -> Result<(), usize> {
        let n = self.n;
        let mut cols = [[0u64; MAXN]; MAXN];
        for (c, col) in cols.iter_mut().enumerate().take(n) {
            *col = self.col(m, c);
        }
        for &(w, i, j, top) in inst {
            let (ei, ej) = (self.e(i), self.e(j));
            let (li, lj) = (&cols[i], &cols[j]);
            let ok = match kind {
                FamilyKind::Linear(InvariantKind::Derivation) => {
                    let lhs = self.apply(m, &self.basis_prod(w, i, j));
                    lhs == self.add(&self.prod(w, li, &ej), &self.prod(w, &ei, lj))
                }
                FamilyKind::Linear(InvariantKind::Centroid) => {
                    let a = self.apply(m, &self.basis_prod(w, i, j));
                    let b = self.prod(w, li, &ej);
                    a == b && b == self.prod(w, &ei, lj)
                }
                FamilyKind::Linear(InvariantKind::QuasiCentroid) => self.prod(w, li, &ej) == self.prod(w, &ei, lj),
                FamilyKind::Linear(_) => unreachable!("rejected by caller"),
                FamilyKind::Automorphism => self.apply(m, &self.basis_prod(w, i, j)) == self.prod(w, li, lj),
                FamilyKind::Operator(op) => {
                    let lilj = self.prod(w, li, lj);
                    let inner = self.add(&self.prod(w, li, &ej), &self.prod(w, &ei, lj));
                    match op {
                        OperatorKind::RotaBaxter => lilj == self.apply(m, &inner),
                        OperatorKind::Nijenhuis => {
                            let l_ab = self.apply(m, &self.basis_prod(w, i, j));
                            lilj == self.apply(m, &self.sub(&inner, &l_ab))
                        }
                        OperatorKind::Averaging => {
                            self.apply(m, &self.prod(w, li, &ej)) == lilj && lilj == self.apply(m, &self.prod(w, &ei, lj))
                        }
                        OperatorKind::Reynolds => {
                            let lhs = self.apply(m, &self.basis_prod(w, i, j));
                            lhs == self.apply(m, &self.sub(&inner, &lilj))
                        }
                    }
                }
            };
            if !ok {
                return Err(top);
            }
        }
        if kind == FamilyKind::Automorphism && self.det(m) == 0 {
            return Err(n - 1);
        }
        Ok(())
    }
}

fn pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Enumerates every n×n matrix over F_q and keeps those satisfying the
/// kind's identities (automorphisms must also be invertible).
pub fn exhaustive_solutions_mod_p(
    kind: FamilyKind,
    p: &AlgebraPair<Rational>,
    q: u64,
    limit: u64,
) -> Result<OracleResult, OracleError> {
    let q = check_prime(q)?;
    let n = p.dim();
    if n == 0 || n > MAXN {
        return Err(OracleError::Dimension(n));
    }
    if let FamilyKind::Linear(k) = kind {
        if k.slots().len() != 1 {
            return Err(OracleError::UnsupportedKind(k.to_string()));
        }
    }
    let cells = n * n;
    if (q as u128).checked_pow(cells as u32).is_none_or(|t| t > limit as u128) {
        return Err(OracleError::Guard { q, cells, limit });
    }
    let reduce = |t: &crate::algebra::StructureTensor<Rational>| -> Result<Vec<u64>, KernelError> {
        t.entries().iter().map(|x| reduce_mod_p(x, q).map(|v| v.value())).collect()
    };
    let tables = Tables { n, q, t: [reduce(&p.bullet)?, reduce(&p.star)?] };
    let inst = tables.instances(kind);
    // Digits run column by column so that a failing instance rules out every
    // completion of the columns it reads.
    let order: Vec<usize> = (0..cells).map(|d| (d % n) * n + d / n).collect();
    let lead = cells.min(2);
    let chunks = q.pow(lead as u32);
    let keep = MAX_STORED.div_ceil(chunks as usize);
    let parts: Vec<(u64, Vec<Vec<u32>>)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut m = vec![0u32; cells];
            let mut x = chunk;
            for d in (0..lead).rev() {
                m[order[d]] = (x % q) as u32;
                x /= q;
            }
            let mut count = 0u64;
            let mut found = Vec::new();
            loop {
                let from = match tables.satisfies(kind, &inst, &m) {
                    Ok(()) => {
                        count += 1;
                        if found.len() < keep {
                            found.push(m.clone());
                        }
                        cells - 1
                    }
                    Err(top) => top * n + n - 1,
                };
                if from < lead {
                    break;
                }
                for &idx in &order[from + 1..] {
                    m[idx] = 0;
                }
                let mut carried = true;
                for &idx in order[lead..=from].iter().rev() {
                    m[idx] += 1;
                    if (m[idx] as u64) < q {
                        carried = false;
                        break;
                    }
                    m[idx] = 0;
                }
                if carried {
                    break;
                }
            }
            (count, found)
        })
        .collect();
    let count: u64 = parts.iter().map(|(c, _)| c).sum();
    let mut solutions: Vec<Vec<u32>> = parts.into_iter().flat_map(|(_, s)| s).collect();
    solutions.sort_unstable();
    solutions.truncate(MAX_STORED);
    let truncated = (solutions.len() as u64) < count;
    Ok(OracleResult { q, n, count, solutions, truncated })
}
