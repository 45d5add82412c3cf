use std::collections::BTreeMap;

use crate::algebra::Matrix;
use crate::kernel::{parse_poly, parse_scalar, Field, KernelError, Poly, RatFunc, Rational, Vars};

/// Matrix whose entries are functions of named free parameters.
///
/// Entries live over `vars`, which lists the pair's own parameters (if any)
/// followed by the family's free parameters `params`. Column convention as
/// for [`Matrix`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMatrix {
    pub params: Vec<String>,
    pub matrix: Matrix<RatFunc>,
    pub exclusions: Vec<Poly>,
}

impl ParamMatrix {
    /// Parses entry strings over `base` (the pair's parameters) extended by
    /// `params`.
    pub fn parse<S: AsRef<str>>(
        rows: &[Vec<S>],
        params: &[String],
        base: &Vars,
        exclusions: &[S],
    ) -> Result<Self, KernelError> {
        let vars = base.merge(&Vars::new(params));
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s.as_ref(), &vars)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = Matrix::from_rows(rows).map_err(|e| KernelError::Parse { col: 1, msg: e.to_string() })?;
        let exclusions = exclusions
            .iter()
            .map(|s| parse_poly(s.as_ref(), &vars))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParamMatrix { params: params.to_vec(), matrix, exclusions })
    }

    pub fn from_matrix(matrix: Matrix<RatFunc>, params: Vec<String>) -> Self {
        ParamMatrix { params, matrix, exclusions: Vec::new() }
    }

    /// Every entry its own parameter `{prefix}_{row}_{col}` (1-based).
    pub fn generic(n: usize, prefix: &str, base: &Vars) -> Self {
        let params: Vec<String> = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| format!("{prefix}_{r}_{c}")))
            .collect();
        let vars = base.merge(&Vars::new(&params));
        let rows = (0..n)
            .map(|r| (0..n).map(|c| RatFunc::var(&vars, &params[r * n + c]).unwrap()).collect())
            .collect();
        ParamMatrix::from_matrix(Matrix::from_rows(rows).unwrap(), params)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn vars(&self) -> Vars {
        self.matrix.get(0, 0).ctx()
    }

    pub fn transpose(&self) -> Self {
        ParamMatrix { params: self.params.clone(), matrix: self.matrix.transpose(), exclusions: self.exclusions.clone() }
    }

    pub fn embed(&self, vars: &Vars) -> Self {
        ParamMatrix {
            params: self.params.clone(),
            matrix: self.matrix.try_map(|x| Ok(x.embed(vars))).expect("embedding never fails"),
            exclusions: self.exclusions.iter().map(|e| e.embed(vars)).collect(),
        }
    }

    /// Substitutes values for some variables, keeping the rest over `target`.
    pub fn remap(&self, target: &Vars, assignment: &BTreeMap<String, Rational>) -> Result<Matrix<RatFunc>, KernelError> {
        self.matrix.try_map(|x| x.remap(target, assignment))
    }

    /// Splits an affine family `P0 + Σ_v v·P_v` into `P0` and the `P_v`, with
    /// coefficients over `base`; `None` if some entry is not affine in the
    /// free parameters.
    pub fn affine_parts(&self, base: &Vars) -> Option<(Matrix<RatFunc>, Vec<Matrix<RatFunc>>)> {
        let vars = self.vars();
        let idx: Vec<usize> = self.params.iter().map(|p| vars.index_of(p).unwrap()).collect();
        let n = self.dim();
        let mut constant = Matrix::<RatFunc>::zero(n, base);
        let mut out = vec![Matrix::<RatFunc>::zero(n, base); idx.len()];
        for r in 0..n {
            for c in 0..n {
                let x = self.matrix.get(r, c);
                if x.is_zero() {
                    continue;
                }
                if x.den().used_vars().iter().enumerate().any(|(v, &u)| u && idx.contains(&v)) {
                    return None;
                }
                for (m, coef) in x.num().terms() {
                    let deg: u32 = idx.iter().map(|&v| m.0[v]).sum();
                    let target = match deg {
                        0 => &mut constant,
                        1 => {
                            let which = idx.iter().position(|&v| m.0[v] == 1).unwrap();
                            &mut out[which]
                        }
                        _ => return None,
                    };
                    let mut rest = m.clone();
                    for &v in &idx {
                        rest.0[v] = 0;
                    }
                    let term = Poly::monomial(&vars, rest, coef.clone());
                    let term = RatFunc::new(term, x.den().clone()).ok()?;
                    let term = term.remap(base, &BTreeMap::new()).ok()?;
                    let cur = target.get(r, c).add(&term);
                    target.set(r, c, cur);
                }
            }
        }
        Some((constant, out))
    }

    /// Coefficient matrices when every entry is a homogeneous linear form in
    /// the free parameters.
    pub fn linear_basis(&self, base: &Vars) -> Option<Vec<Matrix<RatFunc>>> {
        let (constant, parts) = self.affine_parts(base)?;
        constant.is_zero().then_some(parts)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}
