use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::algebra::{AlgebraPair, Product, StructureTensor};
use crate::kernel::{parse_poly, parse_scalar, RatFunc, Vars};

/// One structure constant: e_i·e_j has coefficient `c` on e_k (1-based).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub c: String,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// On-disk form of a pair (`.cpa.json`). Fields are declared in key order so
/// serialization is sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    #[serde(default)]
    pub bullet: Vec<EntryDoc>,
    pub dim: usize,
    #[serde(default)]
    pub exclusions: Vec<String>,
    pub name: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub star: Vec<EntryDoc>,
}

pub const MAX_DIM: usize = 16;

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|f| f.is_ascii_alphabetic()) && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

pub(crate) fn json_error(e: serde_json::Error) -> CatalogError {
    CatalogError::Syntax { line: e.line(), col: e.column(), msg: e.to_string() }
}

/// Parses a `.cpa.json` document.
pub fn parse_algebra(text: &str) -> Result<AlgebraPair<RatFunc>, CatalogError> {
    let doc: PairDoc = serde_json::from_str(text).map_err(json_error)?;
    pair_from_doc(&doc)
}

pub fn pair_from_doc(doc: &PairDoc) -> Result<AlgebraPair<RatFunc>, CatalogError> {
    let n = doc.dim;
    if n == 0 || n > MAX_DIM {
        return Err(CatalogError::DimensionRange { dim: n });
    }
    let mut seen_params = BTreeSet::new();
    for p in &doc.params {
        if !is_ident(p) || !seen_params.insert(p.as_str()) {
            return Err(CatalogError::BadParameter(p.clone()));
        }
    }
    if doc.params.is_empty() && !doc.exclusions.is_empty() {
        return Err(CatalogError::Invalid("exclusions require parameters".into()));
    }
    let vars = Vars::new(&doc.params);
    let mut seen = BTreeSet::new();
    let mut tensors = Vec::with_capacity(2);
    for (product, entries) in [(Product::Bullet, &doc.bullet), (Product::Star, &doc.star)] {
        let mut t = StructureTensor::<RatFunc>::zero(n, &vars);
        for e in entries {
            let key = (product, e.i, e.j, e.k);
            let at = || format!("{} ({},{},{})", product.name(), e.i, e.j, e.k);
            if [e.i, e.j, e.k].iter().any(|&x| x == 0 || x > n) {
                return Err(CatalogError::IndexRange { at: at(), dim: n });
            }
            if !seen.insert(key) {
                return Err(CatalogError::Duplicate { at: at() });
            }
            let c = parse_scalar(&e.c, &vars).map_err(|source| CatalogError::Scalar { at: at(), source })?;
            t.set(e.i - 1, e.j - 1, e.k - 1, c);
        }
        tensors.push(t);
    }
    let exclusions = doc
        .exclusions
        .iter()
        .map(|s| parse_poly(s, &vars).map_err(|source| CatalogError::Scalar { at: "exclusions".into(), source }))
        .collect::<Result<Vec<_>, _>>()?;
    let star = tensors.pop().unwrap();
    let bullet = tensors.pop().unwrap();
    let mut pair = AlgebraPair::new(doc.name.clone(), bullet, star);
    pair.params = doc.params.clone();
    pair.exclusions = exclusions;
    Ok(pair)
}

pub fn pair_to_doc(p: &AlgebraPair<RatFunc>) -> PairDoc {
    let entries = |t: &StructureTensor<RatFunc>| {
        t.nonzero()
            .map(|((i, j, k), c)| EntryDoc { c: c.to_string(), i: i + 1, j: j + 1, k: k + 1 })
            .collect()
    };
    PairDoc {
        bullet: entries(&p.bullet),
        dim: p.dim(),
        exclusions: p.exclusions.iter().map(|e| e.to_string()).collect(),
        name: p.name.clone(),
        params: p.params.clone(),
        star: entries(&p.star),
    }
}

/// Canonical single-line text: sorted keys, entries sorted by (product, i,
/// j, k), canonical scalar strings, trailing newline.
pub fn serialize(p: &AlgebraPair<RatFunc>) -> String {
    let mut s = serde_json::to_string(&pair_to_doc(p)).expect("serializable");
    s.push('\n');
    s
}
