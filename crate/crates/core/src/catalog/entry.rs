use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::format::{json_error, parse_algebra};
use super::CatalogError;
use crate::algebra::AlgebraPair;
use crate::invariants::InvariantKind;
use crate::kernel::RatFunc;
use crate::operators::{OperatorKind, ParamMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutDoc {
    pub label: String,
    pub params: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub exclusions: Vec<String>,
    #[serde(default)]
    pub radical: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub label: String,
    pub kinds: Vec<String>,
    pub params: Vec<String>,
    pub slots: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// On-disk form of the printed expectations for one pair (`.expect.json`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectDoc {
    pub name: String,
    pub provenance: String,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub automorphisms: Vec<AutDoc>,
    #[serde(default)]
    pub invariants: Vec<TableDoc>,
}

/// What a printed table claims to describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableKind {
    Linear(InvariantKind),
    Operator(OperatorKind),
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Linear(k) => k.name(),
            TableKind::Operator(k) => k.name(),
        }
    }

    fn parse(s: &str) -> Result<Self, CatalogError> {
        if let Ok(k) = s.parse() {
            return Ok(TableKind::Linear(k));
        }
        s.parse().map(TableKind::Operator).map_err(CatalogError::Invalid)
    }
}

/// A printed automorphism family.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedAut {
    pub label: String,
    /// `None` when the printed entries involve a radical.
    pub family: Option<ParamMatrix>,
    pub doc: AutDoc,
}

/// A printed invariant table: one matrix per slot.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedTable {
    pub label: String,
    pub kinds: Vec<TableKind>,
    pub slots: Vec<ParamMatrix>,
    pub doc: TableDoc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub pair: AlgebraPair<RatFunc>,
    pub provenance: String,
    pub notes: Vec<String>,
    pub automorphisms: Vec<ExpectedAut>,
    pub invariants: Vec<ExpectedTable>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.pair.name
    }

    pub fn from_texts(pair_text: &str, expect_text: Option<&str>) -> Result<Self, CatalogError> {
        let pair = parse_algebra(pair_text)?;
        let Some(expect_text) = expect_text else {
            return Ok(CatalogEntry {
                provenance: "user supplied".into(),
                pair,
                notes: Vec::new(),
                automorphisms: Vec::new(),
                invariants: Vec::new(),
            });
        };
        let doc: ExpectDoc = serde_json::from_str(expect_text).map_err(json_error)?;
        if doc.name != pair.name {
            return Err(CatalogError::Invalid(format!("expectations for `{}` attached to `{}`", doc.name, pair.name)));
        }
        if doc.provenance.trim().is_empty() {
            return Err(CatalogError::Invalid(format!("`{}` has no provenance", pair.name)));
        }
        let n = pair.dim();
        let base = pair.vars().clone();
        let at = |label: &str| format!("{}: {label}", pair.name);
        let check_shape = |label: &str, m: &[Vec<String>]| {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                Err(CatalogError::Invalid(format!("{} is not {n}x{n}", at(label))))
            } else {
                Ok(())
            }
        };
        let mut automorphisms = Vec::new();
        for a in &doc.automorphisms {
            check_shape(&a.label, &a.matrix)?;
            let family = if a.radical {
                None
            } else {
                Some(
                    ParamMatrix::parse(&a.matrix, &a.params, &base, &a.exclusions)
                        .map_err(|source| CatalogError::Scalar { at: at(&a.label), source })?,
                )
            };
            automorphisms.push(ExpectedAut { label: a.label.clone(), family, doc: a.clone() });
        }
        let mut invariants = Vec::new();
        for t in &doc.invariants {
            let kinds = t.kinds.iter().map(|k| TableKind::parse(k)).collect::<Result<Vec<_>, _>>()?;
            let slots = t
                .slots
                .iter()
                .map(|m| {
                    check_shape(&t.label, m)?;
                    ParamMatrix::parse(m, &t.params, &base, &[] as &[String])
                        .map_err(|source| CatalogError::Scalar { at: at(&t.label), source })
                })
                .collect::<Result<Vec<_>, _>>()?;
            for k in &kinds {
                let want = match k {
                    TableKind::Linear(k) => k.slots().len(),
                    TableKind::Operator(_) => 1,
                };
                if want != slots.len() {
                    return Err(CatalogError::Invalid(format!("{} has {} slots, {} needs {want}", at(&t.label), slots.len(), k.name())));
                }
            }
            invariants.push(ExpectedTable { label: t.label.clone(), kinds, slots, doc: t.clone() });
        }
        Ok(CatalogEntry { pair, provenance: doc.provenance, notes: doc.notes, automorphisms, invariants })
    }
}

mod builtin {
    include!(concat!(env!("OUT_DIR"), "/builtin.rs"));
}

/// Environment variable naming a catalog directory to use instead of the
/// embedded one.
pub const CATALOG_ENV: &str = "CPA_CATALOG_DIR";

/// The embedded catalog, sorted by entry name.
pub fn load_builtin_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    builtin::BUILTIN
        .iter()
        .map(|(stem, pair, expect)| {
            CatalogEntry::from_texts(pair, Some(expect)).map_err(|e| CatalogError::InFile { file: stem.to_string(), source: Box::new(e) })
        })
        .collect()
}

/// Raw text of the embedded catalog files: `(stem, pair, expectations)`.
pub fn builtin_texts() -> &'static [(&'static str, &'static str, &'static str)] {
    builtin::BUILTIN
}

fn collect_pair_files(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    for e in std::fs::read_dir(dir)? {
        let p = e?.path();
        if p.is_dir() {
            collect_pair_files(&p, out)?;
        } else if p.to_string_lossy().ends_with(".cpa.json") {
            out.push(p);
        }
    }
    Ok(())
}

/// Loads every `*.cpa.json` under `dir` (recursively) with its optional
/// `*.expect.json` sibling, sorted by entry name.
pub fn load_catalog_dir(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut files = Vec::new();
    collect_pair_files(dir, &mut files).map_err(|e| CatalogError::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for f in files {
        let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| CatalogError::Io(format!("{}: {e}", p.display())));
        let text = read(&f)?;
        let stem = f.to_string_lossy().trim_end_matches(".cpa.json").to_string();
        let expect_path = PathBuf::from(format!("{stem}.expect.json"));
        let expect = if expect_path.exists() { Some(read(&expect_path)?) } else { None };
        let entry = CatalogEntry::from_texts(&text, expect.as_deref())
            .map_err(|e| CatalogError::InFile { file: f.display().to_string(), source: Box::new(e) })?;
        out.push(entry);
    }
    out.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(out)
}

/// The catalog named by `CPA_CATALOG_DIR`, or the embedded one.
pub fn load_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    match std::env::var_os(CATALOG_ENV) {
        Some(dir) if !dir.is_empty() => load_catalog_dir(Path::new(&dir)),
        _ => load_builtin_catalog(),
    }
}
