//! The encoded classification: pairs, printed automorphism families and
//! invariant tables, plus entry-level verification.

mod entry;
mod format;
mod verify;

pub use entry::{
    builtin_texts, load_builtin_catalog, load_catalog, load_catalog_dir, AutDoc, CatalogEntry, ExpectDoc, ExpectedAut,
    ExpectedTable, TableDoc, TableKind, CATALOG_ENV,
};
pub use format::{pair_from_doc, pair_to_doc, parse_algebra, serialize, EntryDoc, PairDoc, MAX_DIM};
pub use verify::{verify_entry, CheckRecord, EntryReport, ReportVerdict, SPECIALIZATION_POINTS};

use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("dimension {dim} outside 1..={}", MAX_DIM)]
    DimensionRange { dim: usize },
    #[error("{at}: index outside 1..={dim}")]
    IndexRange { at: String, dim: usize },
    #[error("{at}: duplicate entry")]
    Duplicate { at: String },
    #[error("{at}: {source}")]
    Scalar { at: String, source: KernelError },
    #[error("invalid parameter name `{0}`")]
    BadParameter(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
    #[error("{file}: {source}")]
    InFile { file: String, source: Box<CatalogError> },
}
