//! Free-group words, finitely presented groups, star graphs, the
//! difference-set presentation machine, polyhedral presentations and the
//! built-in catalog.

pub mod catalog;
pub mod howie;
pub mod maps;
pub mod polyhedral;
pub mod presentation;
pub mod star;
pub mod text;
pub mod word;

pub use catalog::{catalog, Catalog, Entry};
pub use howie::howie_presentation;
pub use maps::{check_map_on_quotient, MapCheck};
pub use polyhedral::{PolyhedralPresentation, ValidationReport, Violation};
pub use presentation::{Presentation, Provenance, SubgroupSpec};
pub use star::star_graph;
pub use text::{load_presentation_file, parse_presentation, parse_word, to_text, Loaded};
pub use word::{Convention, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relator {0} is empty after free reduction")]
    EmptyRelator(usize),
    #[error("subgroup word {0} is empty after free reduction")]
    EmptySubgroupWord(usize),
    #[error("word {relator} uses letter {letter} outside the generator range")]
    BadGenerator { relator: usize, letter: i32 },
    #[error("{residues:?} is not a perfect difference set for q = {q}")]
    NotPerfect { q: u32, residues: Vec<u32> },
    #[error("polyhedral presentation is invalid ({0} violations)")]
    InvalidPolyhedral(usize),
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
    #[error("catalog entry '{0}' has a different kind")]
    WrongKind(String),
    #[error("no relator data available for {0}; supply a data file")]
    MissingData(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("map has {got} images for {expected} generators")]
    ImageCount { expected: usize, got: usize },
    #[error("quotient computation failed: {0}")]
    Quotient(String),
}
