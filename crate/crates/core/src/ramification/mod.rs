//! Spherical systems of generators and unmixed ramification structures.

pub mod search;
pub mod sigma;
pub mod spherical;
pub mod tuples;

use thiserror::Error;

pub use search::{search_structures, system_sigma_sets, SearchConfig, SearchOutcome, Strategy};
pub use sigma::{disjoint, sigma_set, sigma_set_bruteforce, Certificate, DenseGroup};
pub use spherical::{generates, is_spherical_system, system_type, verify_structure, RamificationStructure, SphericalCheck, SphericalSystem};
pub use tuples::{paper_tuple_words, paper_tuples, PaperTuples};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamificationError {
    #[error("group of order p^{exponent} exceeds the dense cap of {cap} elements")]
    CapExceeded { exponent: usize, cap: u64 },
    #[error("empty tuple")]
    EmptyTuple,
    #[error("unknown tuple family '{0}'")]
    UnknownTuples(String),
    #[error("word '{0}' has no image in the quotient")]
    MissingWord(String),
    #[error("search budget must be positive")]
    ZeroBudget,
    #[error("not a ramification structure: {0}")]
    NotAStructure(String),
}
