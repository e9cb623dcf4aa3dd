//! Perfect difference sets, Desarguesian planes from Singer cycles,
//! incidence graphs and small-graph isomorphism.

pub mod difference;
pub mod graph;
pub mod incidence;

pub use difference::{is_perfect_difference_set, singer_difference_set, DifferenceCheck, DifferenceSet};
pub use graph::{graph_isomorphic, Graph};
pub use incidence::{fano_partition_check, PlaneIncidence};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("{0} is not a supported prime power")]
    Unsupported(u32),
    #[error("residues do not form a perfect difference set mod {0}")]
    NotPerfect(u32),
    #[error("not a projective plane: {0}")]
    NotAPlane(String),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("graph with {0} vertices exceeds the isomorphism cap of {cap}", cap = graph::MAX_ISO_VERTICES)]
    TooLarge(usize),
}
