//! p-quotients of finitely presented groups.

pub mod algorithm;
pub mod elements;
pub mod fingerprint;
pub mod pcp;

use thiserror::Error;

pub use algorithm::{p_quotient, Epimorphism, PQuotient, PqConfig};
pub use elements::{enumerate_elements, ElementIter, DEFAULT_ELEMENT_CAP};
pub use fingerprint::{fingerprint, Fingerprint};
pub use pcp::{Check, Collector, Definition, PcElement, PcPresentation, PcWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PQuotientError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime {0} exceeds the supported bound 2^15")]
    PrimeTooLarge(u32),
    #[error("class {class} exceeds the configured bound {bound}")]
    ClassBound { class: u32, bound: u32 },
    #[error("{count} pc generators exceed the limit {limit}")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("group of order p^{exponent} exceeds the element cap {cap}")]
    CapExceeded { exponent: usize, cap: u64 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
