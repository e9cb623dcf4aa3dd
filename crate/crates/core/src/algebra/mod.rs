//! Exact arithmetic: finite fields, Laurent polynomials, matrices, integer
//! Smith normal form and GF(p) echelon forms.

pub mod field;
pub mod fp;
pub mod laurent;
pub mod matrix;
pub mod snf;

pub use field::{FieldElement, FieldSpec, GaloisField};
pub use laurent::LaurentPoly;
pub use matrix::{Matrix, Ring};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("coefficients {0:?} out of range")]
    BadCoefficients(Vec<u32>),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division is not exact in this ring")]
    InexactDivision,
    #[error("matrix is not invertible over its ring")]
    NotInvertible,
}
