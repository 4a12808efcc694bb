//! Exact combinatorics of affine Weyl group quotients `W̃^S`.
//!
//! The crate enumerates minimal length coset representatives for `W̃/W` in
//! every affine type, factors them canonically into segments, maps them to
//! colored affine partitions, computes Bruhat order and Poincaré polynomials,
//! classifies palindromic (rationally smooth) elements, and verifies the
//! generating-function identities relating partition counts to Bott's formula.
//!
//! All arithmetic is exact: group elements are tracked through an integer
//! numbers game with arbitrary-precision entries, and series/polynomial
//! computations use unbounded integer coefficients.

#![forbid(unsafe_code)]

pub mod cartan;
pub mod cli;
pub mod segments;
pub mod series;
pub mod smoothness;
pub mod typea;
pub mod weyl;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse affine type from {0:?} (expected e.g. \"B3\", \"E8\")")]
    ParseType(String),
    #[error("rank {rank} out of range for family {family}")]
    RankOutOfRange { family: &'static str, rank: usize },
    #[error("{op} is unsupported for family {family}: {reason}")]
    UnsupportedFamily {
        op: &'static str,
        family: &'static str,
        reason: &'static str,
    },
    #[error("resource cap exceeded in {what} (cap {cap})")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("element is not a minimal length coset representative")]
    NotMinimalRep,
    #[error("not an affine partition: {0}")]
    NotAffinePartition(String),
    #[error("type mismatch between operands")]
    TypeMismatch,
    #[error("canonical factorization invariant violated: {0}")]
    FactorizationInvariant(String),
    #[error("no spiral element with these parameters: {0}")]
    CongruenceUnsatisfiable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
