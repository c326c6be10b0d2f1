//! Exact computer algebra for a family of ideals with doubly exponential
//! membership complexity.
//!
//! The crate provides, bottom up:
//!
//! * [`scalars`] — exact coefficient fields: arbitrary-precision rationals and
//!   prime fields `F_p` containing prescribed roots of unity;
//! * [`poly`] — variable tables, sparse multivariate polynomials, monomial
//!   orders (lex / grevlex / block elimination), and substitution
//!   homomorphisms;
//! * [`groebner`] — multivariate division with quotients, Buchberger's
//!   algorithm with Gebauer–Möller pair elimination, reduced Gröbner bases,
//!   and membership certificates;
//! * [`ideals`] — ideal algebra: sum, product, intersection, colon, saturation,
//!   elimination, equality, radical membership, degree-bounded certificate
//!   search, and a structural primality checker;
//! * [`family`] — constructors for the ideal family `K_l(n,d)` / `K(n,d)`, its
//!   level subideals, the evaluation map between them, the `Q`-prime
//!   candidates, and the candidate-count formula;
//! * [`verifier`] — a registry of named, machine-checkable identities between
//!   the displayed ideals, membership experiments with certificate degrees,
//!   prime-list validation, and JSON reporting.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod scalars;

pub mod poly;

pub mod groebner;

pub mod ideals;

pub mod family;

pub mod verifier;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A field specification violated its invariants.
    #[error("invalid field: {0}")]
    InvalidField(String),
    /// A requested root of unity does not exist in the field.
    #[error("no root of unity: {0}")]
    NoRoot(String),
    /// A ring specification violated its invariants.
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    /// Operands live in different rings (or over different fields).
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    /// Text could not be parsed as a polynomial or ideal file.
    #[error("parse error: {0}")]
    Parse(String),
    /// Invalid parameters for a constructor or operation.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    /// A Gröbner-basis run exceeded the configured time budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A computation was refused because a size guard would be exceeded.
    #[error("refused: {0}")]
    Refused(String),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
