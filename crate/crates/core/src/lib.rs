//! Exact combinatorics of truncated linear Nakayama algebras `Λ(n,l) = kA_n / R^l`
//! that admit a d-cluster tilting subcategory.
//!
//! The crate models the subcategory `C`, its higher Auslander-Reiten translates,
//! basic τ_d-rigid pairs and their summand-maximal classification, d-torsion
//! classes as paths in a multigraph, (d+1)-term silting complexes in the bounded
//! homotopy category of projectives, and the mutation graph of summand-maximal
//! pairs. Every combinatorial formula is paired with an independent brute-force
//! oracle so that the two routes can be cross-checked exhaustively on small
//! algebras.

pub mod algebra;
pub mod io;
pub mod mutation;
pub mod rep;
pub mod rigid;
pub mod silting;
pub mod torsion;

use std::fmt;

/// Errors surfaced by operations whose preconditions can fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters violate a hard precondition (not the soft "no subcategory" case).
    InvalidParams(String),
    /// A module was expected to lie in the cluster tilting subcategory but does not.
    NotInCluster(algebra::IntervalModule),
    /// A pair fails basic well-formedness (duplicate summands, out-of-range index).
    MalformedPair(String),
    /// A path is not composable or has the wrong length or start vertex.
    MalformedPath(String),
    /// An index argument is outside its allowed range.
    OutOfRange(String),
    /// An enumeration hit a configured resource limit; carries the count so far.
    LimitExceeded { emitted: usize },
    /// Two supposedly equivalent computation routes disagreed.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(s) => write!(f, "invalid parameters: {s}"),
            Error::NotInCluster(m) => {
                write!(
                    f,
                    "module M({},{}) is not in the cluster tilting subcategory",
                    m.a, m.b
                )
            }
            Error::MalformedPair(s) => write!(f, "malformed pair: {s}"),
            Error::MalformedPath(s) => write!(f, "malformed path: {s}"),
            Error::OutOfRange(s) => write!(f, "out of range: {s}"),
            Error::LimitExceeded { emitted } => {
                write!(f, "resource limit exceeded after {emitted} items")
            }
            Error::Inconsistency(s) => write!(f, "internal consistency error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
