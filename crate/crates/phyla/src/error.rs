//! One error type for the whole crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong on a well-typed but mathematically bad input,
/// plus the internal-inconsistency escape hatch for broken invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested field order is not a prime.
    FieldNotPrime(u64),
    /// The field is too small for a computation that needs more elements
    /// (for example the trace form needs p > dim of the endomorphism ring).
    FieldTooSmall { p: u64, needed: u64 },
    /// The shape quiver has a directed cycle.
    CyclicQuiver,
    /// A presented algebra could not be completed to a confluent rewriting
    /// system within the iteration budget, or failed its verification net.
    BuildFailed(String),
    /// An arrow bimodule is not projective as a left module over the target
    /// vertex algebra.
    NotProjectiveLeft,
    /// An arrow bimodule is not projective as a right module over the source
    /// vertex algebra.
    NotProjectiveRight,
    /// No bimodule isomorphism between the two one-sided duals exists, so the
    /// arrow bimodule admits no dualisability certificate.
    NotDualisable,
    /// Two objects that must live over the same phylum (or algebra) do not.
    OwnerMismatch,
    /// Matrix or module dimensions do not match the declared shapes.
    DimensionMismatch,
    /// A claimed representation-with-back-maps does not satisfy the defining
    /// relation.
    RelationViolated,
    /// A linear problem that the caller asserted solvable has no solution.
    NoSolution,
    /// The operation is undefined on (relatively) projective input.
    ProjectiveInput,
    /// The operation requires an indecomposable module.
    NotIndecomposable,
    /// No socle class produced a non-split extension during almost split
    /// sequence construction.
    SocleSearchFailed,
    /// A claimed short exact sequence is not exact.
    NotExact,
    /// The input is well formed but outside the shapes this operation
    /// implements (for example catalogue enumeration on an unlisted shape).
    Unsupported(String),
    /// Two independently computed routes disagree; this is a bug, not a
    /// property of the input.
    InternalInconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldNotPrime(p) => write!(f, "{p} is not prime"),
            Error::FieldTooSmall { p, needed } => {
                write!(f, "field of order {p} too small, need at least {needed}")
            }
            Error::CyclicQuiver => write!(f, "shape quiver has a directed cycle"),
            Error::BuildFailed(msg) => write!(f, "algebra build failed: {msg}"),
            Error::NotProjectiveLeft => write!(f, "bimodule is not left projective"),
            Error::NotProjectiveRight => write!(f, "bimodule is not right projective"),
            Error::NotDualisable => write!(f, "bimodule admits no dualisability certificate"),
            Error::OwnerMismatch => write!(f, "objects belong to different owners"),
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::RelationViolated => write!(f, "back maps violate the defining relation"),
            Error::NoSolution => write!(f, "linear system has no solution"),
            Error::ProjectiveInput => write!(f, "operation undefined on projective input"),
            Error::NotIndecomposable => write!(f, "module is not indecomposable"),
            Error::SocleSearchFailed => write!(f, "no socle class yields a non-split extension"),
            Error::NotExact => write!(f, "sequence is not exact"),
            Error::Unsupported(msg) => write!(f, "unsupported input: {msg}"),
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
