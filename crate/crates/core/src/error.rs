use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and operations of the core library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A lattice failed validation (order axioms or missing joins).
    InvalidLattice(String),
    /// A quantaloid failed validation (associativity, units, join preservation, involution).
    InvalidQuantaloid(String),
    /// An enriched category, functor or distributor violates its axioms.
    InvalidCategory(String),
    /// A finite category, sieve, crible or topology violates its axioms.
    InvalidSite(String),
    /// A name did not resolve to an element or object.
    UnknownName(String),
    /// Morphisms or categories with incompatible types were combined.
    TypeMismatch(String),
    /// The operation requires an involution and none is present.
    MissingInvolution,
    /// The operation is undefined on this input (failed precondition).
    NotApplicable(String),
    /// An exhaustive search exceeded its configured cap.
    ResourceCap { what: &'static str, cap: u64 },
    /// A construction produced output that failed its own post-condition.
    InternalConsistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLattice(m) => write!(f, "invalid lattice: {m}"),
            Error::InvalidQuantaloid(m) => write!(f, "invalid quantaloid: {m}"),
            Error::InvalidCategory(m) => write!(f, "invalid enriched category data: {m}"),
            Error::InvalidSite(m) => write!(f, "invalid site: {m}"),
            Error::UnknownName(m) => write!(f, "unknown name: {m}"),
            Error::TypeMismatch(m) => write!(f, "type mismatch: {m}"),
            Error::MissingInvolution => write!(f, "operation requires an involutive quantaloid"),
            Error::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Error::ResourceCap { what, cap } => {
                write!(f, "resource cap exceeded while {what} (cap = {cap})")
            }
            Error::InternalConsistency(m) => write!(f, "internal consistency failure: {m}"),
        }
    }
}

impl core::error::Error for Error {}
