use alloc::string::String;

/// Errors raised by constructors, solvers and checkers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("{n} vertices exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("arguments share a vertex")]
    NotDisjoint,
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("variant {variant} out of range (max {max})")]
    VariantOutOfRange { variant: usize, max: usize },
    #[error("triangle {0:?} does not have a known type")]
    UnclassifiableTriangle([usize; 3]),
    #[error("inconsistent counts for one type pair: {0} vs {1}")]
    InconsistentTypeCount(u32, u32),
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("guard not met: {0}")]
    GuardViolated(String),
    #[error("enumeration exceeded its cap of {0}")]
    EnumerationCap(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
