//! Error type shared across the crate. Every variant carries a stable
//! machine-readable code used by the CLI's JSON error output.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The theory is developed for k >= -1 only.
    #[error("k = {0} is not supported; the construction requires k >= -1")]
    KBelowMinusOne(i64),

    /// Deletion/contraction recursion at k = -1 needs J to contain every
    /// hyperplane (or be the central upper set {X}).
    #[error("k = -1 recursion requires an upper set containing all hyperplanes or equal to {{X}}")]
    JMissingHyperplanes,

    /// Kernel scan passed its degree cap without reaching a zero component.
    #[error("kernel computation exceeded its degree cap {cap}")]
    KernelCapExceeded { cap: usize },

    /// Input columns do not span Q^r (or a multiplicity vector kills the rank).
    #[error("columns do not span the ambient space: rank {rank} < dimension {dim}")]
    RankDrop { rank: usize, dim: usize },

    /// Malformed matrix input.
    #[error("bad matrix: {0}")]
    BadMatrix(String),

    /// Malformed graph input.
    #[error("bad graph: {0}")]
    BadGraph(String),

    /// Graph must be connected for the incidence construction.
    #[error("graph is not connected")]
    DisconnectedGraph,

    /// Malformed upper-set string.
    #[error("bad upper set: {0}")]
    BadUpperSet(String),

    /// Malformed multiplicity / mask / flat arguments.
    #[error("bad argument: {0}")]
    BadArgument(String),

    /// Contraction of a loop is undefined.
    #[error("cannot contract a loop (column {0})")]
    ContractLoop(usize),

    /// Requested Hilbert route does not apply to the given (k, J).
    #[error("method {method} does not apply: {reason}")]
    MethodInapplicable { method: &'static str, reason: String },

    /// Configuration too large for the bitmask representation.
    #[error("configuration has {0} columns; at most {max} are supported", max = crate::matroid::MAX_COLS)]
    TooManyColumns(usize),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::KBelowMinusOne(_) => "K_BELOW_MINUS_ONE",
            Error::JMissingHyperplanes => "J_MISSING_HYPERPLANES_FOR_INTERNAL",
            Error::KernelCapExceeded { .. } => "KERNEL_CAP_EXCEEDED",
            Error::RankDrop { .. } => "RANK_DROP",
            Error::BadMatrix(_) => "BAD_MATRIX",
            Error::BadGraph(_) => "BAD_GRAPH",
            Error::DisconnectedGraph => "DISCONNECTED_GRAPH",
            Error::BadUpperSet(_) => "BAD_UPPERSET",
            Error::BadArgument(_) => "BAD_ARGUMENT",
            Error::ContractLoop(_) => "CONTRACT_LOOP",
            Error::MethodInapplicable { .. } => "METHOD_INAPPLICABLE",
            Error::TooManyColumns(_) => "TOO_MANY_COLUMNS",
        }
    }
}
