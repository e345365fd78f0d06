use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Instance document could not be parsed or violates an invariant.
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured resource cap (enumeration size, subset count, search
    /// budget) would be exceeded.
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    /// The requested field is too small for the construction.
    #[error("field of size {got} too small, need at least {needed}")]
    FieldTooSmall { needed: u64, got: u64 },

    /// Linear program has no feasible point.
    #[error("linear program is infeasible")]
    Infeasible,

    /// Linear program is unbounded below.
    #[error("linear program is unbounded")]
    Unbounded,

    /// Branch-and-bound node budget exhausted before proving optimality.
    #[error("branch-and-bound node budget of {0} exhausted")]
    NodeBudget(u64),

    /// Matrix/vector dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
