use thiserror::Error;

/// Error type shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a precondition (bad k, out-of-range position, malformed instance).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A certificate handed to a converter or lift failed verification.
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    /// An exact solver ran out of its node budget before proving optimality.
    #[error("node budget exhausted after {nodes} nodes (budget {budget})")]
    BudgetExceeded { nodes: u64, budget: u64 },

    /// The instance admits no solution at all (e.g. a graph vertex with no incident edge).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An internal re-check failed; indicates a bug, not bad input.
    #[error("internal soundness check failed: {0}")]
    Soundness(String),

    /// Malformed input file or textual encoding.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
