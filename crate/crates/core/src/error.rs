//! Shared error type for all modules.
//!
//! Variants are grouped by how a caller should react: bad arguments or
//! malformed files (`InvalidInput`, `Format`), instance too large for an
//! exact algorithm (`Capacity`), a structural predicate that failed
//! (`Structure`, `Classification`, `Unsupported`), and numeric failures
//! (`Solver`, `Convergence`).

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A serialized artifact violated its format contract.
    #[error("format violation: {0}")]
    Format(String),

    /// The instance exceeds a configured size cap for an exact algorithm.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A structural invariant (connectivity, multiplicity, ...) failed.
    #[error("structure violation: {0}")]
    Structure(String),

    /// A classification precondition failed; the message names the predicate.
    #[error("classification precondition failed: {0}")]
    Classification(String),

    /// The structure is outside what an algorithm supports (e.g. several
    /// independent cycles where exactly one is required).
    #[error("unsupported structure: {0}")]
    Unsupported(String),

    /// An equation-system solve failed its own post-checks.
    #[error("solver failure: {0}")]
    Solver(String),

    /// Power iteration hit the iteration limit before the eigenvalue
    /// brackets closed to the requested tolerance.
    #[error(
        "power iteration did not converge within {max_iter} iterations \
         (brackets [{lambda_min}, {lambda_max}], width {width:e})",
        width = lambda_max - lambda_min
    )]
    Convergence {
        max_iter: usize,
        lambda_min: f64,
        lambda_max: f64,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
