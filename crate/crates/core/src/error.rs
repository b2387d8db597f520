//! Error types shared across the crate.

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by parsing, arithmetic preconditions, and the group layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two polynomials (or a polynomial and a point) live in different
    /// ambient dimensions.
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    /// A variable index in the input source is outside `1..=dimension`.
    #[error("variable index {index} out of range 1..={dimension}")]
    VariableOutOfRange { index: usize, dimension: usize },

    /// The input text does not match the polynomial grammar. `position` is a
    /// byte offset into the source string.
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    /// A homogeneity precondition was violated (mixed degrees where a single
    /// degree is required, zero where a graded piece is required, and so on).
    #[error("grading error: {0}")]
    Grading(String),

    /// A membership or generation test would need basis data beyond the
    /// caller-supplied degree cap.
    #[error("degree cap {cap} exceeded: computation requires degree {required}")]
    DegreeCap { required: usize, cap: usize },

    /// An exact operation was requested on a group stored in float mode.
    #[error("operation requires a rational-mode group: {0}")]
    FloatMode(String),

    /// A matrix list failed the finite-orthogonal-group axioms.
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    /// A generator list failed the graded-subalgebra invariants.
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    /// A fiber-sampling request referenced a missing or empty cluster.
    #[error("fiber sampling: {0}")]
    Fiber(String),
}
