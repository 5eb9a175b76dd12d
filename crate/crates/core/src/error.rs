use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `3χ − n` must be a non-negative even integer and `χ ≥ 1`.
    #[error("invalid model parameters chi={chi}, n={n}: 3*chi - n must be a non-negative even integer and chi >= 1")]
    Parity { chi: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    Degree {
        vertex: usize,
        degree: usize,
        expected: &'static str,
    },

    #[error("graph has {found} boundary vertices, need at least {needed}")]
    TooFewBoundary { found: usize, needed: usize },

    #[error("boundary norm of the test function is zero")]
    ZeroBoundaryNorm,

    #[error("{what}: size {size} exceeds guard {guard}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        guard: u128,
    },

    #[error("interior Dirichlet block is not positive definite")]
    SingularInterior,

    #[error("eigensolver failure: {0}")]
    Solver(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
