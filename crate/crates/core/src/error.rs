use thiserror::Error;

/// Errors raised while reading the line-oriented graph format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing 'p <n> <m>' header")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: negative weight on vertex {vertex}")]
    NegativeWeight { line: usize, vertex: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Library error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("copy enumeration exceeded the budget of {limit} copies")]
    BudgetExceeded { limit: usize },
    #[error("instance has {n} vertices, above the exact-solver cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid colouring: {0}")]
    InvalidColoring(String),
    /// A runtime-checked guarantee failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns `Error::Invariant` when `cond` is false.
macro_rules! ensure_invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Error::Invariant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_invariant;
