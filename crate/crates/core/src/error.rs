use thiserror::Error;

/// Malformed graph6 input. Offsets are byte positions in the input string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("graph order {} at offset {offset} exceeds the supported maximum of 16",
        n.map_or_else(|| "> 62".to_string(), |n| n.to_string()))]
    TooLarge { offset: usize, n: Option<usize> },
    #[error("input ends at offset {offset}; {expected} bytes expected")]
    Truncated { offset: usize, expected: usize },
    #[error("trailing bytes start at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("padding bits of the byte at offset {offset} are not zero")]
    NonzeroPadding { offset: usize },
}

/// Which defining condition of a switching instance failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("tuple has {got} vertices but the method needs {expected}")]
    TupleLength { expected: usize, got: usize },
    #[error("tuple vertex {vertex} is repeated or out of range")]
    TupleVertex { vertex: usize },
    #[error(
        "graph induced on the tuple differs from the switching graph at tuple positions ({i}, {j})"
    )]
    TupleMismatch { i: usize, j: usize },
    #[error("vertex {vertex} outside the tuple has a non-respecting adjacency vector")]
    NonRespecting { vertex: usize },
    #[error("graph is not a switching graph of the method")]
    NotSwitchingGraph,
    #[error("switched matrix is not an adjacency matrix")]
    InvalidResult,
}

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6: {0}")]
    Format(#[from] FormatError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid switching instance: {0}")]
    Validation(#[from] ValidationError),
    #[error("out of range: {0}")]
    Range(String),
    #[error("refused: {0}")]
    ResourceGuard(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
