use thiserror::Error;

/// Errors produced by parsing, generation and the exhaustive engines.
///
/// Parse failures are split per invariant so that a malformed edge list
/// reports exactly which rule it broke and where.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: loop arc ({v},{v}) is not allowed")]
    SelfLoop { line: usize, v: u32 },
    #[error("line {line}: arcs ({u},{v}) and ({v},{u}) form a digon")]
    Digon { line: usize, u: u32, v: u32 },
    #[error("line {line}: duplicate arc ({u},{v})")]
    DuplicateArc { line: usize, u: u32, v: u32 },
    #[error("line {line}: vertex {v} out of range for n={n}")]
    VertexOutOfRange { line: usize, v: u32, n: usize },
    #[error("header declares {expected} arcs but body has {found}")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error("line {line}: malformed input: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,

    #[error("{what}: n={n} exceeds the exhaustive limit {limit}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("budget exceeded for {what}: {detail}")]
    Budget { what: &'static str, detail: String },
    #[error("gamma must be a rational in (0,1), got {0}")]
    BadGamma(crate::rational::Rational),
    #[error("probability must satisfy 0 < p <= 1, got {0}")]
    BadProbability(f64),
    #[error("trials must be >= 1")]
    NoTrials,
    #[error("iterations must be >= 1")]
    NoIterations,
    #[error("graph is not d-regular: vertex {v} has (d+,d-)=({dout},{din})")]
    NotRegular { v: u32, dout: u32, din: u32 },
    #[error("graph has an isolated vertex: {0}")]
    IsolatedVertex(u32),
    #[error("graph has no arcs")]
    EmptyGraph,
    #[error("{0} is not prime (prime-field polarity construction)")]
    NotPrime(u64),
    #[error("circulant offset {offset} out of range 1..={max} for n={n}")]
    OffsetOutOfRange { offset: u32, max: u32, n: usize },
    #[error("duplicate circulant offset {0}")]
    DuplicateOffset(u32),
    #[error("edge target {e} exceeds the {max} unordered pairs of n={n} vertices")]
    TooManyEdges { e: u64, max: u64, n: usize },
    #[error("n must be at least {min} for {what}, got {n}")]
    TooFewVertices {
        what: &'static str,
        n: usize,
        min: usize,
    },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown probe target {0:?}")]
    UnknownTarget(String),
    #[error("pattern and host budgets: {0}")]
    PatternBudget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
