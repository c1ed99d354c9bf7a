use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("vertex id {id} out of range for graph with {len} vertices")]
    VertexOutOfRange { id: usize, len: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has {vertices} vertices, above the brute-force cap {cap}; use the frontier method")]
    BruteForceCap { vertices: usize, cap: usize },

    #[error("frontier width {width} exceeds cap {cap}")]
    FrontierWidth { width: usize, cap: usize },

    #[error("vertex order is not a permutation of the graph's vertices")]
    BadOrder,

    #[error("set {0} is not independent")]
    NotIndependent(String),

    #[error("strategy {strategy} cannot be used on this graph: {reason}")]
    StrategyMismatch { strategy: String, reason: String },

    #[error("matching tree exceeded {cap} nodes (strategy {strategy}, graph {graph})")]
    NodeGuard { cap: usize, strategy: String, graph: String },

    #[error("independence complex has more than {cap} cells")]
    ComplexCap { cap: usize },

    #[error("{kind} matrix would have size {size}, above the cap {cap}")]
    MatrixSize { kind: String, size: usize, cap: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("coefficient of degree {degree} has nonzero imaginary part: {value}")]
    ImaginaryResidue { degree: usize, value: String },

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("series fit inconclusive: {0}")]
    FitInconclusive(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid caps setting: {0}")]
    InvalidCaps(String),
}

pub type Result<T> = std::result::Result<T, Error>;
