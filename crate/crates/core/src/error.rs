use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("bad sign {0}, expected +1 or -1")]
    BadSign(i64),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("exponent must be at least 1, got {0}")]
    BadExponent(usize),
    #[error("graph is not distance-compatible: pair {0}-{1} has shortest paths of both signs")]
    NotCompatible(usize, usize),
    #[error("power of exponent {n} is not unique: pair {u}-{v} is incompatible")]
    NonUniquePower { n: usize, u: usize, v: usize },
    #[error("block {0}-{1} of the path is not a shortest path")]
    NonGeodesicBlock(usize, usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not balanced")]
    NotBalanced,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no witness path recorded for power edge {0}-{1}")]
    MissingWitness(usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix must be non-empty and square")]
    BadMatrixShape,
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("more than {0} shortest paths between the pair")]
    TooManyPaths(usize),
    #[error("corpus generation exhausted {attempts} attempts satisfying `{constraint}`")]
    GenerationExhausted {
        constraint: &'static str,
        attempts: usize,
    },
    #[error("invalid corpus spec: {0}")]
    BadCorpusSpec(String),
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{source} at line {line}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Stable variant name, used by the CLI on standard error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NoVertices => "NoVertices",
            Error::LoopEdge(..) => "LoopEdge",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::BadSign(..) => "BadSign",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::NotAPath(..) => "NotAPath",
            Error::Disconnected => "Disconnected",
            Error::BadExponent(..) => "BadExponent",
            Error::NotCompatible(..) => "NotCompatible",
            Error::NonUniquePower { .. } => "NonUniquePower",
            Error::NonGeodesicBlock(..) => "NonGeodesicBlock",
            Error::NotTwoConnected => "NotTwoConnected",
            Error::NotBalanced => "NotBalanced",
            Error::PreconditionViolated(..) => "PreconditionViolated",
            Error::MissingWitness(..) => "MissingWitness",
            Error::NotSymmetric(..) => "NotSymmetric",
            Error::BadMatrixShape => "BadMatrixShape",
            Error::NoConvergence(..) => "NoConvergence",
            Error::TooManyPaths(..) => "TooManyPaths",
            Error::GenerationExhausted { .. } => "GenerationExhausted",
            Error::BadCorpusSpec(..) => "BadCorpusSpec",
            Error::Syntax { .. } => "SyntaxError",
            Error::AtLine { source, .. } => source.name(),
        }
    }
}
