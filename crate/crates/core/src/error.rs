use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed judgment {0:?}: expected an integer or p/q fraction")]
    Malformed(String),
    #[error("judgment {0:?} is not on the 1..9 scale or its reciprocals")]
    OutOfScale(String),
    #[error("pair ({a}, {b}) has no judgment")]
    MissingPair { a: String, b: String },
    #[error("pair ({a}, {b}) is given more than once")]
    DuplicatePair { a: String, b: String },
    #[error("index {index} is out of range for a {dimension}x{dimension} matrix")]
    BadIndex { index: usize, dimension: usize },
    #[error("invalid identifiers: {0}")]
    InvalidIds(String),
    #[error("invalid hierarchy: {0}")]
    InvalidHierarchy(String),
    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NonConvergence {
        iterations: usize,
        residual: f64,
        last: Vec<f64>,
    },
    #[error("weight {index} is {weight:e}, too small for the eigenvalue estimate")]
    ZeroWeight { index: usize, weight: f64 },
    #[error("no random index for dimension {0} (supported up to 15)")]
    DimensionUnsupported(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("identifier mismatch: {0}")]
    IdMismatch(String),
    #[error("unknown criterion {0:?}")]
    UnknownCriterion(String),
    #[error("unknown matrix {0:?}")]
    UnknownMatrix(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("matrix {0:?} still has pending judgments")]
    Incomplete(String),
    #[error("matrix of dimension {0} has no triads (need at least 3)")]
    TooSmall(usize),
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("scale error in {location}: {source}")]
    Scale {
        location: String,
        #[source]
        source: Box<Error>,
    },
    #[error("csv report needs a complete model: {0}")]
    IncompleteForCsv(String),
    #[error("report rendering failed: {0}")]
    Render(String),
}
