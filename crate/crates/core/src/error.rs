use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("vertices {0} and {1} coincide (zero-length edge)")]
    ZeroLengthEdge(usize, usize),
    #[error("all points are collinear")]
    Collinear,
    #[error("polygon is not simple")]
    NotSimple,
    #[error("area must be positive, got {0}")]
    NonPositiveArea(f64),
    #[error("regular polygon needs n >= 3, got {0}")]
    InvalidVertexCount(usize),
    #[error("area gradient vanishes; multiplier undefined")]
    ZeroAreaGradient,
    #[error("gradient lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("finite-difference step {step} is too large for shortest edge {min_edge}")]
    InvalidPerturbation { step: f64, min_edge: f64 },
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("index {index} out of range for polygon with {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("could not generate a {kind} polygon with {n} vertices after {attempts} attempts")]
    GenerationFailed { kind: String, n: usize, attempts: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
