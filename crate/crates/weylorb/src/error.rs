use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by construction, parsing and the exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {rank} is not valid for family {family}: {reason}")]
    InvalidRank {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("cannot parse algebra name {0:?}")]
    ParseAlgebra(String),

    #[error("cannot parse weight {text:?}: {reason}")]
    ParseWeight { text: String, reason: String },

    #[error("weight has {got} coordinates but algebra {algebra} needs {expected}")]
    CoordCount {
        algebra: String,
        expected: usize,
        got: usize,
    },

    #[error("weight {0} is not dominant")]
    NonDominant(String),

    #[error("component index {0} is out of range")]
    InvalidComponent(usize),

    #[error("node {node} is out of range for component {component}")]
    InvalidNode { component: String, node: usize },

    #[error("reflections are not defined on U1 coordinates")]
    ReflectionOnU1,

    #[error("operation requires a single A-type component, got {0}")]
    NotPureTypeA(String),

    #[error("no catalog entry for {from} > {to}")]
    UnknownPair { from: String, to: String },

    #[error("series constructor argument out of range: {0}")]
    SeriesRange(String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("algebra mismatch: expected {expected}, got {got}")]
    AlgebraMismatch { expected: String, got: String },

    #[error("source weights do not span the source space (rank {rank} < dimension {dim})")]
    RankDeficient { rank: usize, dim: usize },

    #[error("weight pair {from} -> {to} is inconsistent with the solved matrix")]
    InconsistentPair { from: String, to: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error(
        "projected point count {count} for dominant {weight} is not divisible \
         by its orbit size {orbit_size}; the matrix is not a valid projection for this pair"
    )]
    InexactMultiplicity {
        weight: String,
        count: u64,
        orbit_size: u128,
    },

    #[error("weight lists have different cardinalities ({left} vs {right})")]
    CardinalityMismatch { left: usize, right: usize },

    #[error(
        "maximal residue point {point} is not dominant; \
         the input is not an integer combination of orbit point sets"
    )]
    NonDominantResidue { point: String },

    #[error("pullback requires a matrix with inverted provenance, got {0}")]
    NotInverted(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
