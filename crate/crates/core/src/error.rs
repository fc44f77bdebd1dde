use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not symmetric: entry ({i},{j}) = {a} but ({j},{i}) = {b}")]
    NotSymmetric { i: usize, j: usize, a: i64, b: i64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero-norm vector has no hyperbolic distance")]
    ZeroNorm,
    #[error("negative intersection {value} between distinct curves {i} and {j} (requires E.E' >= 0)")]
    NegativePairing { i: usize, j: usize, value: i64 },
    #[error("curve {index} has self-intersection {value}; surface curves need E^2 < 0")]
    NonNegativeSelfIntersection { index: usize, value: i64 },
    #[error("curve {index}: arithmetic genus (E^2 + K.E)/2 + 1 = {numerator}/2 + 1 is not a nonnegative integer")]
    BadGenus { index: usize, numerator: i64 },
    #[error("canonical pairings required")]
    MissingCanonical,
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate index {0} in subset")]
    DuplicateIndex(usize),
    #[error("empty subset")]
    EmptySubset,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{0}")]
    Invalid(String),
    #[error("no subset of size {rank} spans the classes (configuration rank is {actual})")]
    NoSpanningSubset { rank: usize, actual: usize },
    #[error("narrow-parts search would examine {count} subsets, above the limit {limit}")]
    SearchTooLarge { count: u128, limit: u128 },
    #[error("basis of {len} curves does not span rank {rank}")]
    BasisNotSpanning { len: usize, rank: usize },
    #[error("no strictly positive combination pairs positively with every curve")]
    Infeasible,
    #[error("interior point has H^2 = {0} <= 0")]
    NonPositiveSquare(String),
    #[error("nonpositive value {value} at position {index}")]
    NonPositiveValue { index: usize, value: String },
    #[error("zero vector")]
    ZeroVector,
    #[error("degenerate input: all generators are zero")]
    Degenerate,
    #[error("cone dimension {dim} exceeds the face-lattice cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("cone has a lineality space of dimension {0}; face lattice needs a pointed cone")]
    NotPointed(usize),
    #[error("dimension {n} too small: {what} needs n >= {min}")]
    DimensionTooSmall { what: &'static str, n: usize, min: usize },
    #[error("pair ({0},{1}) is not inside the subset")]
    PairNotInSubset(usize, usize),
    #[error("subset is not elliptic")]
    NotElliptic,
    #[error("negative constant {0}")]
    NegativeConstant(String),
    #[error("self_k value {value} at ray {index} outside 1..=3")]
    SelfKOutOfRange { index: usize, value: i64 },
    #[error("negative weight t[{i}][{j}] = {value}")]
    NegativeWeight { i: usize, j: usize, value: String },
    #[error("no geometric realization supplied")]
    MissingRealization,
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
