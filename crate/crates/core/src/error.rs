use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty posets are not supported")]
    EmptyPoset,

    #[error("{what} has {size} elements, above the cap of {cap}")]
    ResourceCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(&'static str),

    #[error("poset has no unique {0}")]
    NoUniqueExtremum(&'static str),

    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),

    #[error("empty interval: {lo} is not below {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("root system {label}{rank} is not supported")]
    UnsupportedRootSystem { label: char, rank: usize },

    #[error("simple root {index} is not cominuscule: its coefficient in the highest root is {coefficient}")]
    NotCominuscule { index: usize, coefficient: i64 },

    #[error("interval poset for simple root {index} does not match the expected {expected} shape")]
    ShapeMismatch { index: usize, expected: String },

    #[error("matrix is not periodic up to sign within exponent bound {bound}")]
    NotPeriodic { bound: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{0} is not in E_L (its first free value is 0)")]
    NotLeft(String),

    #[error("{0} is not in E_R (its last free value is n)")]
    NotRight(String),

    #[error("index set {subset:?} is not contained in R = {allowed:?}")]
    SubsetOutsideR {
        subset: Vec<usize>,
        allowed: Vec<usize>,
    },

    #[error("partition {0} is not an element of the lattice")]
    VertexNotFound(String),

    #[error("lattice has no partition labels (base is not a grid)")]
    NotAGridLattice,

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
