use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image table is not a bijection on 1..={degree}")]
    NotABijection { degree: usize },

    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: u64, degree: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} exceeds the {cap_name} cap ({value} > {cap})")]
    CapExceeded {
        what: String,
        cap_name: &'static str,
        value: String,
        cap: u64,
    },

    #[error("group order {order} exceeds the brute-force centralizer cap {cap}; use centralizer_ratio_3cycle for 3-cycles in S_n/A_n")]
    UseClosedForm { order: String, cap: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("generator {generator} maps block {block} outside the block set: not an automorphism")]
    NotAnAutomorphism { generator: String, block: String },

    #[error("group is not transitive on the action space ({orbit} of {size} objects reached)")]
    NotTransitive { orbit: u64, size: String },

    #[error("no element of order {0} in the group")]
    NoElementOfOrder(u64),

    #[error("no union of invariant orbits has size {k} (orbit sizes: {sizes})")]
    NoCombination { k: usize, sizes: String },

    #[error("invalid cap override: {0}")]
    InvalidCaps(String),

    #[error("unknown case id `{0}`")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
