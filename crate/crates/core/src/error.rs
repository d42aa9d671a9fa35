use thiserror::Error;

/// Errors raised by the GF(2) kernel and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} * {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("blocks must share one square size")]
    NonUniformBlocks,

    #[error("malformed hex: {0}")]
    MalformedHex(String),

    #[error("empty code")]
    EmptyCode,

    #[error("missing systematic form: the complement of the pivot columns is not an information set")]
    MissingSystematicForm,

    #[error("window radius {t} exceeds dimension {k}")]
    WindowTooLarge { t: usize, k: usize },

    #[error("enumerator mismatch: {0}")]
    EnumeratorMismatch(String),

    #[error("weight window too small to separate the two Type I families (need weight 16)")]
    EnumeratorAmbiguous,

    #[error("block kind mismatch: family {family} expects {expected}")]
    KindMismatch { family: String, expected: String },

    #[error("x not isotropic")]
    NotIsotropic,

    #[error("not a proper neighbour")]
    NotProperNeighbour,

    #[error("code is not self-dual")]
    NotSelfDual,

    #[error("neighbour step {depth} failed")]
    ChainStep {
        depth: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("initial code rejected: {0}")]
    InvalidInitial(String),

    #[error("revalidation failed: {0}")]
    Revalidation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
