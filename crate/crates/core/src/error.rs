use thiserror::Error;

/// Errors produced by mask construction, labeling and the codec.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the domain of an operation.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// More stuck cells than the configured multiplicity can mask.
    #[error("capacity exceeded: {count} stuck cells, code masks at most {max}")]
    Capacity { count: usize, max: usize },
    /// A label that does not distinguish every mask of its set.
    #[error("invalid label: {0}")]
    Label(String),
    /// Label columns are linearly dependent in the generator matrix, so the
    /// label cannot sit inside an information set.
    #[error("infeasible label: {0}")]
    InfeasibleLabel(String),
    /// The random-error decoder could not produce a codeword within radius t.
    #[error("uncorrectable read word")]
    Uncorrectable,
    /// The decoded label bits match no mask.
    #[error("label bits {0} do not identify any mask")]
    LabelMiss(String),
    /// A check refused to run because its exhaustive size is too large.
    #[error("exhaustive check too large: {estimate} elementary checks exceeds guard {guard}")]
    TooLarge { estimate: u128, guard: u128 },
    /// Malformed text input (hex words, mask-set or label files).
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
