use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The sum-sum Fisher element vanished, i.e. the input carries no photons.
    #[error("singular sum block: F_ss = {0}")]
    SingularSumBlock(f64),

    #[error("no information: the state carries no phase information")]
    NoInformation,

    #[error("no compensating mismatch exists for this (T, varpi): arcsin argument {argument}")]
    NoCompensatingMismatch { argument: f64 },

    #[error("degenerate splitter: |TR| = 0")]
    DegenerateSplitter,

    #[error("insensitive working point: d<N_d>/dphi = 0")]
    InsensitiveWorkingPoint,

    #[error("cutoff too small: truncated mass {tail:e} exceeds tolerance at cutoff {cutoff}")]
    CutoffTooSmall { tail: f64, cutoff: usize },

    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("outside oracle support: {0}")]
    OutsideOracleSupport(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
