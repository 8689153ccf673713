use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("malformed family: {0}")]
    Malformed(String),
    #[error("valency {0} is below 2")]
    ValencyTooSmall(u32),
    #[error("rigid families need an even valency of at least 4, got {0}")]
    BadRigidValency(u32),
    #[error("every valency has weight zero")]
    AllWeightsZero,
    #[error("valency {0} listed twice")]
    DuplicateValency(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("arch stack deeper than {depth} does not fit the 64-bit state encoding")]
    Capacity { depth: u32 },
    #[error("state vector reached {states} states at step {step}, above the limit of {limit}")]
    ResourceExhausted {
        step: usize,
        states: usize,
        limit: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("{what} needs at least {needed} terms, got {got}")]
    InsufficientData {
        what: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("series value at index {index} is not positive")]
    NonPositive { index: usize },
    #[error("logarithm argument at index {index} is not positive")]
    NonPositiveLogArgument { index: usize },
    #[error("index ranges of the two series do not match")]
    MismatchedSeries,
    #[error("no stabilizing shift found in [{lo}, {hi}]")]
    NoStabilizingShift { lo: f64, hi: f64 },
    #[error("series indices are not consecutive")]
    NotContiguous,
    #[error("no {parity} estimate ends at N = {n_max}")]
    ParityMismatch { parity: &'static str, n_max: usize },
    #[error("working precision of {0} digits is below the minimum of 50")]
    Precision(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{0}")]
pub struct DomainError(pub String);
