use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building states, running circuits,
/// or planning measurements.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot encode the zero vector")]
    ZeroVector,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (largest deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("operands mix a pure state with a density matrix")]
    MixedKind,

    #[error("state vector has norm {norm} instead of 1")]
    NotNormalized { norm: f64 },

    #[error("density matrix has trace {trace} instead of 1")]
    TraceNotOne { trace: f64 },

    #[error("duplicate register name `{name}`")]
    DuplicateRegister { name: String },

    #[error("register layout mismatch: {detail}")]
    LayoutMismatch { detail: String },

    #[error("mixed states are not supported by this operation")]
    MixedStateUnsupported,

    #[error("weights must be nonnegative and sum to 1, got sum {sum}")]
    WeightSumInvalid { sum: f64 },

    #[error("label register width {width} is not supported by this operation")]
    LabelWidthUnsupported { width: usize },

    #[error("probability mass {mass:.3e} sits on non-logical label patterns")]
    NonLogicalLeakage { mass: f64 },

    #[error("invalid outcome distribution: {detail}")]
    InvalidDistribution { detail: String },

    #[error("score {score} lies outside [-1, 1]")]
    ScoreOutOfRange { score: f64 },

    #[error("distribution is degenerate, skewness is undefined")]
    DegenerateDistribution,

    #[error("score is zero, no shot budget can resolve its sign")]
    UndecidableScore,

    #[error("not enough shots: got {got}, need at least {need}")]
    InsufficientShots { got: u64, need: u64 },

    #[error("rate {rate} lies outside [0, 1]")]
    RateOutOfRange { rate: f64 },

    #[error("invalid channel coefficients: {detail}")]
    InvalidCoefficients { detail: String },

    #[error("noise channel scale is zero, the score sign is destroyed")]
    SignDestroyed,

    #[error("invalid parameter: {detail}")]
    InvalidParameter { detail: String },
}
