use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight vector is empty")]
    EmptyWeights,
    #[error("first weight must be exactly 1, got {0}")]
    FirstWeightNotOne(String),
    #[error("weight at level {index} is not positive: {value}")]
    NonPositiveWeight { index: usize, value: String },
    #[error("inverse temperature must be non-negative, got {0}")]
    NegativeBeta(String),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("denominator bound must be at least 2, got {0}")]
    DenominatorBound(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("curves were built over different Gibbs contexts")]
    ContextMismatch,
    #[error("abscissa {0} lies outside [0, Z]")]
    OutOfRange(String),

    #[error("target state is not achievable from the initial state")]
    NotAchievable,
    #[error("target curve is not tightly thermomajorized by the initial curve")]
    NotTight,
    #[error("initial curve has repeated slopes; the process is not unique")]
    DegenerateSlopes,
    #[error("matrix is not a thermal process: {0}")]
    NotThermalProcess(String),
    #[error("state is not extremal in the achievable set")]
    NotExtremalState,
    #[error("extremal states must be distinct")]
    IdenticalExtremals,

    #[error("margin mismatch: {0}")]
    MarginMismatch(String),
    #[error("invalid transportation matrix: {0}")]
    InvalidTransportation(String),
    #[error("transportation matrix is not extremal (its support contains a cycle)")]
    NotExtremal,
    #[error("enumeration budget of {0} search states exceeded")]
    BudgetExceeded(usize),

    #[error("unknown {kind} `{name}`; available: {available}")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyWeights => "empty_weights",
            Error::FirstWeightNotOne(_) => "first_weight_not_one",
            Error::NonPositiveWeight { .. } => "non_positive_weight",
            Error::NegativeBeta(_) => "negative_beta",
            Error::NonFinite(_) => "non_finite",
            Error::DenominatorBound(_) => "denominator_bound",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidState(_) => "invalid_state",
            Error::ContextMismatch => "context_mismatch",
            Error::OutOfRange(_) => "out_of_range",
            Error::NotAchievable => "not_achievable",
            Error::NotTight => "not_tight",
            Error::DegenerateSlopes => "degenerate_slopes",
            Error::NotThermalProcess(_) => "not_thermal_process",
            Error::NotExtremalState => "not_extremal_state",
            Error::IdenticalExtremals => "identical_extremals",
            Error::MarginMismatch(_) => "margin_mismatch",
            Error::InvalidTransportation(_) => "invalid_transportation",
            Error::NotExtremal => "not_extremal",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::UnknownStrategy { .. } => "unknown_strategy",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }
}
