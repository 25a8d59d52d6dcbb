use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole hit at hbar = {at}")]
    PoleHit { at: String },
    #[error("rational function has a pole at hbar = 0")]
    PoleAtZero,
    #[error("not an invariant ordering: {0}")]
    NotAnOrdering(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("coefficient factor vanishes identically at weight {weight}")]
    IdenticallyZeroFactor { weight: String },
    #[error("pole formula assumption violated at weight {0}")]
    AssumptionViolated(String),
    #[error("twist truncated at grade {available} but grade {required} is needed")]
    TruncationInsufficient { required: usize, available: usize },
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("positivity hypothesis fails at weight {0}")]
    HypothesisFailed(String),
    #[error("negative value {value} for input {input}")]
    NegativeValue { input: String, value: String },
    #[error("unexpected pole at {0}")]
    UnexpectedPole(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line front-end and the C ABI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_) | Error::Parse(_) | Error::NotAnOrdering(_) => 2,
            Error::IdenticallyZeroFactor { .. } => 3,
            Error::PoleHit { .. } | Error::PoleAtZero => 4,
            _ => 1,
        }
    }
}
