//! Crate-wide error type.

use num_bigint::BigUint;

/// Errors produced by parsing, group construction, counting and verification.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("arity hint {hint} is smaller than used generator index {seen}")]
    ArityHint { hint: usize, seen: usize },

    #[error("arity mismatch: word takes {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("foreign element handle {handle} for group `{group}` of order {order}")]
    ForeignElement {
        handle: usize,
        order: u64,
        group: String,
    },

    #[error("invalid group document: {0}")]
    InvalidGroup(String),

    #[error("relation {relation} is not supported on central generators")]
    NonCentralRelation { relation: String },

    #[error("group `{0}` is not of nilpotency class <= 2")]
    NotClass2(String),

    #[error("group `{0}` is not nilpotent: {1}")]
    NotNilpotent(String, String),

    #[error("evaluation budget exceeded: required {required}, budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("scale limit exceeded: {0}")]
    ScaleLimit(String),

    #[error("character eigenvector separation failed after {attempts} attempts")]
    SeparationFailure { attempts: u32 },

    #[error("numeric residual {residual:e} above threshold {threshold:e}: {context}")]
    Residual {
        residual: f64,
        threshold: f64,
        context: String,
    },

    #[error("theorem `{claim}` violated (implementation bug): {details}")]
    TheoremViolated { claim: String, details: String },

    #[error("classification criteria disagree: {0}")]
    CriteriaDisagreement(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn budget(required: u128, budget: u64) -> Self {
        Error::BudgetExceeded { required, budget }
    }

    pub(crate) fn theorem(claim: &str, details: impl Into<String>) -> Self {
        Error::TheoremViolated {
            claim: claim.to_string(),
            details: details.into(),
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Helper: `|G|^k` as a `BigUint`.
pub(crate) fn pow_biguint(base: u64, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}
