use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
    #[error("relation polynomial is not monic")]
    NonMonic,
    #[error("relation polynomial must have degree at least 1")]
    RelationDegree,
    #[error("{what} of size {size} exceeds the bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("`{0}` is not an element of the carrier")]
    NotInCarrier(String),
    #[error("cannot read `{text}`: {reason}")]
    Syntax { text: String, reason: String },
    #[error("structures live over different rings: `{0}` and `{1}`")]
    RingMismatch(String, String),
    #[error("no presentation derivable for `{0}`")]
    NoPresentation(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("search space of {needed} candidates exceeds the budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("extension elements have incompatible variants")]
    VariantMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn syntax(text: &str, reason: impl Into<String>) -> Error {
    Error::Syntax {
        text: text.to_string(),
        reason: reason.into(),
    }
}
