use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("missing parameter `{0}`")]
    MissingParameter(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("series did not converge after {terms} terms: {detail}")]
    NonConvergent { terms: usize, detail: String },

    #[error("series does not terminate: {0}")]
    NotTerminating(String),

    #[error("requested order {requested} exceeds available order {available}")]
    OrderExceeded { requested: usize, available: usize },

    #[error("composition needs an inner series with zero constant term")]
    NonZeroConstantTerm,

    #[error("family `{0}` is metadata-only and cannot be expanded")]
    UnsupportedExpansion(String),

    #[error("power collection not applicable: factor {factor}: {reason}")]
    MethodNotApplicable { factor: String, reason: String },

    #[error("singular sample configuration: {0}")]
    SingularSamples(String),

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree {n} out of range (maximum {max})")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("normalization vanishes at degree {0}")]
    ZeroNormalization(usize),

    #[error("division by zero")]
    DivisionByZero,
}

impl Error {
    pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}
