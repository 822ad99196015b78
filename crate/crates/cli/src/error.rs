use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("unknown reference `{0}`")]
    UnknownReference(String),

    #[error("dimension mismatch at {at}: {detail}")]
    DimensionMismatch { at: String, detail: String },

    #[error("bad field element at {at}: {detail}")]
    BadFieldElement { at: String, detail: String },

    #[error("invalid instance at {at}: {source}")]
    Invalid {
        at: String,
        #[source]
        source: galcom_core::Error,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl CliError {
    /// Attaches a location to a core error, keeping dimension and field-element errors distinct.
    pub fn at(at: impl Into<String>, e: galcom_core::Error) -> Self {
        let at = at.into();
        match e {
            galcom_core::Error::DimensionMismatch(detail) => CliError::DimensionMismatch { at, detail },
            galcom_core::Error::BadFieldElement { value, field } => CliError::BadFieldElement {
                at,
                detail: format!("`{value}` is not an element of {field}"),
            },
            source => CliError::Invalid { at, source },
        }
    }
}
