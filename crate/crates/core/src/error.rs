use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("unsupported schema `{found}` (expected `{expected}`)")]
    SchemaVersion { found: String, expected: String },

    #[error("the free category is infinite: directed cycle through vertex `{0}`")]
    CyclicGraph(String),

    #[error("direction mismatch: {0}")]
    Direction(String),

    #[error("mismatched structures: {0}")]
    Mismatch(String),

    #[error("resource limit: enumerating {what} exceeds {limit} cells")]
    ResourceLimit { what: String, limit: usize },

    #[error("2-cell `{0}` is not invertible")]
    NotInvertible(String),

    #[error("`{0}` and `{1}` are not composable")]
    NotComposable(String, String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { pointer: pointer.into(), message: message.into() }
    }

    /// True for errors that a loader or CLI should report with exit code 2.
    pub fn is_schema_or_resource(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. } | Error::SchemaVersion { .. } | Error::ResourceLimit { .. }
        )
    }
}
