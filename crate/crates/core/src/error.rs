use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A curve or metric description could not be parsed.
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    /// Radial projection of the origin was requested.
    #[error("chord vector is identically zero")]
    ZeroChordVector,

    #[error("oracle budget exceeded: {required} candidate tuples, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A curve file is malformed; `location` names the line or field.
    #[error("{source_name}: {location}: {message}")]
    Format {
        source_name: String,
        location: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            message: message.into(),
        }
    }
}
