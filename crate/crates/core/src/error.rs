use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its documented domain.
    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// Probability reached the edge of the momentum ladder.
    #[error("momentum grid too small: edge occupation {edge_occupation:.3e} at n_max = {n_max} (kick {kick})")]
    GridInadequate {
        n_max: usize,
        kick: usize,
        edge_occupation: f64,
    },

    /// A fit could not be carried out on the supplied data.
    #[error("fit rejected: {0}")]
    Fit(String),

    /// Configuration text or values are invalid; `path` is the dotted field path.
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for failures of the numerical guards (grid adequacy), as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::GridInadequate { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
