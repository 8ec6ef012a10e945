use std::fmt;

use crate::field::{fmt_q, Q};

/// What a budget-limited search had established when it stopped.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialCertificate {
    pub explored: usize,
    /// Best admissible value seen so far, if any.
    pub best: Option<Q>,
    /// Every weight with Casimir strictly below this was examined.
    pub casimir_frontier: Q,
}

impl fmt::Display for PartialCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "explored {} weights, all Casimir < {} examined", self.explored, fmt_q(&self.casimir_frontier))?;
        if let Some(b) = &self.best {
            write!(f, ", best admissible value {}", fmt_q(b))?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("embedding inconsistency: {0}")]
    Embedding(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("search budget of {budget} nodes exhausted ({certificate})")]
    Budget { budget: usize, certificate: Box<PartialCertificate> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("search failure: {0}")]
    SearchFailure(String),
    #[error("incomplete certificate: {0}")]
    IncompleteCertificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
