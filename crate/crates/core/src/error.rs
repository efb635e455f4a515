use std::fmt;

use thiserror::Error;

use crate::quantities::UnitError;

/// One configuration problem, tied to the key that caused it.
#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub key: String,
    pub message: String,
}

impl Issue {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Issue {
            key: key.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.message)
    }
}

/// Every problem found while validating a parameter set.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ValidationErrors(pub Vec<Issue>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} validation error(s):", self.0.len())?;
        for issue in &self.0 {
            writeln!(f, "  {issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum EwhError {
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("{what} = {value} is outside {bound}")]
    Domain {
        what: &'static str,
        value: f64,
        bound: String,
    },
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error(
        "no break-even crossing on [{d_lo_km}, {d_hi_km}] km: \
         g(lo) = {g_lo:.2} $/day, g(hi) = {g_hi:.2} $/day"
    )]
    NoCrossing {
        d_lo_km: f64,
        d_hi_km: f64,
        g_lo: f64,
        g_hi: f64,
    },
    #[error("{term}: {source}")]
    Term {
        term: &'static str,
        #[source]
        source: Box<EwhError>,
    },
    #[error(transparent)]
    Config(#[from] ValidationErrors),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl EwhError {
    pub fn domain(what: &'static str, value: f64, bound: impl Into<String>) -> Self {
        EwhError::Domain {
            what,
            value,
            bound: bound.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        EwhError::Invalid(msg.into())
    }

    /// Wraps an error with the name of the model term being evaluated.
    pub fn in_term(self, term: &'static str) -> Self {
        EwhError::Term {
            term,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = EwhError> = std::result::Result<T, E>;
