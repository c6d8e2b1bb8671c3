use thiserror::Error;

use crate::arith::{EgyptianRep, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse {input:?} as a rational (expected \"p/q\" or \"p\")")]
    Parse { input: String },

    #[error("search node budget of {budget} expansions exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("requested {requested} terms, limit is {limit}")]
    TermLimit { requested: usize, limit: usize },

    /// A would-be cell endpoint is also a shorter Egyptian sum, so it is never
    /// a best value at the requested level.
    #[error("{value} has a shorter representation {witness}")]
    ShorterRepresentation {
        value: Rational,
        witness: EgyptianRep,
    },

    #[error("verification failed: {inequality} (i = {i}{})", witness_suffix(*.k, *.l))]
    Verification {
        inequality: String,
        i: u64,
        k: Option<u64>,
        l: Option<u64>,
    },
}

fn witness_suffix(k: Option<u64>, l: Option<u64>) -> String {
    let mut s = String::new();
    if let Some(k) = k {
        s.push_str(&format!(", k = {k}"));
    }
    if let Some(l) = l {
        s.push_str(&format!(", l = {l}"));
    }
    s
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by configurable resource limits rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExhausted { .. } | Error::TermLimit { .. }
        )
    }
}
