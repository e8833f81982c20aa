use thiserror::Error;

use crate::params::Parameters;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error(
        "trivial parameters {0}: min(r, R, n, N) < 2, the braid group is a free group \
         (or the space is degenerate) and the connectivity formulas do not apply"
    )]
    Trivial(Parameters),

    #[error("parameters {0} are not in the required order ({1})")]
    NotOrdered(Parameters, &'static str),

    #[error("resource limit exceeded: {what} needs {size}, limit is {limit}")]
    Resource {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("{0} is not a 0-cell of this complex")]
    NotAZeroCell(String),

    #[error("{0} is not a simplex of this complex")]
    NotASimplex(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
