use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Structural problem with a graph (duplicate ids, self-loops, dangling references).
    InvalidGraph(String),
    NotATree,
    /// The graph is a tree but |det| != 1.
    NotHomologySphere(BigInt),
    /// A calculus move's preconditions do not hold.
    InvalidMove(String),
    InvalidArgument(String),
    /// Division by zero while evaluating a bracket.
    MalformedExpansion,
    /// A consistency check that should always hold failed.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGraph(m) => write!(f, "invalid graph: {m}"),
            Error::NotATree => f.write_str("graph is not a tree"),
            Error::NotHomologySphere(d) => write!(f, "not an integral homology sphere (det = {d})"),
            Error::InvalidMove(m) => write!(f, "move not applicable: {m}"),
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::MalformedExpansion => f.write_str("malformed continued fraction (division by zero)"),
            Error::Internal(m) => write!(f, "internal consistency check failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}
