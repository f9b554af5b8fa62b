use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("group closure exceeds the maximum order {max}")]
    SizeLimit { max: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("factorization is not exact: {0}")]
    NotExact(String),

    #[error("squares are not composable: {0}")]
    NotComposable(String),

    #[error("no unique filler: {0}")]
    Filler(String),

    #[error("unsupported in strict mode: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
