use thiserror::Error;

use crate::scalar::SeqKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    #[error("index {n} is outside the domain of the {kind} sequence")]
    IndexOutOfDomain { kind: SeqKind, n: i64 },

    #[error("degenerate discriminant: ab(ab+8) = 0 gives a repeated characteristic root")]
    DegenerateDiscriminant,

    #[error("invalid rational literal `{0}` (expected `p` or `p/q`)")]
    ParseRational(String),

    #[error("term methods disagree at n = {n}")]
    MethodMismatch { n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
