use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The variants split into two families: input problems (bad type/rank,
/// non-dominant weights, violated hypotheses) and internal consistency
/// failures (two independent computations disagreeing, negative residual
/// multiplicities). [`Error::is_consistency`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("diagram automorphism tau is only available in type B, not type {0}")]
    UnsupportedAutomorphism(char),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("coefficient overflow")]
    Overflow,

    #[error("length additivity fails: {0}")]
    Factorization(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("not the character of a finite-dimensional module: {0}")]
    NotACharacter(String),
}

impl Error {
    /// True for failures that indicate a bug (or corrupted upstream data)
    /// rather than a bad request.
    pub fn is_consistency(&self) -> bool {
        matches!(
            self,
            Error::Overflow
                | Error::InvariantViolation(_)
                | Error::Consistency(_)
                | Error::NotACharacter(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
