use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Parse(String),
    #[error("unknown Cartan family in `{0}`")]
    UnknownFamily(String),
    #[error("rank out of bounds in `{0}`")]
    RankOutOfBounds(String),
    #[error("{0} is not a root of this root system")]
    NotARoot(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Weyl group of order > {limit} is too large to enumerate")]
    GroupTooLarge { limit: usize },
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),
    #[error("twisting equivalence requires mu(h_alpha) != 0")]
    TwistingHypothesis,
    #[error("centraliser of mu is not a standard Levi subalgebra (simple system {0}); apply minimal_levi_reduction first")]
    NonStandardLevi(String),
    #[error("{0} is not a reduced word for this group")]
    InvalidWord(String),
    #[error("kl cache: {0}")]
    Cache(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
