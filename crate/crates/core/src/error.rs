use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("no stabilization within {levels} levels; chain fingerprints: {chain:?}")]
    NoStabilization { levels: usize, chain: Vec<String> },

    #[error("reduction number exceeds r_max = {r_max}: {diagnostic}")]
    ReductionBound { r_max: usize, diagnostic: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
