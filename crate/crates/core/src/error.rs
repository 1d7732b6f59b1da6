//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a rank-{expected} matrix, found rank {found}")]
    Rank { expected: usize, found: usize },

    #[error("factor {factor} has rank {found}, expected 2")]
    FactorRank { factor: &'static str, found: usize },

    #[error("the zero vector has no projective class")]
    ZeroInput,

    #[error("camera centers coincide")]
    CoincidentCenters,

    #[error("camera center is zero")]
    ZeroCenter,

    #[error("camera center is isotropic (c^T c = 0)")]
    IsotropicCenter,

    #[error("scale factors must be nonzero")]
    ZeroScale,

    #[error("invalid intrinsics: {0}")]
    InvalidIntrinsics(&'static str),

    #[error("not a rotation: {0}")]
    InvalidRotation(String),

    #[error("sampler rejected {0} consecutive degenerate draws")]
    SamplerExhausted(usize),

    #[error("samples look degenerate for component {label}: nullity {first} vs {second}")]
    SamplerDegenerate { label: String, first: usize, second: usize },

    #[error("rationalization failed: {0}")]
    Rationalization(String),

    #[error("invalid document: {0}")]
    Document(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
