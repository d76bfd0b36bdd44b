use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("evaluation point {0} is zero or a root of unity")]
    Genericity(String),

    #[error("key {key} does not belong to algebra {algebra}")]
    KeyKind { algebra: String, key: String },

    #[error("algebra {0} carries no invariant form")]
    NoForm(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("distribution window is empty")]
    EmptyWindow,

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("missing or invalid parameter: {0}")]
    Param(String),

    #[error("invalid module specification: {0}")]
    Spec(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
