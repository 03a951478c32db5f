//! Error types shared across the library.

use thiserror::Error;

/// Everything that can go wrong inside the algebra engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("denominator is divisible by the field characteristic: {0}")]
    NonPrimeCharacteristicLiteral(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("square does not commute: {0}")]
    NonCommuting(String),

    #[error("not a monomial ideal: {0}")]
    NotMonomial(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("not a prime modulus: {0}")]
    NotPrime(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
