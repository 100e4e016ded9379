use thiserror::Error;

use crate::gaussint::GaussInt;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero is not allowed here")]
    Zero,
    #[error("modulus {0} has even norm")]
    EvenNorm(GaussInt),
    #[error("{0} is not primary")]
    NotPrimary(GaussInt),
    #[error("norm {norm} exceeds the factoring bound {bound}")]
    FactorBound { norm: u128, bound: u128 },
    #[error("{0} is not a valid quartic character generator")]
    InvalidGenerator(GaussInt),
    #[error("conductor {0} is even")]
    EvenConductor(u64),
    #[error("argument out of range: {0}")]
    Domain(String),
    #[error("argument {0} is within 1e-8 of a pole of the gamma function")]
    GammaPole(String),
    #[error("numerical target not reached: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
